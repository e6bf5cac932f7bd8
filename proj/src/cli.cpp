#include "affchab/cli.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "affchab/chabauty.hpp"
#include "affchab/dintersect.hpp"
#include "affchab/error.hpp"
#include "affchab/selmer.hpp"

namespace affchab {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

long get_long(const json& j, const char* key, long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw Error(ErrorKind::ParseError, std::string(key) + " must be an integer");
    return j[key].get<long>();
}

mpz_class to_mpz(const json& v) {
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    if (v.is_string()) {
        mpz_class z;
        if (z.set_str(v.get<std::string>(), 10) != 0) throw Error(ErrorKind::ParseError, "bad integer " + v.dump());
        return z;
    }
    throw Error(ErrorKind::ParseError, "coefficient must be an integer or decimal string");
}

void apply_invariants(const json& j, NumberFieldInvariants& inv, bool& has_rank) {
    inv.degree = get_long(j, "degree", inv.degree);
    inv.unit_rank = get_long(j, "unit_rank", inv.unit_rank);
    inv.n = get_long(j, "n", inv.n);
    inv.num_cusp_points = get_long(j, "num_cusp_points", inv.num_cusp_points);
    inv.n1 = get_long(j, "n1", inv.n1);
    inv.n2 = get_long(j, "n2", inv.n2);
    inv.genus = get_long(j, "genus", inv.genus);
    if (j.contains("rank")) {
        inv.rank = get_long(j, "rank", 0);
        has_rank = true;
    }
}

}  // namespace

CurveSpec parse_curve_file(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    CurveSpec spec;
    std::string model = j.value("model", std::string("hyperelliptic"));
    if (model == "hyperelliptic") {
        if (!j.contains("f") || !j["f"].is_array()) throw Error(ErrorKind::ParseError, "f must be a coefficient list");
        IntPoly f;
        for (const auto& c : j["f"]) f.push_back(to_mpz(c));
        spec.curve = HyperellipticCurve::from_coefficients(f);
        if (j.contains("field")) apply_invariants(j["field"], spec.inv, spec.has_rank);
        spec.inv.genus = spec.curve->genus;
        if (!j.contains("invariants")) {
            if (spec.inv.degree != 1) {
                throw Error(ErrorKind::ParseError, "cusp invariants over a number field must be given explicitly");
            }
            CuspInvariants ci = cusp_invariants(*spec.curve);
            spec.inv.n = ci.n;
            spec.inv.num_cusp_points = ci.num_points;
            spec.inv.n1 = ci.n1;
            spec.inv.n2 = ci.n2;
        }
    } else if (model == "external") {
        if (!j.contains("invariants")) throw Error(ErrorKind::ParseError, "external model needs invariants");
        for (const char* k : {"genus", "n", "num_cusp_points", "n1", "n2"}) {
            if (!j["invariants"].contains(k)) throw Error(ErrorKind::ParseError, std::string("missing invariant ") + k);
        }
    } else {
        throw Error(ErrorKind::ParseError, "unknown model " + model);
    }
    if (j.contains("invariants")) apply_invariants(j["invariants"], spec.inv, spec.has_rank);
    if (j.contains("mordell_weil_rank")) {
        spec.inv.rank = get_long(j, "mordell_weil_rank", 0);
        spec.has_rank = true;
    }
    try {
        spec.inv.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.detail());
    }
    return spec;
}

namespace {

struct Config {
    std::string curve_path;
    std::vector<std::string> fibre_paths;
    std::vector<long> S;
    long p = 0;
    long prec = 0;
    bool prune = false;
    bool improved = false;
    bool json_out = false;
    std::optional<long> rank;
    std::string alpha_path;
    std::string periods_path;
    long height = 100;
};

struct Loaded {
    CurveSpec spec;
    std::vector<FibreData> fibres;
    std::set<long> S;
};

Loaded load(const Config& c, bool need_curve) {
    Loaded L;
    if (c.curve_path.empty()) {
        if (need_curve) throw Error(ErrorKind::ParseError, "--curve is required");
    } else {
        L.spec = parse_curve_file(read_file(c.curve_path));
    }
    if (c.rank) {
        L.spec.inv.rank = *c.rank;
        L.spec.has_rank = true;
    }
    for (const auto& path : c.fibre_paths) L.fibres.push_back(parse_fibre_file(read_file(path)));
    L.S.insert(c.S.begin(), c.S.end());
    return L;
}

bool has_fibre(const std::vector<FibreData>& fibres, long q) {
    for (const auto& f : fibres) {
        if (f.prime == q) return true;
    }
    return false;
}

/// Synthesises good-reduction fibres for a hyperelliptic model at the given primes.
void fill_good_fibres(Loaded& L, const std::vector<long>& primes) {
    if (!L.spec.curve) return;
    for (long q : primes) {
        if (q > 0 && !has_fibre(L.fibres, q)) L.fibres.push_back(good_reduction_fibre(*L.spec.curve, q));
    }
}

void require_rank(const Loaded& L) {
    if (!L.spec.has_rank) throw Error(ErrorKind::ParseError, "Mordell-Weil rank unknown; pass --rank");
}

const HyperellipticCurve& require_curve(const Loaded& L) {
    if (!L.spec.curve) throw Error(ErrorKind::ParseError, "command needs a hyperelliptic model");
    return *L.spec.curve;
}

json inequality_json(const Inequality& q) {
    return {{"lhs", q.lhs}, {"rhs", q.rhs}, {"strict", q.strict}, {"holds", q.holds()}};
}

std::string verdict_word(bool b) { return b ? "PASS" : "FAIL"; }

json invariants_json(const NumberFieldInvariants& inv) {
    return {{"degree", inv.degree}, {"unit_rank", inv.unit_rank}, {"n", inv.n},
            {"num_cusp_points", inv.num_cusp_points}, {"n1", inv.n1}, {"n2", inv.n2},
            {"rank", inv.rank}, {"genus", inv.genus}};
}

std::string invariants_text(const NumberFieldInvariants& inv) {
    std::ostringstream s;
    s << "d=" << inv.degree << " u=" << inv.unit_rank << " n=" << inv.n << " #|D|=" << inv.num_cusp_points
      << " n1=" << inv.n1 << " n2=" << inv.n2 << " r=" << inv.rank << " g=" << inv.genus;
    return s.str();
}

json envelope(const std::string& command) { return {{"schema_version", 1}, {"command", command}}; }

int cmd_check_conditions(const Config& c, std::ostream& out) {
    Loaded L = load(c, true);
    require_rank(L);
    fill_good_fibres(L, c.S);
    const auto& inv = L.spec.inv;
    auto types = enumerate_reduction_types(L.fibres, L.S, c.prune);
    json j = envelope("check-conditions");
    j["invariants"] = invariants_json(inv);
    j["ker_sigma_rank"] = ker_sigma_rank(inv);
    std::ostringstream t;
    t << "invariants: " << invariants_text(inv) << "\n";
    t << "ker sigma rank: " << ker_sigma_rank(inv) << "\n";
    bool all = true;
    if (inv.degree == 1) {
        Inequality u = condition_1_1(inv, static_cast<long>(L.S.size()));
        j["condition_1_1"] = inequality_json(u);
        t << "condition (1.1): " << u.to_string() << " " << verdict_word(u.holds()) << "\n";
    }
    json jt = json::array();
    for (const auto& ty : types) {
        long cs = ty.cuspidal_count();
        json e = {{"type", ty.to_string()}, {"cuspidal", ty.cuspidal_set()}};
        t << "type " << ty.to_string() << ": #C = " << cs;
        try {
            long sr = selmer_rank(inv, cs);
            e["selmer_rank"] = sr;
            t << ", selmer rank " << sr << "\n";
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::SingleRationalCusp) throw;
            e["selmer_rank"] = nullptr;
            t << ", single rational cusp\n";
        }
        Inequality q51 = chabauty_inequality(inv, cs);
        Inequality q52 = ros_inequality(inv, cs);
        e["condition_5_1"] = inequality_json(q51);
        e["condition_5_2"] = inequality_json(q52);
        t << "condition (5.1): " << q51.to_string() << " " << verdict_word(q51.holds()) << "\n";
        if (inv.degree == 1) {
            Inequality q12 = condition_1_2(inv, cs);
            e["condition_1_2"] = inequality_json(q12);
            t << "condition (1.2): " << q12.to_string() << " " << verdict_word(q12.holds()) << "\n";
        }
        t << "condition (5.2): " << q52.to_string() << " " << verdict_word(q52.holds()) << "\n";
        all = all && q51.holds();
        jt.push_back(e);
    }
    j["types"] = jt;
    j["all_pass"] = all;
    if (c.json_out) {
        out << j.dump(2) << "\n";
    } else {
        out << t.str();
    }
    return all ? kExitOk : kExitCondition;
}

int cmd_bound(const Config& c, std::ostream& out) {
    Loaded L = load(c, true);
    require_rank(L);
    if (c.p <= 0) throw Error(ErrorKind::ParseError, "-p is required");
    json j = envelope("bound");
    j["p"] = c.p;
    std::ostringstream t;
    long value = 0;
    std::string method;
    const auto& inv = L.spec.inv;
    if (L.spec.curve && L.fibres.empty() && L.S.empty() && !c.prune && !c.improved) {
        const auto& curve = *L.spec.curve;
        value = bound_thm61(curve, c.p, inv.rank);
        method = "hyperelliptic";
        long count = count_affine_points(curve, c.p);
        t << "#Y(F_" << c.p << ") = " << count << ", 2g = " << 2 * curve.genus << "\n";
        j["point_count"] = count;
    } else {
        std::vector<long> need(c.S.begin(), c.S.end());
        need.push_back(c.p);
        fill_good_fibres(L, need);
        BoundInputs in{L.fibres, c.p, inv, L.S};
        for (const auto& f : L.fibres) {
            if (f.prime == c.p) {
                long sm = smooth_point_count(f);
                t << "#Y_p^sm(F_" << c.p << ") = " << sm << ", 2g - 2 + n = " << 2 * inv.genus - 2 + inv.n << "\n";
                j["point_count"] = sm;
            }
        }
        if (c.improved) {
            value = bound_improved(in);
            method = "improved";
            auto T = t_set(L.fibres, c.p);
            j["T"] = T;
            t << "T = {";
            for (std::size_t i = 0; i < T.size(); ++i) t << (i ? ", " : "") << T[i];
            t << "}\n";
        } else {
            value = bound_general(in, c.prune);
            method = c.prune ? "general-pruned" : "general";
            long ntypes = static_cast<long>(enumerate_reduction_types(
                [&] {
                    std::vector<FibreData> rest;
                    for (const auto& f : L.fibres) {
                        if (f.prime != c.p) rest.push_back(f);
                    }
                    return rest;
                }(),
                L.S, c.prune).size());
            j["reduction_types"] = ntypes;
            t << "prime-to-p reduction types: " << ntypes << "\n";
        }
    }
    j["bound"] = value;
    j["method"] = method;
    if (c.json_out) {
        out << j.dump(2) << "\n";
    } else {
        out << t.str() << "method: " << method << "\n" << "bound: " << value << "\n";
    }
    return kExitOk;
}

int cmd_count_points(const Config& c, std::ostream& out) {
    Loaded L = load(c, true);
    const auto& curve = require_curve(L);
    if (c.p <= 0) throw Error(ErrorKind::ParseError, "-p is required");
    auto pts = affine_points_mod(curve, c.p);
    json j = envelope("count-points");
    j["p"] = c.p;
    j["count"] = pts.size();
    json jp = json::array();
    for (auto [x, y] : pts) jp.push_back({x, y});
    j["points"] = jp;
    if (c.json_out) {
        out << j.dump(2) << "\n";
    } else {
        out << "#Y(F_" << c.p << ") = " << pts.size() << "\n";
        for (auto [x, y] : pts) out << "(" << x << ", " << y << ")\n";
    }
    return kExitOk;
}

int cmd_sigma(const Config& c, std::ostream& out) {
    Loaded L = load(c, false);
    if (L.fibres.empty()) throw Error(ErrorKind::ParseError, "at least one --fibre is required");
    json j = envelope("sigma");
    std::ostringstream t;
    json jf = json::array();
    for (const auto& f : L.fibres) {
        auto gi = generalised_inverse(RationalMatrix::from_int(f.intersection_matrix));
        bool tr = check_d_transversal(f);
        jf.push_back({{"label", f.label},
                      {"prime", f.prime},
                      {"components", f.components.size()},
                      {"denominator", gi.denominator.get_str()},
                      {"d_transversal", tr},
                      {"smooth_cusp_points", f.smooth_cusp_points}});
        t << "fibre " << f.label << ": " << f.components.size() << " components, L+ denominator "
          << gi.denominator.get_str() << ", D-transversal " << (tr ? "yes" : "no") << "\n";
    }
    j["fibres"] = jf;
    auto types = enumerate_reduction_types(L.fibres, L.S, c.prune);
    std::map<std::string, BasePointData> base;
    json jt = json::array();
    for (const auto& ty : types) {
        json e = {{"type", ty.to_string()}};
        json cs = json::object();
        t << "type " << ty.to_string() << "\n";
        for (const auto& f : L.fibres) {
            if (!f.base_point) throw Error(ErrorKind::MissingFibre, "fibre " + f.label + " has no base_point");
            auto s = local_constraint_set(f, *f.base_point, ty.choice.at(f.label).id);
            cs[f.label] = s.to_string(f);
            t << "  " << f.label << ": " << s.to_string(f) << "\n";
        }
        e["constraints"] = cs;
        jt.push_back(e);
    }
    auto classes = constraint_classes(L.fibres, base, types);
    j["types"] = jt;
    j["classes"] = classes;
    t << "constraint classes: " << classes.size() << "\n";
    if (c.json_out) {
        out << j.dump(2) << "\n";
    } else {
        out << t.str();
    }
    return kExitOk;
}

std::string disc_line(const DiscVerdict& d) {
    std::ostringstream s;
    s << "disc (" << d.x << "," << d.y << "): " << d.verdict.to_string();
    if (d.verdict.kind != StrassmannVerdict::Kind::Inconclusive && d.verdict.zero_at_origin) s << " at t=0";
    if (!d.exact_route && d.verdict.kind == StrassmannVerdict::Kind::AtMost) s << " [order " << d.order << "]";
    if (d.verdict.kind == StrassmannVerdict::Kind::Inconclusive) s << " (" << d.verdict.reason << ")";
    return s.str();
}

std::string kind_name(StrassmannVerdict::Kind k) {
    switch (k) {
        case StrassmannVerdict::Kind::Exact: return "Exact";
        case StrassmannVerdict::Kind::AtMost: return "AtMost";
        case StrassmannVerdict::Kind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

int cmd_strassmann(const Config& c, std::ostream& out) {
    Loaded L = load(c, true);
    const auto& curve = require_curve(L);
    json j = envelope("strassmann");
    std::ostringstream t;
    ChabautyFunction fn;
    std::map<DiscKey, DiscConstant> constants;
    long precision = 0;
    if (!c.alpha_path.empty()) {
        AlphaFixture fx = parse_alpha_fixture(read_file(c.alpha_path));
        if (c.prec > 0) fx = truncate_fixture(fx, c.prec);
        fn = {fx.omega, fx.constant, fx.prime};
        constants = fx.discs;
        precision = fx.precision;
    } else if (!c.periods_path.empty()) {
        PeriodMatrix pm = parse_period_fixture(read_file(c.periods_path));
        if (c.prec > 0) {
            pm.precision = std::min(pm.precision, c.prec);
            for (auto& row : pm.rows) {
                for (auto& v : row) v = v.with_abs_prec(pm.precision);
            }
        }
        Annihilator an = annihilating_differential(pm);
        fn = {an.omega, Padic::zero(pm.prime), pm.prime};
        precision = pm.precision;
        j["certified_precision"] = an.certified_precision >= kInfinity ? -1 : an.certified_precision;
        j["rank_deficient"] = an.rank_deficient;
        t << "certified precision: O(" << pm.prime << "^"
          << (an.certified_precision >= kInfinity ? pm.precision : an.certified_precision) << ")"
          << (an.rank_deficient ? ", rank deficient" : "") << "\n";
    } else {
        throw Error(ErrorKind::ParseError, "strassmann needs --alpha or --periods");
    }
    if (c.p > 0 && c.p != fn.prime) throw Error(ErrorKind::PrimeMismatch, "-p differs from the fixture prime");
    json ja = json::array();
    for (std::size_t i = 0; i < fn.omega.alpha.size(); ++i) {
        ja.push_back(fn.omega.alpha[i].to_digit_string());
        t << "alpha" << i << " = " << fn.omega.alpha[i].to_string() << "\n";
    }
    j["alpha"] = ja;
    SweepReport rep = strassmann_sweep(curve, fn, fn.prime, precision, constants);
    json jd = json::array();
    for (const auto& d : rep.discs) {
        jd.push_back({{"x", d.x},
                      {"y", d.y},
                      {"verdict", kind_name(d.verdict.kind)},
                      {"count", d.verdict.count},
                      {"zero_at_origin", d.verdict.zero_at_origin},
                      {"exact_route", d.exact_route},
                      {"order", d.order},
                      {"reason", d.verdict.reason}});
        t << disc_line(d) << "\n";
    }
    j["p"] = fn.prime;
    j["discs"] = jd;
    j["total"] = rep.total;
    j["n_C"] = rep.n_C;
    j["point_count"] = rep.point_count;
    j["bound"] = rep.bound;
    j["known_points"] = constants.size();
    j["any_inconclusive"] = rep.any_inconclusive;
    if (rep.any_inconclusive) {
        t << "inconclusive discs present\n";
    } else {
        t << "total: " << rep.total << " zeros in " << rep.discs.size() << " discs, bound " << rep.bound
          << ", known points " << constants.size() << "\n";
    }
    if (c.json_out) {
        out << j.dump(2) << "\n";
    } else {
        out << t.str();
    }
    return rep.any_inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_search(const Config& c, std::ostream& out) {
    Loaded L = load(c, true);
    const auto& curve = require_curve(L);
    auto pts = brute_force_integral_points(curve, c.height, c.S);
    json j = envelope("search");
    j["height"] = c.height;
    json jp = json::array();
    for (const auto& P : pts) jp.push_back({P.x.get_str(), P.y.get_str()});
    j["points"] = jp;
    j["count"] = pts.size();
    if (c.json_out) {
        out << j.dump(2) << "\n";
    } else {
        out << pts.size() << " points\n";
        for (const auto& P : pts) out << "(" << P.x.get_str() << ", " << P.y.get_str() << ")\n";
    }
    return kExitOk;
}

int exit_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::HypothesesFail:
        case ErrorKind::ConditionFails:
        case ErrorKind::SingleRationalCusp: return kExitCondition;
        default: return kExitInput;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Affine Chabauty tools for S-integral points"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* s) {
        s->add_option("--curve", c.curve_path, "curve file (JSON)");
        s->add_option("--fibre", c.fibre_paths, "fibre file (JSON), repeatable");
        s->add_option("-S", c.S, "primes in S")->delimiter(',');
        s->add_option("-p", c.p, "working prime");
        s->add_option("--prec", c.prec, "p-adic precision");
        s->add_option("--rank", c.rank, "Mordell-Weil rank override");
        s->add_flag("--prune", c.prune, "prune redundant reduction types");
        s->add_flag("--improved", c.improved, "use the improved bound");
        s->add_flag("--json", c.json_out, "JSON output");
    };
    auto* check = app.add_subcommand("check-conditions", "Selmer ranks and Chabauty conditions");
    auto* bound = app.add_subcommand("bound", "explicit bound on integral points");
    auto* count = app.add_subcommand("count-points", "affine points over F_p");
    auto* sigma = app.add_subcommand("sigma", "local constraint sets per reduction type");
    auto* strass = app.add_subcommand("strassmann", "per-disc zero counts of a Chabauty function");
    auto* search = app.add_subcommand("search", "brute-force S-integral points");
    for (auto* s : {check, bound, count, sigma, strass, search}) common(s);
    strass->add_option("--alpha", c.alpha_path, "alpha fixture (JSON)");
    strass->add_option("--periods", c.periods_path, "period fixture (JSON)");
    search->add_option("--height", c.height, "height bound H");

    std::vector<std::string> argv_store;
    argv_store.push_back("affchab");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }
    try {
        if (check->parsed()) return cmd_check_conditions(c, out);
        if (bound->parsed()) return cmd_bound(c, out);
        if (count->parsed()) return cmd_count_points(c, out);
        if (sigma->parsed()) return cmd_sigma(c, out);
        if (strass->parsed()) return cmd_strassmann(c, out);
        if (search->parsed()) return cmd_search(c, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace affchab
