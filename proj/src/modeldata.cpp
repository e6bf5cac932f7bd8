#include "affchab/modeldata.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "affchab/error.hpp"

namespace affchab {

using nlohmann::json;

namespace {

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorKind::InvariantViolation, what); }

long matrix_rank(const std::vector<std::vector<long>>& m) {
    std::vector<std::vector<mpq_class>> a;
    for (const auto& row : m) {
        std::vector<mpq_class> r;
        for (long x : row) r.emplace_back(x);
        a.push_back(r);
    }
    long rank = 0;
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
        auto& pr = a[static_cast<std::size_t>(rank)];
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
            mpq_class f = a[r][c] / pr[c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * pr[k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

long FibreData::component_index(const std::string& id) const {
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].id == id) return static_cast<long>(i);
    }
    return -1;
}

long FibreData::point_index(const std::string& id) const {
    for (std::size_t i = 0; i < dtilde_points.size(); ++i) {
        if (dtilde_points[i].id == id) return static_cast<long>(i);
    }
    return -1;
}

long FibreData::cycle_entry(const std::string& component, const std::string& point) const {
    auto it = component_cusp_cycles.find(component);
    if (it == component_cusp_cycles.end()) return 0;
    auto jt = it->second.find(point);
    return jt == it->second.end() ? 0 : jt->second;
}

long FibreData::num_smooth_components() const {
    return static_cast<long>(std::count_if(components.begin(), components.end(),
                                           [](const Component& c) { return c.has_smooth_point; }));
}

std::vector<std::string> FibreData::components_meeting_d() const {
    std::vector<std::string> out;
    for (const auto& c : components) {
        for (const auto& x : dtilde_points) {
            if (cycle_entry(c.id, x.id) != 0) {
                out.push_back(c.id);
                break;
            }
        }
    }
    return out;
}

std::string FibreData::component_of_point(const std::string& point) const {
    std::string found;
    for (const auto& c : components) {
        if (cycle_entry(c.id, point) == 0) continue;
        if (!found.empty()) throw Error(ErrorKind::InvalidType, "cusp point " + point + " lies on several components");
        found = c.id;
    }
    if (found.empty()) throw Error(ErrorKind::UnknownPoint, "cusp point " + point + " meets no component");
    return found;
}

void NumberFieldInvariants::validate() const {
    if (degree < 1) violation("[K:Q] must be positive");
    if (n1 + 2 * n2 != degree * n) {
        violation("n1 + 2 n2 = " + std::to_string(n1 + 2 * n2) + " differs from [K:Q] n = " +
                  std::to_string(degree * n));
    }
    if (num_cusp_points < 1 || num_cusp_points > n) violation("#|D| must lie in [1, n]");
    if (genus < 0 || rank < 0 || unit_rank < 0) violation("genus, rank and unit rank must be nonnegative");
}

bool is_d_transversal_at(const FibreData& fibre, const std::string& point) {
    long idx = fibre.point_index(point);
    if (idx < 0) throw Error(ErrorKind::UnknownPoint, point);
    const std::string& fp = fibre.dtilde_points[static_cast<std::size_t>(idx)].fibre_point;
    std::set<std::string> comps;
    long total = 0;
    for (const auto& y : fibre.dtilde_points) {
        if (y.fibre_point != fp) continue;
        for (const auto& c : fibre.components) {
            long i = fibre.cycle_entry(c.id, y.id);
            if (i == 0) continue;
            comps.insert(c.id);
            total += c.multiplicity * i;
        }
    }
    if (comps.size() != 1) return false;
    const auto& c = fibre.components[static_cast<std::size_t>(fibre.component_index(*comps.begin()))];
    return c.multiplicity == 1 && total == 1;
}

namespace {

bool on_smooth_locus(const FibreData& fibre, const DtildePoint& x) {
    std::set<std::string> comps;
    for (const auto& y : fibre.dtilde_points) {
        if (y.fibre_point != x.fibre_point) continue;
        for (const auto& c : fibre.components) {
            if (fibre.cycle_entry(c.id, y.id) != 0) comps.insert(c.id);
        }
    }
    if (comps.size() != 1) return false;
    return fibre.components[static_cast<std::size_t>(fibre.component_index(*comps.begin()))].multiplicity == 1;
}

}  // namespace

bool check_d_transversal(const FibreData& fibre) {
    for (const auto& x : fibre.dtilde_points) {
        if (x.residue_degree != 1 || !on_smooth_locus(fibre, x)) continue;
        if (!is_d_transversal_at(fibre, x.id)) return false;
    }
    return true;
}

std::vector<std::string> transversal_points(const FibreData& fibre) {
    std::vector<std::string> out;
    for (const auto& x : fibre.dtilde_points) {
        if (x.residue_degree == 1 && is_d_transversal_at(fibre, x.id)) out.push_back(x.id);
    }
    return out;
}

void validate_fibre(const FibreData& f) {
    if (f.prime < 2) violation("prime must be at least 2");
    if (f.residue_field_size < 2) violation("residue_field_size must be at least 2");
    std::size_t n = f.components.size();
    if (n == 0) violation("fibre has no components");
    std::set<std::string> ids;
    for (const auto& c : f.components) {
        if (!ids.insert(c.id).second) violation("duplicate component id " + c.id);
        if (c.multiplicity < 1) violation("component " + c.id + " has multiplicity < 1");
        if (c.smooth_noncusp_point_count < 0) violation("component " + c.id + " has a negative point count");
        if (c.has_smooth_point && c.multiplicity != 1) {
            violation("component " + c.id + " has a smooth point but multiplicity " + std::to_string(c.multiplicity));
        }
    }
    const auto& M = f.intersection_matrix;
    if (M.size() != n) violation("intersection matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    for (const auto& row : M) {
        if (row.size() != n) violation("intersection matrix is not square");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (M[i][j] != M[j][i]) violation("intersection matrix is not symmetric");
            if (i != j && M[i][j] < 0) violation("negative intersection number between distinct components");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        long s = 0;
        for (std::size_t j = 0; j < n; ++j) s += M[i][j] * f.components[j].multiplicity;
        if (s != 0) violation("M*m != 0: row " + f.components[i].id + " gives " + std::to_string(s));
    }
    if (matrix_rank(M) != static_cast<long>(n) - 1) violation("corank of the intersection matrix is not 1");

    std::set<std::string> pts;
    for (const auto& x : f.dtilde_points) {
        if (!pts.insert(x.id).second) violation("duplicate dtilde point id " + x.id);
        if (x.residue_degree < 1) violation("point " + x.id + " has residue degree < 1");
        if (x.ramification_index < 1) violation("point " + x.id + " has ramification index < 1");
        if (x.fibre_point.empty()) violation("point " + x.id + " has an empty fibre point");
    }
    for (const auto& [comp, cyc] : f.component_cusp_cycles) {
        if (!ids.count(comp)) violation("cusp cycle for unknown component " + comp);
        for (const auto& [pt, v] : cyc) {
            if (!pts.count(pt)) violation("cusp cycle of " + comp + " names unknown point " + pt);
            if (v < 0) violation("negative intersection in cusp cycle of " + comp);
        }
    }
    for (const auto& x : f.dtilde_points) {
        long s = 0;
        for (const auto& c : f.components) s += c.multiplicity * f.cycle_entry(c.id, x.id);
        if (s != x.ramification_index) {
            violation("sum of m_V (V.D~) at " + x.id + " is " + std::to_string(s) + ", expected e_x = " +
                      std::to_string(x.ramification_index));
        }
    }
    std::set<std::string> seen;
    for (const auto& s : f.smooth_cusp_points) {
        long idx = f.point_index(s);
        if (idx < 0) violation("smooth cusp point " + s + " is not a dtilde point");
        if (!seen.insert(s).second) violation("smooth cusp point " + s + " listed twice");
        if (f.dtilde_points[static_cast<std::size_t>(idx)].residue_degree != 1) {
            violation("smooth cusp point " + s + " is not rational over the residue field");
        }
        if (!is_d_transversal_at(f, s)) violation("smooth cusp point " + s + " is not D-transversal");
    }
    if (f.base_point) {
        if (!ids.count(f.base_point->component)) violation("base point component " + f.base_point->component + " unknown");
        for (const auto& [pt, v] : f.base_point->cusp_cycle) {
            (void)v;
            if (!pts.count(pt)) violation("base point cusp cycle names unknown point " + pt);
        }
    }
}

namespace {

template <typename T>
T get_field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("bad value for '") + key + "': " + e.what());
    }
}

CuspCycleInt parse_cycle(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "cusp cycle must be an object");
    CuspCycleInt out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number_integer()) throw Error(ErrorKind::ParseError, "cusp cycle entries must be integers");
        out[it.key()] = it.value().get<long>();
    }
    return out;
}

}  // namespace

FibreData parse_fibre_file(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "fibre file must be a JSON object");
    FibreData f;
    f.prime = get_field<long>(j, "prime");
    f.residue_field_size = get_field<long>(j, "residue_field_size");
    f.label = j.contains("label") ? get_field<std::string>(j, "label") : std::to_string(f.prime);
    const json& comps = j.contains("components") ? j.at("components") : json();
    if (!comps.is_array()) throw Error(ErrorKind::ParseError, "'components' must be an array");
    for (const auto& c : comps) {
        Component comp;
        comp.id = get_field<std::string>(c, "id");
        comp.multiplicity = get_field<long>(c, "multiplicity");
        comp.smooth_noncusp_point_count = get_field<long>(c, "smooth_noncusp_point_count");
        comp.has_smooth_point = get_field<bool>(c, "has_smooth_point");
        f.components.push_back(comp);
    }
    f.intersection_matrix = get_field<std::vector<std::vector<long>>>(j, "intersection_matrix");
    const json& pts = j.contains("dtilde_points") ? j.at("dtilde_points") : json();
    if (!pts.is_array()) throw Error(ErrorKind::ParseError, "'dtilde_points' must be an array");
    for (const auto& x : pts) {
        DtildePoint d;
        d.id = get_field<std::string>(x, "id");
        d.cusp = get_field<std::string>(x, "cusp");
        d.residue_degree = get_field<long>(x, "residue_degree");
        d.ramification_index = get_field<long>(x, "ramification_index");
        d.fibre_point = x.contains("fibre_point") ? get_field<std::string>(x, "fibre_point") : d.id;
        f.dtilde_points.push_back(d);
    }
    const json& cyc = j.contains("component_cusp_cycles") ? j.at("component_cusp_cycles") : json();
    if (!cyc.is_object()) throw Error(ErrorKind::ParseError, "'component_cusp_cycles' must be an object");
    for (auto it = cyc.begin(); it != cyc.end(); ++it) f.component_cusp_cycles[it.key()] = parse_cycle(it.value());
    f.smooth_cusp_points = get_field<std::vector<std::string>>(j, "smooth_cusp_points");
    if (j.contains("base_point")) {
        const json& b = j.at("base_point");
        BasePointData bp;
        bp.component = get_field<std::string>(b, "component");
        bp.cusp_cycle = b.contains("cusp_cycle") ? parse_cycle(b.at("cusp_cycle")) : CuspCycleInt{};
        f.base_point = bp;
    }
    validate_fibre(f);
    return f;
}

std::string serialize_fibre(const FibreData& f) {
    json j;
    j["prime"] = f.prime;
    j["residue_field_size"] = f.residue_field_size;
    if (f.label != std::to_string(f.prime)) j["label"] = f.label;
    j["components"] = json::array();
    for (const auto& c : f.components) {
        j["components"].push_back({{"id", c.id},
                                   {"multiplicity", c.multiplicity},
                                   {"smooth_noncusp_point_count", c.smooth_noncusp_point_count},
                                   {"has_smooth_point", c.has_smooth_point}});
    }
    j["intersection_matrix"] = f.intersection_matrix;
    j["dtilde_points"] = json::array();
    for (const auto& x : f.dtilde_points) {
        json e = {{"id", x.id},
                  {"cusp", x.cusp},
                  {"residue_degree", x.residue_degree},
                  {"ramification_index", x.ramification_index}};
        if (x.fibre_point != x.id) e["fibre_point"] = x.fibre_point;
        j["dtilde_points"].push_back(e);
    }
    j["component_cusp_cycles"] = json::object();
    for (const auto& [comp, cyc] : f.component_cusp_cycles) j["component_cusp_cycles"][comp] = cyc;
    j["smooth_cusp_points"] = f.smooth_cusp_points;
    if (f.base_point) {
        j["base_point"] = {{"component", f.base_point->component}, {"cusp_cycle", f.base_point->cusp_cycle}};
        if (f.base_point->cusp_cycle.empty()) j["base_point"]["cusp_cycle"] = json::object();
    }
    return j.dump(2) + "\n";
}

FibreData good_reduction_fibre(const HyperellipticCurve& curve, long q) {
    if (q == 2) throw Error(ErrorKind::BadReduction, "y^2 = f(x) has bad reduction at 2");
    if (mpz_probab_prime_p(mpz_class(q).get_mpz_t(), 30) == 0) {
        throw Error(ErrorKind::HypothesisViolated, std::to_string(q) + " is not prime");
    }
    const mpz_class& lc = curve.leading_coefficient();
    if (mod(lc, q) == 0) throw Error(ErrorKind::BadReduction, "leading coefficient vanishes mod " + std::to_string(q));
    if (mod(discriminant(curve.f), q) == 0) {
        throw Error(ErrorKind::BadReduction, "f is not separable mod " + std::to_string(q));
    }
    FibreData fib;
    fib.prime = q;
    fib.label = std::to_string(q);
    fib.residue_field_size = q;
    fib.components.push_back({"C0", 1, count_affine_points(curve, q), true});
    fib.intersection_matrix = {{0}};
    auto add_point = [&](const std::string& id, const std::string& cusp, long deg) {
        fib.dtilde_points.push_back({id, cusp, deg, 1, id});
        fib.component_cusp_cycles["C0"][id] = 1;
        if (deg == 1) fib.smooth_cusp_points.push_back(id);
    };
    bool square = lc > 0 && mpz_perfect_square_p(lc.get_mpz_t());
    if (square) {
        add_point("inf+", "inf+", 1);
        add_point("inf-", "inf-", 1);
    } else if (is_qr(mod(lc, q), q)) {
        add_point("inf.1", "inf", 1);
        add_point("inf.2", "inf", 1);
    } else {
        add_point("inf", "inf", 2);
    }
    fib.base_point = BasePointData{"C0", {}};
    validate_fibre(fib);
    return fib;
}

namespace {

// y0^2 + Q y0 + P = 0 over F_2 for some y0 of degree <= bound
bool has_root_over_f2(const ModPoly& Q, const ModPoly& P, long bound) {
    long count = 1L << (bound + 1);
    for (long mask = 0; mask < count; ++mask) {
        ModPoly y;
        for (long i = 0; i <= bound; ++i) y.push_back((mask >> i) & 1);
        trim(y);
        ModPoly lhs = mul(y, y, 2);
        ModPoly qy = mul(Q, y, 2);
        std::size_t n = std::max({lhs.size(), qy.size(), P.size()});
        lhs.resize(n, 0);
        for (std::size_t i = 0; i < qy.size(); ++i) lhs[i] ^= qy[i];
        for (std::size_t i = 0; i < P.size(); ++i) lhs[i] ^= P[i];
        trim(lhs);
        if (lhs.empty()) return true;
    }
    return false;
}

}  // namespace

LiuReport liu_star_checks(const IntPoly& f0) {
    IntPoly f = f0;
    trim(f);
    long d = degree(f);
    if (d < 4 || d % 2 != 0) throw Error(ErrorKind::HypothesesFail, "deg f must be even and at least 4");
    if (f.back() != 1) throw Error(ErrorKind::HypothesesFail, "f must be monic");
    mpz_class disc = discriminant(f);
    if (disc == 0) throw Error(ErrorKind::HypothesesFail, "f must be squarefree");
    long g = d / 2 - 1;
    LiuReport r;
    for (const auto& [prime, e] : factor_integer(disc)) {
        (void)e;
        if (prime == 2) continue;
        if (!prime.fits_slong_p()) throw Error(ErrorKind::HypothesesFail, "odd prime factor too large: " + prime.get_str());
        long l = prime.get_si();
        r.odd_primes.push_back(l);
        if (is_square_mod(reduce(f, l), l)) r.square_mod.push_back(l);
    }
    if (!r.square_mod.empty()) {
        r.failure = "f mod " + std::to_string(r.square_mod.front()) + " is a square";
        return r;
    }
    r.odd_subleading = mod(f[static_cast<std::size_t>(2 * g + 1)], 2) == 1;
    if (r.odd_subleading) {
        r.pass = true;
        return r;
    }
    long k = g + 1;
    for (long mask = 0; mask < (1L << k); ++mask) {
        IntPoly Q(static_cast<std::size_t>(k + 1), 0);
        for (long i = 0; i < k; ++i) Q[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        Q[static_cast<std::size_t>(k)] = 1;
        IntPoly rem = sub(f, mul(Q, Q));
        bool divisible = true;
        for (const auto& c : rem) {
            if (mod(c, 4) != 0) {
                divisible = false;
                break;
            }
        }
        if (!divisible) continue;
        IntPoly P;
        for (const auto& c : rem) P.push_back(c / 4);
        trim(P);
        r.Q = Q;
        r.P = P;
        r.no_root_over_f2 = !has_root_over_f2(reduce(Q, 2), reduce(P, 2), g + 1);
        r.pass = r.no_root_over_f2;
        if (!r.pass) r.failure = "y^2 + Qy - P has a root over F_2[x] of degree <= g + 1";
        return r;
    }
    r.failure = "f_(2g+1) is even and f is not 4P + Q^2 with Q monic of degree g + 1";
    return r;
}

}  // namespace affchab
