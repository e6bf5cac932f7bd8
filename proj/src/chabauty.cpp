#include "affchab/chabauty.hpp"

#include <algorithm>

#include <json.hpp>

#include "affchab/error.hpp"
#include "affchab/selmer.hpp"

namespace affchab {

using nlohmann::json;

namespace {

json parse_json(const std::string& bytes) {
    try {
        return json::parse(bytes);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string(key) + ": " + e.what());
    }
}

long residual_precision(const Padic& r) {
    if (r.is_exact_zero()) return kInfinity;
    return r.is_zero() ? r.abs_prec() : r.valuation();
}

LogDifferential normalise_first(const LogDifferential& w) {
    for (const auto& a : w.alpha) {
        if (!a.is_zero()) {
            LogDifferential out;
            for (const auto& b : w.alpha) out.alpha.push_back(b.is_exact_zero() ? b : b / a);
            return out;
        }
    }
    throw Error(ErrorKind::ZeroDifferential, "kernel vector vanishes to precision");
}

}  // namespace

PeriodMatrix parse_period_fixture(const std::string& bytes) {
    json j = parse_json(bytes);
    PeriodMatrix m;
    m.prime = field<long>(j, "prime");
    m.precision = field<long>(j, "precision");
    long basis = field<long>(j, "basis_size");
    if (!j.contains("rows") || !j["rows"].is_array()) throw Error(ErrorKind::ParseError, "rows must be a list");
    for (const auto& row : j["rows"]) {
        m.labels.push_back(field<std::string>(row, "point_label"));
        auto vals = field<std::vector<std::string>>(row, "values");
        if (static_cast<long>(vals.size()) != basis) {
            throw Error(ErrorKind::ParseError, "row " + m.labels.back() + " has the wrong length");
        }
        std::vector<Padic> r;
        for (const auto& s : vals) r.push_back(Padic::parse(m.prime, s).with_abs_prec(m.precision));
        m.rows.push_back(std::move(r));
    }
    return m;
}

Annihilator annihilating_differential(const PeriodMatrix& periods) {
    std::size_t r = periods.num_rows();
    std::size_t c = periods.num_cols();
    if (c == 0) throw Error(ErrorKind::HypothesisViolated, "empty period matrix");
    if (r >= c) throw Error(ErrorKind::HypothesisViolated, "need fewer rows than columns");
    long p = periods.prime;
    auto A = periods.rows;
    Annihilator out;
    std::vector<long> pivot_col;
    std::vector<bool> used(c, false);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t bi = r, bj = c;
        long best = kInfinity;
        for (std::size_t i = rank; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                if (used[j] || A[i][j].is_zero()) continue;
                if (A[i][j].valuation() < best) {
                    best = A[i][j].valuation();
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == r) {
            out.rank_deficient = true;
            break;
        }
        std::swap(A[rank], A[bi]);
        used[bj] = true;
        pivot_col.push_back(static_cast<long>(bj));
        for (std::size_t i = 0; i < r; ++i) {
            if (i == rank || A[i][bj].is_exact_zero()) continue;
            Padic f = A[i][bj] / A[rank][bj];
            for (std::size_t j = 0; j < c; ++j) A[i][j] = A[i][j] - f * A[rank][j];
            A[i][bj] = Padic::zero(p);
        }
        ++rank;
    }
    Padic one = Padic::from_int(p, 1, periods.precision);
    for (std::size_t f = 0; f < c; ++f) {
        if (used[f]) continue;
        LogDifferential w;
        w.alpha.assign(c, Padic::zero(p));
        w.alpha[f] = one;
        for (std::size_t k = 0; k < rank; ++k) {
            auto pc = static_cast<std::size_t>(pivot_col[k]);
            w.alpha[pc] = -(A[k][f] / A[k][pc]);
        }
        out.kernel_basis.push_back(normalise_first(w));
    }
    out.omega = out.kernel_basis.front();
    out.certified_precision = kInfinity;
    for (const auto& row : periods.rows) {
        Padic s = Padic::zero(p);
        for (std::size_t j = 0; j < c; ++j) s = s + row[j] * out.omega.alpha[j];
        out.certified_precision = std::min(out.certified_precision, residual_precision(s));
    }
    return out;
}

LogDifferential cofactor_differential(const PeriodMatrix& periods) {
    if (periods.num_rows() != 2 || periods.num_cols() != 3) {
        throw Error(ErrorKind::HypothesisViolated, "cofactor construction needs a 2 x 3 period matrix");
    }
    const auto& a = periods.rows[0];
    const auto& b = periods.rows[1];
    LogDifferential w;
    w.alpha = {a[1] * b[2] - a[2] * b[1], -(a[0] * b[2] - a[2] * b[0]), a[0] * b[1] - a[1] * b[0]};
    bool zero = std::all_of(w.alpha.begin(), w.alpha.end(), [](const Padic& x) { return x.is_zero(); });
    if (zero) throw Error(ErrorKind::RankDeficientInput, "period rows are dependent at working precision");
    return w;
}

PadicSeries rho_series_on_disc(const HyperellipticCurve& curve, const ChabautyFunction& fn, const ResidueDisc& disc,
                               const Padic& base, long N) {
    bool zero = std::all_of(fn.omega.alpha.begin(), fn.omega.alpha.end(),
                            [](const Padic& a) { return a.is_exact_zero(); });
    if (zero) throw Error(ErrorKind::ZeroDifferential, "omega is zero");
    PadicSeries F = series_antiderivative(disc_expand(curve, disc, fn.omega, N));
    std::vector<Padic> c = F.coefficients();
    Padic k = base - fn.constant;
    c[0] = k;
    return PadicSeries(F.prime(), std::move(c), F.tail());
}

AlphaFixture parse_alpha_fixture(const std::string& bytes) {
    json j = parse_json(bytes);
    AlphaFixture fx;
    fx.prime = field<long>(j, "prime");
    fx.precision = field<long>(j, "precision");
    for (const auto& s : field<std::vector<std::string>>(j, "alpha")) {
        fx.omega.alpha.push_back(Padic::parse(fx.prime, s));
    }
    fx.constant = j.contains("constant") ? Padic::parse(fx.prime, j["constant"].get<std::string>())
                                         : Padic::zero(fx.prime);
    if (j.contains("discs")) {
        for (const auto& d : j["discs"]) {
            DiscConstant dc;
            if (d.contains("centre_x")) dc.centre_x = mpz_class(d["centre_x"].get<std::string>());
            dc.base = d.contains("base") ? Padic::parse(fx.prime, d["base"].get<std::string>()) : Padic::zero(fx.prime);
            fx.discs[{field<long>(d, "x"), field<long>(d, "y")}] = dc;
        }
    }
    return fx;
}

AlphaFixture truncate_fixture(const AlphaFixture& fx, long k) {
    AlphaFixture out = fx;
    out.precision = std::min(fx.precision, k);
    for (auto& a : out.omega.alpha) a = a.with_abs_prec(k);
    for (auto& [key, d] : out.discs) d.base = d.base.with_abs_prec(k);
    out.constant = out.constant.with_abs_prec(k);
    return out;
}

SweepReport strassmann_sweep(const HyperellipticCurve& curve, const ChabautyFunction& fn, long p, long precision,
                             const std::map<DiscKey, DiscConstant>& constants) {
    SweepReport rep;
    auto pts = affine_points_mod(curve, p);
    rep.point_count = static_cast<long>(pts.size());
    std::map<DiscKey, long> order;
    bool orders_known = true;
    try {
        auto ro = reduce_and_order(curve, fn.omega, p);
        for (const auto& o : ro.points) order[{o.x, o.y}] = o.order;
        rep.n_C = ro.n_C;
    } catch (const Error& e) {
        bool exact_zero = std::all_of(fn.omega.alpha.begin(), fn.omega.alpha.end(),
                                      [](const Padic& a) { return a.is_exact_zero(); });
        if (e.kind() == ErrorKind::ZeroDifferential && exact_zero) throw;
        orders_known = false;
    }
    rep.bound = orders_known ? rep.point_count + rep.n_C : -1;
    rep.all_exact = true;
    long N = precision + curve.genus + 2;
    for (auto [x, y] : pts) {
        DiscVerdict dv;
        dv.x = x;
        dv.y = y;
        dv.order = orders_known ? order[{x, y}] : -1;
        auto it = constants.find({x, y});
        if (it != constants.end()) {
            dv.exact_route = true;
            ResidueDisc disc = make_disc(curve, p, x, y, precision, it->second.centre_x);
            try {
                dv.verdict = strassmann_zero_count(rho_series_on_disc(curve, fn, disc, it->second.base, N), Domain::Zp);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::PrecisionExhausted) throw;
                dv.verdict.kind = StrassmannVerdict::Kind::Inconclusive;
                dv.verdict.reason = e.what();
            }
        } else if (dv.order >= 0 && dv.order < p - 2) {
            dv.verdict.kind = StrassmannVerdict::Kind::AtMost;
            dv.verdict.count = newton_bound_mplus1(dv.order, p);
            dv.verdict.reason = "order of the reduced differential";
        } else {
            dv.verdict.kind = StrassmannVerdict::Kind::Inconclusive;
            dv.verdict.reason = orders_known ? "order too large for the disc bound" : "reduction order unknown";
        }
        switch (dv.verdict.kind) {
            case StrassmannVerdict::Kind::Exact: rep.total += dv.verdict.count; break;
            case StrassmannVerdict::Kind::AtMost:
                rep.total += dv.verdict.count;
                rep.all_exact = false;
                break;
            case StrassmannVerdict::Kind::Inconclusive:
                rep.any_inconclusive = true;
                rep.all_exact = false;
                break;
        }
        rep.discs.push_back(dv);
    }
    return rep;
}

long bound_thm61(const HyperellipticCurve& curve, long p, long rank) {
    long g = curve.genus;
    LiuReport liu = liu_star_checks(curve.f);
    if (!liu.pass) throw Error(ErrorKind::HypothesesFail, "Liu criteria: " + liu.failure);
    if (p <= 2 * g + 2) {
        throw Error(ErrorKind::HypothesesFail, "need p > 2g + 2 = " + std::to_string(2 * g + 2));
    }
    mpz_class bad = discriminant(curve.f) * curve.leading_coefficient();
    if (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(p))) {
        throw Error(ErrorKind::HypothesesFail, "f does not have good reduction at p = " + std::to_string(p));
    }
    if (rank != g) {
        throw Error(ErrorKind::HypothesesFail, "need rank J(Q) = g = " + std::to_string(g) + ", got " +
                                                   std::to_string(rank));
    }
    return count_affine_points(curve, p) + 2 * g;
}

long smooth_point_count(const FibreData& fibre_at_p) {
    long total = 0;
    for (const auto& c : fibre_at_p.components) {
        if (c.multiplicity == 1) total += c.smooth_noncusp_point_count;
    }
    return total;
}

long n_prime(const FibreData& fibre, bool in_S) {
    if (!in_S) return fibre.num_smooth_components();
    std::set<std::string> on_d;
    for (const auto& x : fibre.smooth_cusp_points) on_d.insert(fibre.component_of_point(x));
    long n = 0;
    for (const auto& c : fibre.components) {
        if (c.has_smooth_point && !on_d.count(c.id)) ++n;
    }
    return n;
}

std::vector<std::string> t_set(const std::vector<FibreData>& fibres, long p) {
    std::vector<std::string> out;
    for (const auto& f : fibres) {
        if (f.prime != p && f.components_meeting_d().size() > 1) out.push_back(f.label);
    }
    return out;
}

namespace {

const FibreData& fibre_at(const BoundInputs& in) {
    const FibreData* found = nullptr;
    for (const auto& f : in.fibres) {
        if (f.prime != in.p) continue;
        if (found) throw Error(ErrorKind::HypothesisViolated, "several fibres supplied at p");
        found = &f;
    }
    if (!found) throw Error(ErrorKind::MissingFibre, "no fibre supplied at p = " + std::to_string(in.p));
    return *found;
}

long base_bound(const BoundInputs& in) {
    const auto& inv = in.inv;
    if (in.S.count(in.p)) throw Error(ErrorKind::HypothesisViolated, "p must not lie in S");
    for (long q : in.S) {
        bool ok = std::any_of(in.fibres.begin(), in.fibres.end(), [&](const FibreData& f) { return f.prime == q; });
        if (!ok) throw Error(ErrorKind::MissingFibre, "no fibre supplied for prime " + std::to_string(q) + " in S");
    }
    Inequality c = condition_1_1(inv, static_cast<long>(in.S.size()));
    if (!c.holds()) throw Error(ErrorKind::ConditionFails, "condition r + #S < g + #|D| + n2 - 1 fails: " + c.to_string());
    if (in.p <= 2 * inv.genus + inv.n) {
        throw Error(ErrorKind::ConditionFails, "need p > 2g + n = " + std::to_string(2 * inv.genus + inv.n));
    }
    return smooth_point_count(fibre_at(in)) + 2 * inv.genus - 2 + inv.n;
}

}  // namespace

long bound_general(const BoundInputs& in, bool prune) {
    long total = base_bound(in);
    for (const auto& f : in.fibres) {
        if (f.prime == in.p) continue;
        bool in_S = in.S.count(f.prime) > 0;
        long n = in_S && prune ? n_prime(f, true) : f.num_smooth_components();
        if (in_S) n += static_cast<long>(f.smooth_cusp_points.size());
        total *= n;
    }
    return total;
}

long bound_improved(const BoundInputs& in) {
    long base = base_bound(in);
    auto T = t_set(in.fibres, in.p);
    std::set<std::string> Tset(T.begin(), T.end());
    struct Entry {
        long c = 0;       // smooth cusp points
        long nprime = 0;  // n'_l
        bool in_T = false;
    };
    std::vector<Entry> s_fibres;  // fibres at primes of S
    long outside = 1;             // T fibres with l not in S
    for (const auto& f : in.fibres) {
        if (f.prime == in.p) continue;
        bool in_S = in.S.count(f.prime) > 0;
        bool inT = Tset.count(f.label) > 0;
        if (in_S) {
            long c = static_cast<long>(f.smooth_cusp_points.size());
            // no cusp point on the smooth locus: S-integral at l means integral at l
            if (c == 0) {
                if (inT) outside *= f.num_smooth_components();
                continue;
            }
            s_fibres.push_back({c, n_prime(f, true), inT});
        } else if (inT) {
            outside *= n_prime(f, false);
        }
    }
    // S0 ranges over subsets of S containing S \ T; choose freely on S cap T.
    long sum = 0;
    std::vector<std::size_t> free;
    long fixed = 1;
    for (std::size_t i = 0; i < s_fibres.size(); ++i) {
        if (s_fibres[i].in_T) {
            free.push_back(i);
        } else {
            fixed *= s_fibres[i].c;
        }
    }
    for (unsigned long mask = 0; mask < (1UL << free.size()); ++mask) {
        long term = fixed;
        for (std::size_t k = 0; k < free.size(); ++k) {
            const auto& e = s_fibres[free[k]];
            term *= (mask >> k & 1UL) ? e.c : e.nprime;
        }
        sum += term;
    }
    return base * sum * outside;
}

long bound_fixed_type(const FibreData& fibre_at_p, const std::string& component, const NumberFieldInvariants& inv,
                      long p, long c_sigma) {
    long idx = fibre_at_p.component_index(component);
    if (idx < 0) throw Error(ErrorKind::InvalidType, "unknown component " + component);
    const auto& C = fibre_at_p.components[static_cast<std::size_t>(idx)];
    if (C.multiplicity != 1) throw Error(ErrorKind::InvalidType, "component " + component + " has multiplicity > 1");
    if (!chabauty_condition(inv, c_sigma)) {
        throw Error(ErrorKind::ConditionFails, "Chabauty condition fails: " + chabauty_inequality(inv, c_sigma).to_string());
    }
    if (p <= 2 * inv.genus + inv.n) {
        throw Error(ErrorKind::ConditionFails, "need p > 2g + n = " + std::to_string(2 * inv.genus + inv.n));
    }
    return C.smooth_noncusp_point_count + 2 * inv.genus - 2 + inv.n;
}

}  // namespace affchab
