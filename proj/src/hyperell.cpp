#include "affchab/hyperell.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "affchab/error.hpp"

namespace affchab {

namespace {

using ZSeries = std::vector<mpz_class>;

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw Error(ErrorKind::DivisionByZero, "series constant term is not a unit");
    }
    return r;
}

ZSeries series_mul(const ZSeries& a, const ZSeries& b, std::size_t N, const mpz_class& P) {
    ZSeries c(N, 0);
    for (std::size_t i = 0; i < std::min(a.size(), N); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < N; ++j) c[i + j] += a[i] * b[j];
    }
    for (auto& x : c) x = mod_pos(x, P);
    return c;
}

ZSeries series_inverse(const ZSeries& a, std::size_t N, const mpz_class& P) {
    ZSeries z(N, 0);
    mpz_class inv0 = inv_mod(mod_pos(a[0], P), P);
    z[0] = inv0;
    for (std::size_t n = 1; n < N; ++n) {
        mpz_class s = 0;
        for (std::size_t i = 1; i <= n && i < a.size(); ++i) s += a[i] * z[n - i];
        z[n] = mod_pos(-s * inv0, P);
    }
    return z;
}

// sum_k h_k w^k, truncated
ZSeries compose(const IntPoly& h, const ZSeries& w, std::size_t N, const mpz_class& P) {
    ZSeries acc(N, 0);
    for (std::size_t k = h.size(); k-- > 0;) {
        acc = series_mul(acc, w, N, P);
        acc[0] = mod_pos(acc[0] + h[k], P);
    }
    return acc;
}

mpz_class hensel_root(const IntPoly& f, long xbar, const mpz_class& P) {
    IntPoly df = derivative(f);
    mpz_class x = xbar;
    for (int it = 0; it < 200; ++it) {
        mpz_class fx = mod_pos(eval(f, x), P);
        if (fx == 0) return x;
        x = mod_pos(x - fx * inv_mod(mod_pos(eval(df, x), P), P), P);
    }
    return x;
}

}  // namespace

HyperellipticCurve HyperellipticCurve::from_coefficients(IntPoly f) {
    trim(f);
    long d = affchab::degree(f);
    if (d < 4 || d % 2 != 0) {
        throw Error(ErrorKind::InvariantViolation, "deg f must be even and at least 4, got " + std::to_string(d));
    }
    if (discriminant(f) == 0) throw Error(ErrorKind::InvariantViolation, "f is not squarefree");
    HyperellipticCurve c;
    c.f = std::move(f);
    c.genus = d / 2 - 1;
    return c;
}

CuspInvariants cusp_invariants(const HyperellipticCurve& curve) {
    if (curve.degree() % 2 != 0) {
        throw Error(ErrorKind::UnsupportedCuspField, "odd-degree models are not handled");
    }
    const mpz_class& lc = curve.leading_coefficient();
    if (lc > 0 && mpz_perfect_square_p(lc.get_mpz_t())) return {2, 2, 2, 0};
    if (lc > 0) return {2, 1, 2, 0};
    return {2, 1, 0, 1};
}

std::vector<std::pair<long, long>> affine_points_mod(const HyperellipticCurve& curve, long p) {
    if (p == 2) throw Error(ErrorKind::EvenPrimeUnsupported, "point counts need an odd prime");
    ModPoly fp = reduce(curve.f, p);
    std::vector<long> roots_of(static_cast<std::size_t>(p), -1);
    for (long y = 0; y <= p / 2; ++y) roots_of[static_cast<std::size_t>((y * y) % p)] = y;
    std::vector<std::pair<long, long>> pts;
    for (long x = 0; x < p; ++x) {
        long v = eval(fp, x, p);
        long y = roots_of[static_cast<std::size_t>(v)];
        if (y < 0) continue;
        pts.emplace_back(x, y);
        if (y != 0) pts.emplace_back(x, p - y);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

long count_affine_points(const HyperellipticCurve& curve, long p) {
    if (p == 2) throw Error(ErrorKind::EvenPrimeUnsupported, "point counts need an odd prime");
    ModPoly fp = reduce(curve.f, p);
    std::vector<char> square(static_cast<std::size_t>(p), 0);
    for (long y = 1; y < p; ++y) square[static_cast<std::size_t>((y * y) % p)] = 1;
    long count = 0;
    for (long x = 0; x < p; ++x) {
        long v = eval(fp, x, p);
        if (v == 0) {
            count += 1;
        } else if (square[static_cast<std::size_t>(v)]) {
            count += 2;
        }
    }
    return count;
}

ResidueDisc make_disc(const HyperellipticCurve& curve, long p, long xbar, long ybar, long precision,
                      std::optional<mpz_class> centre_x) {
    if (p == 2) throw Error(ErrorKind::EvenPrimeUnsupported, "disc expansions need an odd prime");
    xbar = ((xbar % p) + p) % p;
    ybar = ((ybar % p) + p) % p;
    ModPoly fp = reduce(curve.f, p);
    if (eval(fp, xbar, p) != (ybar * ybar) % p) {
        throw Error(ErrorKind::HypothesisViolated, "point is not on the curve mod p");
    }
    ResidueDisc d;
    d.p = p;
    d.xbar = xbar;
    d.ybar = ybar;
    d.precision = precision;
    if (ybar != 0) {
        mpz_class c = centre_x ? *centre_x : mpz_class(xbar);
        if (mod(c, p) != xbar) throw Error(ErrorKind::DifferentDiscs, "centre does not reduce to the disc's point");
        d.kind = ResidueDisc::Kind::NonWeierstrass;
        d.x0 = Padic::from_int(p, c, precision);
        d.y0 = hensel_sqrt(Padic::from_int(p, eval(curve.f, c), precision), ybar);
    } else {
        if (eval(derivative(fp, p), xbar, p) == 0) {
            throw Error(ErrorKind::HypothesisViolated, "singular point mod p");
        }
        d.kind = ResidueDisc::Kind::Weierstrass;
        d.x0 = Padic::from_int(p, hensel_root(curve.f, xbar, ppow(p, precision)), precision);
        d.y0 = Padic::zero(p);
    }
    return d;
}

std::vector<mpz_class> unscaled_expansion(const HyperellipticCurve& curve, const ResidueDisc& disc, long j, long N) {
    if (j < 0 || j > curve.genus) {
        throw Error(ErrorKind::HypothesisViolated, "basis index out of range: " + std::to_string(j));
    }
    std::size_t n = static_cast<std::size_t>(std::max(1L, N));
    mpz_class P = ppow(disc.p, disc.precision);
    mpz_class x0 = disc.x0.to_integer();
    if (disc.kind == ResidueDisc::Kind::NonWeierstrass) {
        IntPoly g = taylor_shift(curve.f, x0);
        ZSeries y(n, 0);
        y[0] = mod_pos(disc.y0.to_integer(), P);
        mpz_class inv2y = inv_mod(mod_pos(2 * y[0], P), P);
        for (std::size_t k = 1; k < n; ++k) {
            mpz_class s = k < g.size() ? g[k] : mpz_class(0);
            for (std::size_t i = 1; i < k; ++i) s -= y[i] * y[k - i];
            y[k] = mod_pos(s * inv2y, P);
        }
        ZSeries xs(2, 0);
        xs[0] = mod_pos(x0, P);
        xs[1] = 1;
        ZSeries xj(n, 0);
        xj[0] = 1;
        for (long i = 0; i < j; ++i) xj = series_mul(xj, xs, n, P);
        return series_mul(xj, series_inverse(y, n, P), n, P);
    }
    IntPoly h = taylor_shift(curve.f, x0);
    for (auto& c : h) c = mod_pos(c, P);
    mpz_class inv_h1 = inv_mod(h[1], P);
    IntPoly high = h;
    high[0] = 0;
    high[1] = 0;
    ZSeries w(n, 0);
    for (std::size_t it = 0; it < n; ++it) {
        ZSeries rest = compose(high, w, n, P);
        ZSeries next(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            mpz_class target = (k == 2 ? mpz_class(1) : mpz_class(0)) - rest[k] - (k == 0 ? h[0] : mpz_class(0));
            next[k] = mod_pos(target * inv_h1, P);
        }
        if (next == w) break;
        w = next;
    }
    ZSeries x = w;
    x[0] = mod_pos(x[0] + x0, P);
    IntPoly dh = derivative(h);
    ZSeries fprime = compose(dh, w, n, P);
    ZSeries xj(n, 0);
    xj[0] = 2;
    for (long i = 0; i < j; ++i) xj = series_mul(xj, x, n, P);
    return series_mul(xj, series_inverse(fprime, n, P), n, P);
}

PadicSeries disc_expand_differential(const HyperellipticCurve& curve, const ResidueDisc& disc, long j, long N) {
    auto c = unscaled_expansion(curve, disc, j, N);
    std::vector<Padic> coeffs;
    coeffs.reserve(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        coeffs.push_back(Padic::from_int(disc.p, c[n], disc.precision).shift(static_cast<long>(n + 1)));
    }
    return PadicSeries(disc.p, std::move(coeffs), TailBound::linear(1, 1, 0));
}

PadicSeries disc_expand(const HyperellipticCurve& curve, const ResidueDisc& disc, const LogDifferential& omega,
                        long N) {
    if (static_cast<long>(omega.alpha.size()) != curve.genus + 1) {
        throw Error(ErrorKind::HypothesisViolated, "log differential needs g + 1 coefficients");
    }
    PadicSeries acc(disc.p, {}, TailBound::zero());
    for (long j = 0; j <= curve.genus; ++j) {
        const Padic& a = omega.alpha[static_cast<std::size_t>(j)];
        if (a.is_exact_zero()) continue;
        acc = acc + scale(a, disc_expand_differential(curve, disc, j, N));
    }
    if (acc.size() == 0) {
        std::vector<Padic> zeros(static_cast<std::size_t>(N), Padic::zero(disc.p));
        return PadicSeries(disc.p, std::move(zeros), TailBound::zero());
    }
    return acc;
}

Padic disc_parameter(const ResidueDisc& disc, const PadicPoint& P) {
    if (disc.kind == ResidueDisc::Kind::NonWeierstrass) {
        Padic d = P.x - disc.x0;
        if (d.lower_bound() < 1) throw Error(ErrorKind::DifferentDiscs, "x-coordinate outside the disc");
        Padic dy = P.y - disc.y0;
        if (dy.lower_bound() < 1) throw Error(ErrorKind::DifferentDiscs, "y-coordinate outside the disc");
        return d.shift(-1);
    }
    if (P.y.lower_bound() < 1) throw Error(ErrorKind::DifferentDiscs, "y-coordinate outside the disc");
    Padic dx = P.x - disc.x0;
    if (dx.lower_bound() < 1) throw Error(ErrorKind::DifferentDiscs, "x-coordinate outside the disc");
    return P.y.shift(-1);
}

namespace {

std::pair<long, long> reduction(const PadicPoint& P) {
    long p = P.x.prime();
    if (P.x.lower_bound() < 0 || P.y.lower_bound() < 0) {
        throw Error(ErrorKind::DifferentDiscs, "point does not reduce to an affine point");
    }
    return {mod(P.x.to_integer(), p), mod(P.y.to_integer(), p)};
}

}  // namespace

Padic tiny_integral(const HyperellipticCurve& curve, const LogDifferential& omega, const PadicPoint& P,
                    const PadicPoint& Q, long precision, std::optional<mpz_class> centre_x) {
    long p = P.x.prime();
    auto rp = reduction(P);
    auto rq = reduction(Q);
    if (rp != rq) throw Error(ErrorKind::DifferentDiscs, "endpoints reduce to different points");
    ResidueDisc disc = make_disc(curve, p, rp.first, rp.second, precision + 2, centre_x);
    long N = precision + curve.genus + 2;
    PadicSeries F = series_antiderivative(disc_expand(curve, disc, omega, N));
    return evaluate(F, disc_parameter(disc, Q)) - evaluate(F, disc_parameter(disc, P));
}

PadicSeries gm_disc_expansion(const Padic& a, long N) {
    long p = a.prime();
    if (a.valuation() != 0) throw Error(ErrorKind::HypothesisViolated, "disc centre must be a unit");
    Padic one = Padic::from_int(p, 1, a.abs_prec());
    Padic inv = one / a;
    std::vector<Padic> c;
    Padic power = inv;
    for (long n = 0; n < N; ++n) {
        Padic term = power.shift(n + 1);
        c.push_back(n % 2 == 0 ? term : -term);
        power = power * inv;
    }
    return PadicSeries(p, std::move(c), TailBound::linear(1, 1, 0));
}

Padic gm_tiny_integral(const Padic& a, const Padic& b) {
    Padic d = b - a;
    if (d.lower_bound() < 1) throw Error(ErrorKind::DifferentDiscs, "a and b lie in different discs");
    long N = std::min(a.abs_prec(), b.abs_prec()) + 4;
    PadicSeries F = series_antiderivative(gm_disc_expansion(a, N));
    return evaluate(F, d.shift(-1));
}

namespace {

std::vector<long> reduced_alpha(const LogDifferential& omega, long p) {
    long vmin = kInfinity;
    for (const auto& a : omega.alpha) {
        if (!a.is_exact_zero() && a.valuation_known()) vmin = std::min(vmin, a.valuation());
    }
    if (vmin >= kInfinity) throw Error(ErrorKind::ZeroDifferential, "omega reduces to zero at every precision");
    std::vector<long> out;
    for (const auto& a : omega.alpha) {
        if (a.is_exact_zero() || a.lower_bound() > vmin) {
            if (!a.is_exact_zero() && !a.valuation_known() && a.abs_prec() <= vmin) {
                throw Error(ErrorKind::PrecisionExhausted, "coefficient not known to the scaling valuation");
            }
            out.push_back(0);
        } else {
            out.push_back(mod(a.unit(), p));
        }
    }
    return out;
}

}  // namespace

ReductionOrders reduce_and_order(const HyperellipticCurve& curve, const LogDifferential& omega, long p) {
    ReductionOrders r;
    r.reduced_alpha = reduced_alpha(omega, p);
    long N = 2 * curve.genus + 3;
    for (auto [x, y] : affine_points_mod(curve, p)) {
        ResidueDisc disc = make_disc(curve, p, x, y, 1);
        std::vector<long> total(static_cast<std::size_t>(N), 0);
        for (long j = 0; j <= curve.genus; ++j) {
            long a = r.reduced_alpha[static_cast<std::size_t>(j)];
            if (a == 0) continue;
            auto c = unscaled_expansion(curve, disc, j, N);
            for (long n = 0; n < N; ++n) {
                auto& t = total[static_cast<std::size_t>(n)];
                t = (t + a * mod(c[static_cast<std::size_t>(n)], p)) % p;
            }
        }
        long order = -1;
        for (long n = 0; n < N; ++n) {
            if (total[static_cast<std::size_t>(n)] != 0) {
                order = n;
                break;
            }
        }
        if (order < 0) throw Error(ErrorKind::PrecisionExhausted, "reduced expansion vanishes to the computed order");
        r.points.push_back({x, y, order});
        r.n_C += order;
    }
    return r;
}

ReductionOrders reduce_and_order_algebraic(const HyperellipticCurve& curve, const LogDifferential& omega, long p) {
    ReductionOrders r;
    r.reduced_alpha = reduced_alpha(omega, p);
    ModPoly A(r.reduced_alpha.begin(), r.reduced_alpha.end());
    trim(A);
    for (auto [x, y] : affine_points_mod(curve, p)) {
        long m = root_multiplicity(A, x, p);
        long order = y == 0 ? 2 * m : m;
        r.points.push_back({x, y, order});
        r.n_C += order;
    }
    return r;
}

std::pair<mpq_class, mpq_class> residues_at_infinity(const HyperellipticCurve& curve,
                                                     const std::vector<mpq_class>& alpha) {
    const mpz_class& lc = curve.leading_coefficient();
    if (lc <= 0 || !mpz_perfect_square_p(lc.get_mpz_t())) {
        throw Error(ErrorKind::UnsupportedCuspField, "cusps at infinity are not rational");
    }
    mpz_class c;
    mpz_sqrt(c.get_mpz_t(), lc.get_mpz_t());
    long g = curve.genus;
    long d = curve.degree();
    std::size_t n = static_cast<std::size_t>(g + 2);
    // q(z) = z^(2g+2) f(1/z) / lc, s = sqrt(q) with s(0) = 1, r = 1/s
    std::vector<mpq_class> q(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        long i = d - static_cast<long>(k);
        if (i >= 0) q[k] = mpq_class(curve.f[static_cast<std::size_t>(i)]) / mpq_class(lc);
    }
    std::vector<mpq_class> s(n, 0), r(n, 0);
    s[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        mpq_class acc = q[k];
        for (std::size_t i = 1; i < k; ++i) acc -= s[i] * s[k - i];
        s[k] = acc / 2;
    }
    r[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        mpq_class acc = 0;
        for (std::size_t i = 1; i <= k; ++i) acc += s[i] * r[k - i];
        r[k] = -acc;
    }
    // omega = -(1/c) sum_j alpha_j z^(g-1-j) r(z) dz at infinity+
    mpq_class res = 0;
    for (long j = 0; j < static_cast<long>(alpha.size()); ++j) {
        long k = j - g;
        if (k >= 0 && k < static_cast<long>(n)) res += alpha[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k)];
    }
    res /= mpq_class(c);
    return {-res, res};
}

std::vector<RationalPoint> brute_force_integral_points(const HyperellipticCurve& curve, long H,
                                                       const std::vector<long>& S) {
    std::set<long> dens{1};
    for (long s : S) {
        std::set<long> grown = dens;
        for (long b : dens) {
            for (long m = b * s; m <= H; m *= s) grown.insert(m);
        }
        dens = grown;
    }
    long d = curve.degree();
    long g = curve.genus;
    std::vector<RationalPoint> out;
    for (long b : dens) {
        for (long a = -H; a <= H; ++a) {
            if (std::gcd(a, b) != 1) continue;
            // F(a, b) = b^(2g+2) f(a/b)
            mpz_class F = 0, ap = 1;
            mpz_class bb = b;
            for (long i = 0; i <= d; ++i) {
                mpz_class bp;
                mpz_pow_ui(bp.get_mpz_t(), bb.get_mpz_t(), static_cast<unsigned long>(d - i));
                F += curve.f[static_cast<std::size_t>(i)] * ap * bp;
                ap *= a;
            }
            if (F < 0 || !mpz_perfect_square_p(F.get_mpz_t())) continue;
            mpz_class Y;
            mpz_sqrt(Y.get_mpz_t(), F.get_mpz_t());
            mpz_class den;
            mpz_pow_ui(den.get_mpz_t(), bb.get_mpz_t(), static_cast<unsigned long>(g + 1));
            mpq_class x{mpz_class(a), mpz_class(b)};
            x.canonicalize();
            mpq_class y(Y, den);
            y.canonicalize();
            out.push_back({x, y});
            if (Y != 0) out.push_back({x, -y});
        }
    }
    std::sort(out.begin(), out.end(), [](const RationalPoint& l, const RationalPoint& r) {
        if (l.x != r.x) return l.x < r.x;
        return l.y < r.y;
    });
    return out;
}

}  // namespace affchab
