#include "affchab/padic.hpp"

#include <algorithm>
#include <sstream>

namespace affchab {

namespace {

void require_same_prime(const Padic& a, const Padic& b) {
    if (a.prime() != b.prime()) {
        throw Error(ErrorKind::PrimeMismatch,
                    std::to_string(a.prime()) + " vs " + std::to_string(b.prime()));
    }
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw Error(ErrorKind::DivisionByZero, "non-invertible unit");
    }
    return r;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

long floor_log(long n, long p) {
    long k = 0;
    long q = p;
    while (q <= n) {
        ++k;
        if (q > n / p) break;
        q *= p;
    }
    return k;
}

}  // namespace

mpz_class ppow(long p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::max(0L, k)));
    return r;
}

long valuation_of(const mpz_class& n, long p) {
    if (n == 0) return kInfinity;
    mpz_class pp = p;
    mpz_class t = n;
    return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

Padic Padic::zero(long p) { return Padic(p, kInfinity, kInfinity, 0); }

Padic Padic::zero_to(long p, long k) { return Padic(p, k, k, 0); }

Padic Padic::normalize(long p, long shift, long abs, mpz_class n) {
    long rel = abs - shift;
    if (rel <= 0) return zero_to(p, abs);
    n = mod_pos(n, ppow(p, rel));
    if (n == 0) return zero_to(p, abs);
    long e = valuation_of(n, p);
    mpz_class u = n / ppow(p, e);
    return Padic(p, shift + e, abs, u);
}

Padic Padic::from_int(long p, const mpz_class& n, long abs_prec) {
    return normalize(p, 0, abs_prec, n);
}

Padic Padic::from_rational(long p, const mpq_class& q, long abs_prec) {
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    if (num == 0) return zero_to(p, abs_prec);
    long vn = valuation_of(num, p);
    long vd = valuation_of(den, p);
    long v = vn - vd;
    if (abs_prec <= v) return zero_to(p, abs_prec);
    long rel = abs_prec - v;
    mpz_class m = ppow(p, rel);
    num /= ppow(p, vn);
    den /= ppow(p, vd);
    mpz_class u = mod_pos(num * inverse_mod(mod_pos(den, m), m), m);
    return Padic(p, v, abs_prec, u);
}

Padic Padic::from_digits(long p, long v, const std::vector<long>& digits) {
    mpz_class u = 0;
    mpz_class pk = 1;
    for (long d : digits) {
        u += pk * d;
        pk *= p;
    }
    return normalize(p, v, v + static_cast<long>(digits.size()), u);
}

Padic Padic::parse(long p, const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::ParseError, "p-adic digit string lacks ':': " + s);
    }
    std::string head = s.substr(0, colon);
    std::string tail = s.substr(colon + 1);
    if (head == "inf") return zero(p);
    long v = 0;
    std::vector<long> digits;
    try {
        v = std::stol(head);
        std::stringstream ss(tail);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            long d = std::stol(tok);
            if (d < 0 || d >= p) throw Error(ErrorKind::ParseError, "digit out of range: " + tok);
            digits.push_back(d);
        }
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "malformed p-adic digit string: " + s);
    }
    return from_digits(p, v, digits);
}

mpz_class Padic::to_integer() const {
    if (is_zero()) return 0;
    if (v_ < 0) throw Error(ErrorKind::PrecisionExhausted, "negative valuation has no integer representative");
    return ppow(p_, v_) * u_;
}

mpq_class Padic::to_rational() const {
    if (is_zero()) return 0;
    mpq_class r(u_);
    if (v_ >= 0) {
        r *= ppow(p_, v_);
    } else {
        r /= mpq_class(ppow(p_, -v_));
    }
    r.canonicalize();
    return r;
}

std::vector<long> Padic::unit_digits() const {
    std::vector<long> out;
    if (is_zero()) return out;
    mpz_class u = u_;
    for (long i = 0; i < rel_prec(); ++i) {
        mpz_class d = mod_pos(u, p_);
        out.push_back(d.get_si());
        u = (u - d) / p_;
    }
    return out;
}

Padic Padic::with_abs_prec(long k) const {
    if (k >= abs_) return *this;
    if (k <= v_) return zero_to(p_, k);
    return Padic(p_, v_, k, mod_pos(u_, ppow(p_, k - v_)));
}

Padic Padic::shift(long k) const {
    if (is_exact_zero()) return *this;
    return Padic(p_, v_ + k, abs_ + k, u_);
}

Padic Padic::mul_int(const mpz_class& n) const {
    if (n == 0 || is_exact_zero()) return zero(p_);
    long e = valuation_of(n, p_);
    if (abs_ == v_) return zero_to(p_, v_ + e);
    mpz_class m = ppow(p_, rel_prec());
    mpz_class nu = n / ppow(p_, e);
    return Padic(p_, v_ + e, abs_ + e, mod_pos(u_ * nu, m));
}

Padic Padic::div_int(const mpz_class& n) const {
    if (n == 0) throw Error(ErrorKind::DivisionByZero, "division by integer zero");
    if (is_exact_zero()) return *this;
    long e = valuation_of(n, p_);
    if (abs_ == v_) return zero_to(p_, v_ - e);
    mpz_class m = ppow(p_, rel_prec());
    mpz_class nu = n / ppow(p_, e);
    return Padic(p_, v_ - e, abs_ - e, mod_pos(u_ * inverse_mod(mod_pos(nu, m), m), m));
}

bool Padic::congruent(const Padic& other) const {
    require_same_prime(*this, other);
    return (*this - other).is_zero();
}

std::string Padic::to_digit_string() const {
    if (is_exact_zero()) return "inf:";
    std::string s = std::to_string(v_) + ":";
    auto d = unit_digits();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s;
}

std::string Padic::to_string() const {
    if (is_exact_zero()) return "0";
    std::string big = "O(" + std::to_string(p_) + "^" + std::to_string(abs_) + ")";
    std::string s;
    auto d = unit_digits();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) continue;
        long e = v_ + static_cast<long>(i);
        std::string term;
        if (e == 0) {
            term = std::to_string(d[i]);
        } else {
            term = (d[i] == 1 ? "" : std::to_string(d[i]) + "*") + std::to_string(p_) +
                   (e == 1 ? "" : "^" + std::to_string(e));
        }
        s += term + " + ";
    }
    return s + big;
}

Padic Padic::operator-() const {
    if (is_zero()) return *this;
    mpz_class m = ppow(p_, rel_prec());
    return Padic(p_, v_, abs_, mod_pos(-u_, m));
}

Padic operator+(const Padic& a, const Padic& b) {
    require_same_prime(a, b);
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    long p = a.p_;
    long abs = std::min(a.abs_, b.abs_);
    long s = std::min(a.v_, b.v_);
    if (abs <= s) return Padic::zero_to(p, abs);
    mpz_class n = ppow(p, a.v_ - s) * a.u_ + ppow(p, b.v_ - s) * b.u_;
    return Padic::normalize(p, s, abs, n);
}

Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

Padic operator*(const Padic& a, const Padic& b) {
    require_same_prime(a, b);
    long p = a.p_;
    if (a.is_exact_zero() || b.is_exact_zero()) return Padic::zero(p);
    long v = a.v_ + b.v_;
    long rel = std::min(a.rel_prec(), b.rel_prec());
    if (rel <= 0) return Padic::zero_to(p, v);
    mpz_class m = ppow(p, rel);
    return Padic(p, v, v + rel, mod_pos(a.u_ * b.u_, m));
}

Padic operator/(const Padic& a, const Padic& b) {
    require_same_prime(a, b);
    long p = a.p_;
    if (b.is_exact_zero()) throw Error(ErrorKind::DivisionByZero, "division by exact zero");
    if (b.rel_prec() <= 0) {
        throw Error(ErrorKind::PrecisionExhausted, "divisor is zero to its precision " + b.to_string());
    }
    if (a.is_exact_zero()) return a;
    long v = a.v_ - b.v_;
    long rel = std::min(a.rel_prec(), b.rel_prec());
    if (rel <= 0) return Padic::zero_to(p, v);
    mpz_class m = ppow(p, rel);
    return Padic(p, v, v + rel, mod_pos(a.u_ * inverse_mod(b.u_, m), m));
}

Padic iwasawa_log(const Padic& a) {
    long p = a.prime();
    if (a.is_exact_zero()) throw Error(ErrorKind::DivisionByZero, "log of zero");
    long k = a.rel_prec();
    if (k <= 0) throw Error(ErrorKind::PrecisionExhausted, "log of a value with no known digits");
    mpz_class pk = ppow(p, k);
    mpz_class w;
    mpz_powm_ui(w.get_mpz_t(), a.unit().get_mpz_t(), static_cast<unsigned long>(p - 1), pk.get_mpz_t());
    mpz_class z = mod_pos(w - 1, pk);
    if (z == 0) return Padic::zero_to(p, k);
    long vz = valuation_of(z, p);

    long nmax = 1;
    while (nmax * vz - floor_log(nmax, p) < k) ++nmax;
    long emax = floor_log(nmax, p);
    mpz_class big = ppow(p, k + emax);

    mpz_class sum = 0;
    mpz_class zn = 1;
    for (long n = 1; n < nmax; ++n) {
        zn = mod_pos(zn * z, big);
        long e = valuation_of(n, p);
        mpz_class nn = n;
        mpz_class unit_n = nn / ppow(p, e);
        mpz_class term = mod_pos(zn / ppow(p, e), pk);
        term = mod_pos(term * inverse_mod(unit_n, pk), pk);
        if (n % 2 == 1) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum = mod_pos(sum * inverse_mod(mpz_class(p - 1), pk), pk);
    return Padic::from_int(p, sum, k);
}

Padic hensel_sqrt(const Padic& a, std::optional<long> seed) {
    long p = a.prime();
    if (p == 2) throw Error(ErrorKind::EvenPrimeUnsupported, "hensel_sqrt requires an odd prime");
    if (a.is_exact_zero()) return a;
    if (a.rel_prec() <= 0) {
        long k = a.abs_prec();
        return Padic::zero_to(p, k >= 0 ? (k + 1) / 2 : k / 2);
    }
    if (a.valuation() % 2 != 0) throw Error(ErrorKind::NotASquare, "odd valuation " + a.to_string());
    long k = a.rel_prec();
    mpz_class r = mod_pos(a.unit(), p);
    mpz_class pm = p;
    if (mpz_legendre(r.get_mpz_t(), pm.get_mpz_t()) != 1) {
        throw Error(ErrorKind::NotASquare, "unit part is not a square mod " + std::to_string(p));
    }
    mpz_class s0;
    if (seed) {
        s0 = mod_pos(mpz_class(*seed), pm);
        if (mod_pos(s0 * s0 - r, pm) != 0) {
            throw Error(ErrorKind::NotASquare,
                        "seed " + std::to_string(*seed) + " is not a square root mod " + std::to_string(p));
        }
    } else {
        for (long c = 1; c < p; ++c) {
            if (mod_pos(mpz_class(c) * c - r, pm) == 0) {
                s0 = c;
                break;
            }
        }
    }
    mpz_class pk = ppow(p, k);
    mpz_class s = s0;
    for (long prec = 1; prec < k; prec *= 2) {
        mpz_class f = s * s - a.unit();
        s = mod_pos(s - f * inverse_mod(mod_pos(2 * s, pk), pk), pk);
    }
    return Padic::from_int(p, s, k).shift(a.valuation() / 2);
}

long TailBound::at(long n, long p) const {
    switch (kind) {
        case Kind::Zero: return kInfinity;
        case Kind::MinusInfinity: return -kInfinity;
        case Kind::Linear: break;
    }
    return offset + slope * n - loss * floor_log(n + 1, p);
}

long TailBound::min_from(long L, long p) const {
    if (kind == Kind::Zero) return kInfinity;
    if (kind == Kind::MinusInfinity) return -kInfinity;
    if (slope < 0 || (slope == 0 && loss > 0)) return -kInfinity;
    long best = at(L, p);
    if (slope >= loss) return best;
    // Only n = p^j - 1 can undercut the value at L.
    long q = p;
    for (int j = 1; j < 62; ++j) {
        if (q - 1 > L) best = std::min(best, at(q - 1, p));
        if (q > (kInfinity / p) / std::max(1L, slope)) break;
        q *= p;
    }
    return best;
}

TailBound min(const TailBound& a, const TailBound& b) {
    using K = TailBound::Kind;
    if (a.kind == K::Zero) return b;
    if (b.kind == K::Zero) return a;
    if (a.kind == K::MinusInfinity || b.kind == K::MinusInfinity) return TailBound::minus_infinity();
    return TailBound::linear(std::min(a.offset, b.offset), std::min(a.slope, b.slope),
                             std::max(a.loss, b.loss));
}

namespace {

Padic coefficient_or_tail(const PadicSeries& f, std::size_t i) {
    if (i < f.size()) return f[i];
    if (f.tail().kind == TailBound::Kind::Zero) return Padic::zero(f.prime());
    if (f.tail().kind == TailBound::Kind::MinusInfinity) {
        throw Error(ErrorKind::PrecisionExhausted, "series tail has no valuation bound");
    }
    return Padic::zero_to(f.prime(), f.tail().at(static_cast<long>(i), f.prime()));
}

}  // namespace

PadicSeries PadicSeries::truncated(std::size_t L) const {
    if (L >= coeffs_.size()) return *this;
    std::vector<Padic> kept(coeffs_.begin(), coeffs_.begin() + static_cast<long>(L));
    bool fits = tail_.kind != TailBound::Kind::Zero;
    long lowest = tail_valuation_bound();
    bool all_zero = tail_.kind == TailBound::Kind::Zero;
    for (std::size_t i = L; i < coeffs_.size(); ++i) {
        long lb = coeffs_[i].lower_bound();
        if (!coeffs_[i].is_exact_zero()) all_zero = false;
        lowest = std::min(lowest, lb);
        if (tail_.at(static_cast<long>(i), p_) > lb) fits = false;
    }
    if (all_zero) return PadicSeries(p_, kept, TailBound::zero());
    if (fits) return PadicSeries(p_, kept, tail_);
    return PadicSeries(p_, kept, TailBound::constant(lowest));
}

PadicSeries operator+(const PadicSeries& a, const PadicSeries& b) {
    if (a.prime() != b.prime()) {
        throw Error(ErrorKind::PrimeMismatch, "series over different primes");
    }
    std::size_t n = std::max(a.size(), b.size());
    std::vector<Padic> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(coefficient_or_tail(a, i) + coefficient_or_tail(b, i));
    return PadicSeries(a.prime(), std::move(c), min(a.tail(), b.tail()));
}

PadicSeries scale(const Padic& c, const PadicSeries& f) {
    if (c.is_exact_zero()) return PadicSeries(f.prime(), {}, TailBound::zero());
    std::vector<Padic> out;
    out.reserve(f.size());
    for (const auto& a : f.coefficients()) out.push_back(c * a);
    TailBound t = f.tail();
    if (t.kind == TailBound::Kind::Linear) t.offset += c.lower_bound();
    return PadicSeries(f.prime(), std::move(out), t);
}

PadicSeries series_antiderivative(const PadicSeries& f) {
    long p = f.prime();
    std::vector<Padic> out;
    out.reserve(f.size() + 1);
    out.push_back(Padic::zero(p));
    for (std::size_t n = 0; n < f.size(); ++n) out.push_back(f[n].div_int(mpz_class(static_cast<long>(n + 1))));
    TailBound t = f.tail();
    if (t.kind == TailBound::Kind::Linear) {
        t.offset -= t.slope;
        t.loss += 1;
    }
    return PadicSeries(p, std::move(out), t);
}

PadicSeries series_derivative(const PadicSeries& f) {
    long p = f.prime();
    std::vector<Padic> out;
    for (std::size_t n = 1; n < f.size(); ++n) out.push_back(f[n].mul_int(mpz_class(static_cast<long>(n))));
    TailBound t = f.tail();
    if (t.kind == TailBound::Kind::Linear) t.offset += t.slope - t.loss;
    return PadicSeries(p, std::move(out), t);
}

Padic evaluate(const PadicSeries& f, const Padic& t) {
    long p = f.prime();
    if (t.prime() != p) throw Error(ErrorKind::PrimeMismatch, "evaluation point over another prime");
    if (t.lower_bound() < 0) {
        throw Error(ErrorKind::HypothesisViolated, "evaluation point must lie in Z_p");
    }
    Padic sum = coefficient_or_tail(f, 0);
    if (t.is_exact_zero()) return sum;
    Padic power = t;
    for (std::size_t i = 1; i < f.size(); ++i) {
        sum = sum + f[i] * power;
        power = power * t;
    }
    TailBound tb = f.tail();
    if (tb.kind == TailBound::Kind::MinusInfinity) {
        throw Error(ErrorKind::PrecisionExhausted, "series tail has no valuation bound");
    }
    if (tb.kind == TailBound::Kind::Linear) {
        tb.slope += t.lower_bound();
        sum = sum.with_abs_prec(tb.min_from(std::max<long>(1, static_cast<long>(f.size())), p));
    }
    return sum;
}

NewtonPolygon lower_hull(const std::vector<std::pair<long, long>>& pts) {
    NewtonPolygon poly;
    auto& h = poly.vertices;
    for (const auto& pt : pts) {
        while (h.size() >= 2) {
            const auto& a = h[h.size() - 2];
            const auto& b = h[h.size() - 1];
            // drop b unless it lies strictly below segment a -> pt
            __int128 cross = static_cast<__int128>(b.first - a.first) * (pt.second - a.second) -
                             static_cast<__int128>(b.second - a.second) * (pt.first - a.first);
            if (cross <= 0) {
                h.pop_back();
            } else {
                break;
            }
        }
        h.push_back(pt);
    }
    return poly;
}

NewtonPolygon newton_polygon(const PadicSeries& f) {
    std::vector<std::pair<long, long>> pts;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].is_exact_zero()) pts.emplace_back(static_cast<long>(i), f[i].lower_bound());
    }
    return lower_hull(pts);
}

std::string StrassmannVerdict::to_string() const {
    switch (kind) {
        case Kind::Exact: return "Exact(" + std::to_string(count) + ")";
        case Kind::AtMost: return "AtMost(" + std::to_string(count) + ")";
        case Kind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

StrassmannVerdict inconclusive(std::string why) {
    StrassmannVerdict v;
    v.kind = StrassmannVerdict::Kind::Inconclusive;
    v.reason = std::move(why);
    return v;
}

StrassmannVerdict at_most(long n, std::string why) {
    StrassmannVerdict v;
    v.kind = StrassmannVerdict::Kind::AtMost;
    v.count = n;
    v.reason = std::move(why);
    return v;
}

long digit_mod_p(const Padic& a, long p) { return mod_pos(a.unit(), p).get_si(); }

long eval_mod(const std::vector<long>& c, long x, long p) {
    __int128 acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
    return static_cast<long>(acc);
}

StrassmannVerdict strassmann_zp(const PadicSeries& f) {
    long p = f.prime();
    const auto& a = f.coefficients();
    if (f.tail().kind == TailBound::Kind::MinusInfinity) return inconclusive("tail bound is -inf");
    long tail = f.tail_valuation_bound();
    long m = kInfinity;
    for (const auto& c : a) m = std::min(m, c.lower_bound());
    if (m >= kInfinity) return inconclusive("no nonzero listed coefficient");
    if (tail <= m) {
        return inconclusive("tail bound " + std::to_string(tail) + " does not exceed minimum " + std::to_string(m));
    }
    long N = -1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].lower_bound() == m) N = static_cast<long>(i);
    }
    if (!a[N].valuation_known()) return inconclusive("coefficient " + std::to_string(N) + " unknown");

    long k0 = 0;
    while (k0 < N && a[k0].is_exact_zero()) ++k0;
    if (k0 >= 2) return at_most(N, "multiple zero at the origin");
    if (!a[k0].valuation_known()) return at_most(N, "constant term not determined");

    std::vector<std::pair<long, long>> pts;
    for (long i = k0; i <= N; ++i) {
        if (!a[i].is_exact_zero()) pts.emplace_back(i, a[i].lower_bound());
    }
    auto hull = lower_hull(pts).vertices;
    for (const auto& vtx : hull) {
        if (!a[vtx.first].valuation_known()) return at_most(N, "hull vertex not determined");
    }
    long total = k0;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        auto [i1, v1] = hull[s];
        auto [i2, v2] = hull[s + 1];
        long di = i2 - i1;
        long dv = v1 - v2;
        if (dv % di != 0) continue;
        long lambda = dv / di;
        std::vector<long> residual(static_cast<std::size_t>(di + 1), 0);
        for (long i = i1; i <= i2; ++i) {
            if (a[i].is_exact_zero()) continue;
            long line = v1 - lambda * (i - i1);
            if (a[i].lower_bound() > line) continue;
            if (!a[i].valuation_known()) return at_most(N, "coefficient on a segment not determined");
            residual[static_cast<std::size_t>(i - i1)] = digit_mod_p(a[i], p);
        }
        std::vector<long> deriv;
        for (std::size_t i = 1; i < residual.size(); ++i) {
            deriv.push_back(static_cast<long>((static_cast<__int128>(residual[i]) * static_cast<long>(i)) % p));
        }
        for (long r = 1; r < p; ++r) {
            if (eval_mod(residual, r, p) != 0) continue;
            if (eval_mod(deriv, r, p) == 0) return at_most(N, "repeated residual root");
            ++total;
        }
    }
    StrassmannVerdict v;
    v.kind = StrassmannVerdict::Kind::Exact;
    v.count = total;
    v.zero_at_origin = k0 == 1;
    return v;
}

}  // namespace

StrassmannVerdict strassmann_zero_count(const PadicSeries& f, Domain domain) {
    if (domain == Domain::Zp) return strassmann_zp(f);
    std::vector<Padic> c;
    c.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c.push_back(f[i].shift(static_cast<long>(i)));
    TailBound t = f.tail();
    if (t.kind == TailBound::Kind::Linear) t.slope += 1;
    return strassmann_zp(PadicSeries(f.prime(), std::move(c), t));
}

long newton_bound_mplus1(long m, long p) {
    if (m < 0 || m >= p - 2) {
        throw Error(ErrorKind::HypothesisViolated,
                    "need 0 <= m < p - 2, got m=" + std::to_string(m) + ", p=" + std::to_string(p));
    }
    return m + 1;
}

}  // namespace affchab
