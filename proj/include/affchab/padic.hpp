#pragma once

#include <gmpxx.h>

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affchab/error.hpp"

namespace affchab {

// Sentinel for +infinity in valuations and precisions.
inline constexpr long kInfinity = std::numeric_limits<long>::max() / 4;

mpz_class ppow(long p, long k);
long valuation_of(const mpz_class& n, long p);  // kInfinity for n == 0

/// Element of Q_p known modulo p^abs_prec.
///
/// Stored as p^v * u with u a unit modulo p^(abs_prec - v). An exact zero has
/// v = abs_prec = +inf. A value that is zero to precision, O(p^k), has
/// v = abs_prec = k and no unit digits.
class Padic {
public:
    Padic() = default;

    static Padic zero(long p);
    static Padic zero_to(long p, long k);
    static Padic from_int(long p, const mpz_class& n, long abs_prec);
    static Padic from_rational(long p, const mpq_class& q, long abs_prec);
    /// Digits of the unit part, base p, low to high.
    static Padic from_digits(long p, long v, const std::vector<long>& digits);
    /// Parses "v:d,d,..."; "inf:" denotes an exact zero.
    static Padic parse(long p, const std::string& s);

    long prime() const { return p_; }
    long valuation() const { return v_; }
    long abs_prec() const { return abs_; }
    long rel_prec() const { return is_exact_zero() ? kInfinity : abs_ - v_; }
    const mpz_class& unit() const { return u_; }

    bool is_exact_zero() const { return v_ >= kInfinity; }
    /// Zero modulo the tracked precision (includes exact zero).
    bool is_zero() const { return is_exact_zero() || abs_ == v_; }
    /// True when the valuation is determined by the tracked digits.
    bool valuation_known() const { return is_exact_zero() || abs_ > v_; }
    /// Proven lower bound on the valuation.
    long lower_bound() const { return v_; }

    /// Representative integer modulo p^abs_prec; requires v >= 0 and finite precision.
    mpz_class to_integer() const;
    /// The rational p^v * u.
    mpq_class to_rational() const;
    std::vector<long> unit_digits() const;

    Padic with_abs_prec(long k) const;
    /// Exact multiplication by p^k.
    Padic shift(long k) const;
    /// Exact multiplication by an integer.
    Padic mul_int(const mpz_class& n) const;
    /// Exact division by a nonzero integer.
    Padic div_int(const mpz_class& n) const;

    /// Equality modulo the smaller of the two precisions.
    bool congruent(const Padic& other) const;

    std::string to_digit_string() const;
    std::string to_string() const;

    Padic operator-() const;

private:
    Padic(long p, long v, long abs, mpz_class u) : p_(p), v_(v), abs_(abs), u_(std::move(u)) {}
    static Padic normalize(long p, long shift, long abs, mpz_class n);

    friend Padic operator+(const Padic&, const Padic&);
    friend Padic operator*(const Padic&, const Padic&);
    friend Padic operator/(const Padic&, const Padic&);

    long p_ = 0;
    long v_ = kInfinity;
    long abs_ = kInfinity;
    mpz_class u_ = 0;
};

Padic operator+(const Padic& a, const Padic& b);
Padic operator-(const Padic& a, const Padic& b);
Padic operator*(const Padic& a, const Padic& b);
Padic operator/(const Padic& a, const Padic& b);

/// Iwasawa logarithm, normalised by log(p) = 0.
Padic iwasawa_log(const Padic& a);

/// Square root whose unit part reduces to `seed` mod p; smallest root if absent.
Padic hensel_sqrt(const Padic& a, std::optional<long> seed = std::nullopt);

/// Lower bound v(a_n) >= offset + slope*n - loss*floor(log_p(n+1)) for the
/// coefficients beyond the listed ones.
struct TailBound {
    enum class Kind { Zero, Linear, MinusInfinity };
    Kind kind = Kind::Zero;
    long offset = 0;
    long slope = 0;
    long loss = 0;

    static TailBound zero() { return {}; }
    static TailBound minus_infinity() { return {Kind::MinusInfinity, 0, 0, 0}; }
    static TailBound linear(long offset, long slope, long loss = 0) {
        return {Kind::Linear, offset, slope, loss};
    }
    static TailBound constant(long b) { return linear(b, 0, 0); }

    long at(long n, long p) const;
    /// min over n >= L of at(n).
    long min_from(long L, long p) const;
};

TailBound min(const TailBound& a, const TailBound& b);

class PadicSeries {
public:
    PadicSeries() = default;
    PadicSeries(long p, std::vector<Padic> coeffs, TailBound tail)
        : p_(p), coeffs_(std::move(coeffs)), tail_(tail) {}

    long prime() const { return p_; }
    const std::vector<Padic>& coefficients() const { return coeffs_; }
    const Padic& operator[](std::size_t i) const { return coeffs_[i]; }
    std::size_t size() const { return coeffs_.size(); }
    const TailBound& tail() const { return tail_; }

    /// Proven lower bound on v_p of every coefficient beyond the listed ones.
    long tail_valuation_bound() const {
        return tail_.min_from(static_cast<long>(coeffs_.size()), p_);
    }

    /// Keeps the first L coefficients, folding the rest into the tail.
    PadicSeries truncated(std::size_t L) const;

private:
    long p_ = 0;
    std::vector<Padic> coeffs_;
    TailBound tail_;
};

PadicSeries operator+(const PadicSeries& a, const PadicSeries& b);
PadicSeries scale(const Padic& c, const PadicSeries& f);

/// F(t) = sum a_n t^(n+1)/(n+1); tail (b, s, l) becomes (b - s, s, l + 1).
PadicSeries series_antiderivative(const PadicSeries& f);
PadicSeries series_derivative(const PadicSeries& f);
/// Evaluates at t with v(t) >= 0; the tail enters the result precision.
Padic evaluate(const PadicSeries& f, const Padic& t);

struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices;
};

/// Lower convex hull of (n, lower bound of v(a_n)) over the listed nonzero coefficients.
NewtonPolygon newton_polygon(const PadicSeries& f);
NewtonPolygon lower_hull(const std::vector<std::pair<long, long>>& points);

enum class Domain { Zp, pZp };

struct StrassmannVerdict {
    enum class Kind { Exact, AtMost, Inconclusive };
    Kind kind = Kind::Inconclusive;
    long count = 0;
    bool zero_at_origin = false;
    std::string reason;

    std::string to_string() const;
};

StrassmannVerdict strassmann_zero_count(const PadicSeries& f, Domain domain);

/// Zeros in pZ_p of a series whose reduced derivative has order m.
long newton_bound_mplus1(long m, long p);

}  // namespace affchab
