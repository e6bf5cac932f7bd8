#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "affchab/intpoly.hpp"
#include "affchab/padic.hpp"

namespace affchab {

/// y^2 = f(x) over Q with deg f = 2g + 2 and f squarefree.
struct HyperellipticCurve {
    IntPoly f;
    long genus = 0;

    static HyperellipticCurve from_coefficients(IntPoly f);

    const mpz_class& leading_coefficient() const { return f.back(); }
    long degree() const { return static_cast<long>(f.size()) - 1; }
};

struct CuspInvariants {
    long n = 0;           // geometric number of cusps
    long num_points = 0;  // #|D|, closed points
    long n1 = 0;
    long n2 = 0;
};

CuspInvariants cusp_invariants(const HyperellipticCurve& curve);

/// Affine points over F_p, sorted by (x, y).
std::vector<std::pair<long, long>> affine_points_mod(const HyperellipticCurve& curve, long p);
long count_affine_points(const HyperellipticCurve& curve, long p);

struct ResidueDisc {
    enum class Kind { NonWeierstrass, Weierstrass };

    long p = 0;
    long xbar = 0;
    long ybar = 0;
    Kind kind = Kind::NonWeierstrass;
    long precision = 0;  // working precision M
    Padic x0;            // centre of the disc in Z_p
    Padic y0;
};

/// Disc over the smooth F_p point (xbar, ybar). Non-Weierstrass discs are
/// centred at x = centre_x (default: xbar) with y seeded by ybar; Weierstrass
/// discs at the Hensel lift of the root of f with y = 0.
ResidueDisc make_disc(const HyperellipticCurve& curve, long p, long xbar, long ybar, long precision,
                      std::optional<mpz_class> centre_x = std::nullopt);

/// Expansion of x^j dx/y in the unscaled local parameter (x - x0 or y),
/// coefficients modulo p^M.
std::vector<mpz_class> unscaled_expansion(const HyperellipticCurve& curve, const ResidueDisc& disc, long j, long N);

/// Expansion of x^j dx/y in t, where x = x0 + p t or y = p t.
PadicSeries disc_expand_differential(const HyperellipticCurve& curve, const ResidueDisc& disc, long j, long N);

/// omega = sum_j alpha_j x^j dx/y, j = 0..g.
struct LogDifferential {
    std::vector<Padic> alpha;
};

inline long log_differential_dimension(long genus, long n_cusps) { return genus + n_cusps - 1; }

PadicSeries disc_expand(const HyperellipticCurve& curve, const ResidueDisc& disc, const LogDifferential& omega,
                        long N);

struct PadicPoint {
    Padic x;
    Padic y;
};

/// Disc parameter t of a point in the disc.
Padic disc_parameter(const ResidueDisc& disc, const PadicPoint& P);

/// Integral of omega from P to Q inside one residue disc.
Padic tiny_integral(const HyperellipticCurve& curve, const LogDifferential& omega, const PadicPoint& P,
                    const PadicPoint& Q, long precision, std::optional<mpz_class> centre_x = std::nullopt);

/// dz/z on the disc of the unit a, z = a + p t.
PadicSeries gm_disc_expansion(const Padic& a, long N);
Padic gm_tiny_integral(const Padic& a, const Padic& b);

struct PointOrder {
    long x = 0;
    long y = 0;
    long order = 0;
};

struct ReductionOrders {
    std::vector<PointOrder> points;
    long n_C = 0;
    std::vector<long> reduced_alpha;  // alpha scaled to minimal valuation 0, mod p
};

/// Orders of the reduction of omega at every smooth affine F_p point, read
/// from the mod-p disc expansions.
ReductionOrders reduce_and_order(const HyperellipticCurve& curve, const LogDifferential& omega, long p);
/// Same orders from root multiplicities of sum alpha_j x^j mod p.
ReductionOrders reduce_and_order_algebraic(const HyperellipticCurve& curve, const LogDifferential& omega, long p);

/// Residues of sum alpha_j x^j dx/y at infinity+ and infinity-; needs lc(f) a square.
std::pair<mpq_class, mpq_class> residues_at_infinity(const HyperellipticCurve& curve,
                                                     const std::vector<mpq_class>& alpha);

struct RationalPoint {
    mpq_class x;
    mpq_class y;
    bool operator==(const RationalPoint&) const = default;
};

/// S-integral points with numerator and denominator of x bounded by H.
std::vector<RationalPoint> brute_force_integral_points(const HyperellipticCurve& curve, long H,
                                                       const std::vector<long>& S = {});

}  // namespace affchab
