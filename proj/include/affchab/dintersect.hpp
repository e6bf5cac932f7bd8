#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "affchab/modeldata.hpp"

namespace affchab {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_int(const std::vector<std::vector<long>>& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpq_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator-() const;
    bool operator==(const RationalMatrix& o) const;

    /// Reduced row echelon form and its pivot columns.
    RationalMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;
    /// Inverse of a nonsingular square matrix.
    RationalMatrix inverse() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpq_class> a_;
};

using RationalVector = std::vector<mpq_class>;

RationalVector operator*(const RationalMatrix& m, const RationalVector& v);

/// Moore-Penrose inverse over Q via a full-rank factorisation.
RationalMatrix moore_penrose(const RationalMatrix& A);

struct GeneralisedInverse {
    RationalMatrix L;           // L+ with (-M) L+ (-M) = -M
    mpz_class denominator = 1;  // least common denominator of the entries
};

GeneralisedInverse generalised_inverse(const RationalMatrix& M);

/// Vertical Q-divisor: coefficients indexed like fibre.components.
struct VerticalQDivisor {
    RationalVector coeffs;
};

/// Zero-cycle on D~ indexed like fibre.dtilde_points.
struct CuspCycle {
    RationalVector coeffs;
};

/// Class in V_{D,q}, canonical: coefficient at the first dtilde point is 0.
struct VElement {
    RationalVector coeffs;
    bool operator==(const VElement& o) const { return coeffs == o.coeffs; }
    bool is_zero() const;
};

VElement canonical_class(const FibreData& fibre, const CuspCycle& c);
VElement operator+(const VElement& a, const VElement& b);
VElement operator-(const VElement& a, const VElement& b);
VElement operator*(const mpq_class& k, const VElement& a);
CuspCycle cusp_cycle_from(const FibreData& fibre, const CuspCycleInt& c);
std::string to_string(const FibreData& fibre, const VElement& v);

/// Phi(E) = L+ E for E of degree zero (sum m_V E_V = 0); M Phi(E) = -E.
VerticalQDivisor compute_phi(const FibreData& fibre, const RationalVector& E);
VerticalQDivisor compute_phi(const FibreData& fibre, const RationalVector& E, const GeneralisedInverse& L);
/// sum_V Phi_V (V.D~) as a class in V_{D,q}.
VElement phi_dot_dtilde(const FibreData& fibre, const VerticalQDivisor& phi);

/// sigma of a principal divisor div(f) from ord_x(f(Q)) at the dtilde points.
CuspCycle sigma_principal(const FibreData& fibre, const std::map<std::string, long>& valuations);

struct LocalConstraintSet {
    enum class Kind { Point, Line };
    Kind kind = Kind::Point;
    VElement base;
    VElement direction;  // Line only

    bool operator==(const LocalConstraintSet& o) const;
    std::string to_string(const FibreData& fibre) const;
};

/// S_q(P0, Sigma) for Sigma a component id or a smooth cusp point id.
LocalConstraintSet local_constraint_set(const FibreData& fibre, const BasePointData& base, const std::string& type);

bool constraint_subset(const LocalConstraintSet& a, const LocalConstraintSet& b);

}  // namespace affchab
