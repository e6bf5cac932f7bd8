#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "affchab/hyperell.hpp"
#include "affchab/modeldata.hpp"
#include "affchab/padic.hpp"

namespace affchab {

/// Rows indexed by points P_i, columns by basis differentials omega_j.
struct PeriodMatrix {
    long prime = 0;
    long precision = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Padic>> rows;

    std::size_t num_rows() const { return rows.size(); }
    std::size_t num_cols() const { return rows.empty() ? 0 : rows.front().size(); }
};

/// Parses {prime, precision, basis_size, rows: [{point_label, values}]}.
PeriodMatrix parse_period_fixture(const std::string& bytes);

struct Annihilator {
    LogDifferential omega;
    std::vector<LogDifferential> kernel_basis;
    bool rank_deficient = false;
    long certified_precision = 0;  // min over rows of v(residual) lower bound
};

/// Kernel of the period matrix by p-adic elimination, pivoting on the entry
/// of least valuation. omega is normalised so its first nonzero coefficient is 1.
Annihilator annihilating_differential(const PeriodMatrix& periods);
/// Cofactor vector of a 2 x 3 period matrix: rho(P) = det(row(P); row_1; row_2).
LogDifferential cofactor_differential(const PeriodMatrix& periods);

struct ChabautyFunction {
    LogDifferential omega;
    Padic constant;
    long prime = 0;
};

/// Antiderivative of the disc expansion of omega, plus base - c.
PadicSeries rho_series_on_disc(const HyperellipticCurve& curve, const ChabautyFunction& fn, const ResidueDisc& disc,
                               const Padic& base, long N);

/// Supplied data for the exact route on one disc.
struct DiscConstant {
    std::optional<mpz_class> centre_x;
    Padic base;  // integral of omega from P0 to the centre
};

struct DiscVerdict {
    long x = 0;
    long y = 0;
    bool exact_route = false;
    long order = 0;  // order of the reduced omega at the point
    StrassmannVerdict verdict;
};

struct SweepReport {
    std::vector<DiscVerdict> discs;
    long total = 0;
    bool all_exact = false;
    bool any_inconclusive = false;
    long n_C = 0;
    long point_count = 0;
    long bound = 0;  // point_count + n_C
};

using DiscKey = std::pair<long, long>;

/// Alpha coefficients plus per-disc centres and base values.
struct AlphaFixture {
    long prime = 0;
    long precision = 0;
    LogDifferential omega;
    Padic constant;
    std::map<DiscKey, DiscConstant> discs;
};

AlphaFixture parse_alpha_fixture(const std::string& bytes);
/// Reduces every alpha and base value to O(p^k).
AlphaFixture truncate_fixture(const AlphaFixture& fx, long k);

SweepReport strassmann_sweep(const HyperellipticCurve& curve, const ChabautyFunction& fn, long p, long precision,
                             const std::map<DiscKey, DiscConstant>& constants);

long bound_thm61(const HyperellipticCurve& curve, long p, long rank);

/// #Y^sm_p(F_p) summed over the components of the p-fibre.
long smooth_point_count(const FibreData& fibre_at_p);

struct BoundInputs {
    std::vector<FibreData> fibres;  // includes the fibre at p
    long p = 0;
    NumberFieldInvariants inv;
    std::set<long> S;
};

/// n'_l: components with a smooth point but none on D (at l in S), else n_l.
long n_prime(const FibreData& fibre, bool in_S);
std::vector<std::string> t_set(const std::vector<FibreData>& fibres, long p);

long bound_general(const BoundInputs& in, bool prune = false);
long bound_improved(const BoundInputs& in);
long bound_fixed_type(const FibreData& fibre_at_p, const std::string& component, const NumberFieldInvariants& inv,
                      long p, long c_sigma = 0);

}  // namespace affchab
