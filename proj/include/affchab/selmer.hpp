#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "affchab/dintersect.hpp"
#include "affchab/modeldata.hpp"

namespace affchab {

struct TypeChoice {
    std::string id;
    bool cuspidal = false;
    bool operator==(const TypeChoice&) const = default;
};

/// Per-fibre choices, keyed by fibre label; good primes outside S are implicit.
struct ReductionType {
    std::map<std::string, TypeChoice> choice;
    std::set<long> S;

    long cuspidal_count() const;
    std::vector<std::string> cuspidal_set() const;
    std::string to_string() const;
};

/// Per-fibre options: components with a smooth point, plus smooth cusp points
/// when the prime is in S. With `prune`, components carrying a smooth cusp
/// point are dropped at primes in S (covered by the cusp types).
std::vector<TypeChoice> reduction_options(const FibreData& fibre, bool in_S, bool prune);

std::vector<ReductionType> enumerate_reduction_types(const std::vector<FibreData>& fibres, const std::set<long>& S,
                                                     bool prune = false);
/// prod_{l in S}(n_l + #(X^sm cap D)(F_l)) * prod_{l not in S} n_l over the fibres.
long unpruned_type_count(const std::vector<FibreData>& fibres, const std::set<long>& S);

long ker_sigma_rank(const NumberFieldInvariants& inv);
long selmer_rank(const NumberFieldInvariants& inv, long c_sigma);

struct Inequality {
    long lhs = 0;
    long rhs = 0;
    bool strict = true;
    bool holds() const { return strict ? lhs < rhs : lhs <= rhs; }
    std::string to_string() const;
};

/// r + #C + (d-1) n < g + u + #|D| + n2 - 1
Inequality chabauty_inequality(const NumberFieldInvariants& inv, long c_sigma);
bool chabauty_condition(const NumberFieldInvariants& inv, long c_sigma);
/// K = Q forms: r + #S < g + #|D| + n2 - 1 and r + #C < g + #|D| + n2 - 1.
Inequality condition_1_1(const NumberFieldInvariants& inv, long num_S);
Inequality condition_1_2(const NumberFieldInvariants& inv, long c_sigma);
/// r + #C <= d (g - 2) + n2 + #|D| + u
Inequality ros_inequality(const NumberFieldInvariants& inv, long c_sigma);
bool ros_condition(const NumberFieldInvariants& inv, long c_sigma);

using GlobalConstraintSet = std::map<std::string, LocalConstraintSet>;

struct SelmerReport {
    long rank = 0;
    long c_sigma = 0;
    GlobalConstraintSet constraints;
};

/// Base point data per fibre label; fibres without an entry use their own base_point.
SelmerReport selmer_set_rank_report(const std::vector<FibreData>& fibres,
                                    const std::map<std::string, BasePointData>& base, const ReductionType& sigma,
                                    const NumberFieldInvariants& inv);

/// Groups reduction types whose global constraint sets coincide.
std::vector<std::vector<std::size_t>> constraint_classes(const std::vector<FibreData>& fibres,
                                                         const std::map<std::string, BasePointData>& base,
                                                         const std::vector<ReductionType>& types);

}  // namespace affchab
