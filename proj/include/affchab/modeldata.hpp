#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affchab/hyperell.hpp"
#include "affchab/intpoly.hpp"

namespace affchab {

struct Component {
    std::string id;
    long multiplicity = 1;
    long smooth_noncusp_point_count = 0;
    bool has_smooth_point = true;
};

struct DtildePoint {
    std::string id;
    std::string cusp;
    long residue_degree = 1;
    long ramification_index = 1;
    // Point of the special fibre under this point of D~; distinct points of
    // D~ sharing it mark cusp closures that meet. Defaults to id.
    std::string fibre_point;
};

using CuspCycleInt = std::map<std::string, long>;

struct BasePointData {
    std::string component;
    CuspCycleInt cusp_cycle;
};

struct FibreData {
    std::string label;  // defaults to the prime
    long prime = 0;
    long residue_field_size = 0;
    std::vector<Component> components;
    std::vector<std::vector<long>> intersection_matrix;
    std::vector<DtildePoint> dtilde_points;
    std::map<std::string, CuspCycleInt> component_cusp_cycles;
    std::vector<std::string> smooth_cusp_points;
    std::optional<BasePointData> base_point;

    long component_index(const std::string& id) const;  // -1 if absent
    long point_index(const std::string& id) const;      // -1 if absent
    long cycle_entry(const std::string& component, const std::string& point) const;
    /// Components carrying a smooth point of the fibre (n_l).
    long num_smooth_components() const;
    /// Components meeting the cusp closure.
    std::vector<std::string> components_meeting_d() const;
    /// The unique component through a smooth cusp point.
    std::string component_of_point(const std::string& point) const;
};

struct NumberFieldInvariants {
    long degree = 1;     // [K:Q]
    long unit_rank = 0;  // rank O_K^x
    long n = 2;          // geometric cusps
    long num_cusp_points = 2;  // #|D|
    long n1 = 2;
    long n2 = 0;
    long rank = 0;  // Mordell-Weil rank r
    long genus = 1;

    void validate() const;
};

/// Parses and validates a fibre file; throws ParseError or InvariantViolation.
FibreData parse_fibre_file(const std::string& bytes);
/// Canonical serialisation: sorted keys, two-space indent.
std::string serialize_fibre(const FibreData& fibre);
/// Runs every invariant check; throws InvariantViolation.
void validate_fibre(const FibreData& fibre);

/// Whether the fibre point carrying `point` is D-transversal: one component of
/// multiplicity one, total intersection one.
bool is_d_transversal_at(const FibreData& fibre, const std::string& point);
/// True iff every F_q-rational cusp point on the smooth locus is D-transversal.
bool check_d_transversal(const FibreData& fibre);
/// Rational smooth-locus cusp points that pass the transversality test.
std::vector<std::string> transversal_points(const FibreData& fibre);

FibreData good_reduction_fibre(const HyperellipticCurve& curve, long q);

struct LiuReport {
    bool pass = false;
    std::vector<long> odd_primes;                 // odd primes dividing disc(f)
    std::vector<long> square_mod;                 // those at which f mod l is a square
    bool odd_subleading = false;                  // f_(2g+1) odd
    std::optional<IntPoly> Q;                     // f = 4P + Q^2
    std::optional<IntPoly> P;
    bool no_root_over_f2 = false;
    std::string failure;
};

LiuReport liu_star_checks(const IntPoly& f);

}  // namespace affchab
