#include "affchab/selmer.hpp"

#include "affchab/error.hpp"

namespace affchab {

long ReductionType::cuspidal_count() const {
    long c = 0;
    for (const auto& [label, ch] : choice) c += ch.cuspidal ? 1 : 0;
    return c;
}

std::vector<std::string> ReductionType::cuspidal_set() const {
    std::vector<std::string> out;
    for (const auto& [label, ch] : choice) {
        if (ch.cuspidal) out.push_back(label);
    }
    return out;
}

std::string ReductionType::to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [label, ch] : choice) {
        if (!first) s += ", ";
        first = false;
        s += label + ":" + ch.id + (ch.cuspidal ? "*" : "");
    }
    return s + "}";
}

std::vector<TypeChoice> reduction_options(const FibreData& fibre, bool in_S, bool prune) {
    std::set<std::string> covered;
    if (in_S && prune) {
        for (const auto& x : fibre.smooth_cusp_points) covered.insert(fibre.component_of_point(x));
    }
    std::vector<TypeChoice> out;
    for (const auto& c : fibre.components) {
        if (c.has_smooth_point && !covered.count(c.id)) out.push_back({c.id, false});
    }
    if (in_S) {
        for (const auto& x : fibre.smooth_cusp_points) out.push_back({x, true});
    }
    return out;
}

std::vector<ReductionType> enumerate_reduction_types(const std::vector<FibreData>& fibres, const std::set<long>& S,
                                                     bool prune) {
    for (long q : S) {
        bool found = false;
        for (const auto& f : fibres) found = found || f.prime == q;
        if (!found) throw Error(ErrorKind::MissingFibre, "no fibre supplied for prime " + std::to_string(q) + " in S");
    }
    std::vector<ReductionType> types(1);
    for (auto& t : types) t.S = S;
    for (const auto& f : fibres) {
        auto opts = reduction_options(f, S.count(f.prime) > 0, prune);
        std::vector<ReductionType> next;
        next.reserve(types.size() * opts.size());
        for (const auto& t : types) {
            for (const auto& o : opts) {
                ReductionType u = t;
                u.choice[f.label] = o;
                next.push_back(std::move(u));
            }
        }
        types = std::move(next);
    }
    return types;
}

long unpruned_type_count(const std::vector<FibreData>& fibres, const std::set<long>& S) {
    long total = 1;
    for (const auto& f : fibres) {
        long n = f.num_smooth_components();
        if (S.count(f.prime)) n += static_cast<long>(f.smooth_cusp_points.size());
        total *= n;
    }
    return total;
}

long ker_sigma_rank(const NumberFieldInvariants& inv) {
    return inv.n1 + inv.n2 - inv.num_cusp_points - inv.unit_rank + inv.rank;
}

long selmer_rank(const NumberFieldInvariants& inv, long c_sigma) {
    if (inv.num_cusp_points == 1 && inv.n == 1) {
        throw Error(ErrorKind::SingleRationalCusp, "D is a single rational point; use classical Chabauty (r < g)");
    }
    return ker_sigma_rank(inv) + c_sigma;
}

std::string Inequality::to_string() const {
    return std::to_string(lhs) + (strict ? " < " : " <= ") + std::to_string(rhs);
}

Inequality chabauty_inequality(const NumberFieldInvariants& inv, long c_sigma) {
    return {inv.rank + c_sigma + (inv.degree - 1) * inv.n,
            inv.genus + inv.unit_rank + inv.num_cusp_points + inv.n2 - 1, true};
}

bool chabauty_condition(const NumberFieldInvariants& inv, long c_sigma) {
    return chabauty_inequality(inv, c_sigma).holds();
}

Inequality condition_1_1(const NumberFieldInvariants& inv, long num_S) {
    return {inv.rank + num_S, inv.genus + inv.num_cusp_points + inv.n2 - 1, true};
}

Inequality condition_1_2(const NumberFieldInvariants& inv, long c_sigma) {
    return {inv.rank + c_sigma, inv.genus + inv.num_cusp_points + inv.n2 - 1, true};
}

Inequality ros_inequality(const NumberFieldInvariants& inv, long c_sigma) {
    return {inv.rank + c_sigma, inv.degree * (inv.genus - 2) + inv.n2 + inv.num_cusp_points + inv.unit_rank, false};
}

bool ros_condition(const NumberFieldInvariants& inv, long c_sigma) { return ros_inequality(inv, c_sigma).holds(); }

namespace {

const BasePointData& base_for(const FibreData& f, const std::map<std::string, BasePointData>& base) {
    auto it = base.find(f.label);
    if (it != base.end()) return it->second;
    if (f.base_point) return *f.base_point;
    throw Error(ErrorKind::MissingFibre, "no base point data for fibre " + f.label);
}

GlobalConstraintSet global_constraints(const std::vector<FibreData>& fibres,
                                       const std::map<std::string, BasePointData>& base, const ReductionType& sigma) {
    GlobalConstraintSet out;
    for (const auto& f : fibres) {
        auto it = sigma.choice.find(f.label);
        if (it == sigma.choice.end()) throw Error(ErrorKind::MissingFibre, "reduction type lacks fibre " + f.label);
        out[f.label] = local_constraint_set(f, base_for(f, base), it->second.id);
    }
    return out;
}

}  // namespace

SelmerReport selmer_set_rank_report(const std::vector<FibreData>& fibres,
                                    const std::map<std::string, BasePointData>& base, const ReductionType& sigma,
                                    const NumberFieldInvariants& inv) {
    SelmerReport r;
    r.c_sigma = sigma.cuspidal_count();
    r.rank = selmer_rank(inv, r.c_sigma);
    r.constraints = global_constraints(fibres, base, sigma);
    return r;
}

std::vector<std::vector<std::size_t>> constraint_classes(const std::vector<FibreData>& fibres,
                                                         const std::map<std::string, BasePointData>& base,
                                                         const std::vector<ReductionType>& types) {
    std::vector<GlobalConstraintSet> sets;
    for (const auto& t : types) sets.push_back(global_constraints(fibres, base, t));
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool placed = false;
        for (auto& cls : classes) {
            if (sets[cls.front()] == sets[i]) {
                cls.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({i});
    }
    return classes;
}

}  // namespace affchab
