#pragma once

// Shared fixture loaders and random fibre generators.

#include <random>
#include <string>
#include <vector>

#include "affchab/modeldata.hpp"
#include "oracles.hpp"

#ifndef AFFCHAB_DATA_DIR
#define AFFCHAB_DATA_DIR "data"
#endif

namespace fixture {

inline std::string path(const std::string& name) { return std::string(AFFCHAB_DATA_DIR) + "/" + name; }

inline affchab::FibreData fibre(const std::string& name) {
    return affchab::parse_fibre_file(oracle::slurp(path(name)));
}

inline std::vector<affchab::FibreData> cubic_fibres(const std::vector<long>& primes) {
    std::vector<affchab::FibreData> out;
    for (long l : primes) out.push_back(fibre("cubic_fibre_" + std::to_string(l) + ".json"));
    return out;
}

/// Random fibre with n components, corank-1 intersection matrix.
/// M_VW = w m_V m_W off the diagonal and M_VV = -sum_W w_VW m_W^2, on a
/// connected graph, so M is negative semidefinite with kernel Q*m.
inline affchab::FibreData random_corank1_fibre(std::mt19937_64& g, std::size_t n, long q = 5) {
    affchab::FibreData f;
    f.prime = q;
    f.residue_field_size = q;
    f.label = std::to_string(q);
    std::vector<long> m(n, 1);
    for (std::size_t i = 1; i < n; ++i) m[i] = (g() % 3 == 0) ? 2 + static_cast<long>(g() % 2) : 1;
    for (std::size_t i = 0; i < n; ++i) {
        affchab::Component c;
        c.id = "V" + std::to_string(i);
        c.multiplicity = m[i];
        c.has_smooth_point = m[i] == 1;
        c.smooth_noncusp_point_count = c.has_smooth_point ? static_cast<long>(g() % 4) : 0;
        f.components.push_back(c);
    }
    std::vector<std::vector<long>> w(n, std::vector<long>(n, 0));
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t j = g() % i;
        w[i][j] = w[j][i] = 1 + static_cast<long>(g() % 2);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w[i][j] == 0 && g() % 4 == 0) w[i][j] = w[j][i] = 1;
        }
    }
    f.intersection_matrix.assign(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        long d = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            f.intersection_matrix[i][j] = w[i][j] * m[i] * m[j];
            d += w[i][j] * m[j] * m[j];
        }
        f.intersection_matrix[i][i] = -d;
    }
    // At least two cusp points so that V_{D,q} is nonzero.
    std::size_t npts = 2 + g() % 3;
    for (std::size_t k = 0; k < npts; ++k) {
        std::size_t v = (k == 0) ? 0 : g() % n;
        affchab::DtildePoint x;
        x.id = "x" + std::to_string(k);
        x.cusp = "Q" + std::to_string(k % 2);
        x.fibre_point = x.id;
        x.residue_degree = (k > 1 && g() % 4 == 0) ? 2 : 1;
        x.ramification_index = m[v];
        f.dtilde_points.push_back(x);
        f.component_cusp_cycles[f.components[v].id][x.id] = 1;
        if (m[v] == 1 && x.residue_degree == 1) f.smooth_cusp_points.push_back(x.id);
    }
    f.base_point = affchab::BasePointData{"V0", {}};
    return f;
}

inline std::vector<mpz_class> to_mpz(const std::vector<long>& v) { return {v.begin(), v.end()}; }

}  // namespace fixture
