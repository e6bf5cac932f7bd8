#include "affchab/dintersect.hpp"

#include "affchab/error.hpp"

namespace affchab {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_int(const std::vector<std::vector<long>>& v) {
    std::size_t r = v.size();
    std::size_t c = r ? v[0].size() : 0;
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) m(i, j) = v[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorKind::HypothesisViolated, "matrix dimensions do not match");
    RationalMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpq_class& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    }
    return r;
}

RationalMatrix RationalMatrix::operator-() const {
    RationalMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RationalMatrix RationalMatrix::rref(std::vector<std::size_t>* pivots) const {
    RationalMatrix m = *this;
    std::size_t r = 0;
    if (pivots) pivots->clear();
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = r;
        while (piv < rows_ && m(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r) {
            for (std::size_t k = 0; k < cols_; ++k) std::swap(m(piv, k), m(r, k));
        }
        mpq_class inv = 1 / m(r, c);
        for (std::size_t k = 0; k < cols_; ++k) m(r, k) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || m(i, c) == 0) continue;
            mpq_class f = m(i, c);
            for (std::size_t k = 0; k < cols_; ++k) m(i, k) -= f * m(r, k);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return m;
}

std::size_t RationalMatrix::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

RationalMatrix RationalMatrix::inverse() const {
    if (rows_ != cols_) throw Error(ErrorKind::HypothesisViolated, "inverse of a non-square matrix");
    std::size_t n = rows_;
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    RationalMatrix red = aug.rref(&piv);
    if (piv.size() < n || piv[n - 1] != n - 1) throw Error(ErrorKind::DivisionByZero, "matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
    }
    return inv;
}

RationalVector operator*(const RationalMatrix& m, const RationalVector& v) {
    if (m.cols() != v.size()) throw Error(ErrorKind::HypothesisViolated, "matrix-vector dimensions do not match");
    RationalVector r(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    }
    return r;
}

RationalMatrix moore_penrose(const RationalMatrix& A) {
    std::vector<std::size_t> piv;
    RationalMatrix R = A.rref(&piv);
    std::size_t r = piv.size();
    if (r == 0) return RationalMatrix(A.cols(), A.rows());
    RationalMatrix C(r, A.cols());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = R(i, j);
    }
    RationalMatrix B(A.rows(), r);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t k = 0; k < r; ++k) B(i, k) = A(i, piv[k]);
    }
    RationalMatrix Ct = C.transpose();
    RationalMatrix Bt = B.transpose();
    return Ct * (C * Ct).inverse() * (Bt * B).inverse() * Bt;
}

GeneralisedInverse generalised_inverse(const RationalMatrix& M) {
    if (!(M == M.transpose())) throw Error(ErrorKind::HypothesisViolated, "intersection matrix must be symmetric");
    GeneralisedInverse g;
    g.L = moore_penrose(-M);
    mpz_class den = 1;
    for (std::size_t i = 0; i < g.L.rows(); ++i) {
        for (std::size_t j = 0; j < g.L.cols(); ++j) {
            mpz_class d = g.L(i, j).get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
    }
    g.denominator = den;
    return g;
}

bool VElement::is_zero() const {
    for (const auto& c : coeffs) {
        if (c != 0) return false;
    }
    return true;
}

VElement canonical_class(const FibreData& fibre, const CuspCycle& c) {
    if (c.coeffs.size() != fibre.dtilde_points.size()) {
        throw Error(ErrorKind::HypothesisViolated, "cycle length differs from the number of dtilde points");
    }
    VElement v{c.coeffs};
    if (v.coeffs.empty()) return v;
    mpq_class k = v.coeffs[0] / fibre.dtilde_points[0].ramification_index;
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) v.coeffs[i] -= k * fibre.dtilde_points[i].ramification_index;
    return v;
}

VElement operator+(const VElement& a, const VElement& b) {
    VElement r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
}

VElement operator-(const VElement& a, const VElement& b) {
    VElement r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    return r;
}

VElement operator*(const mpq_class& k, const VElement& a) {
    VElement r = a;
    for (auto& c : r.coeffs) c *= k;
    return r;
}

CuspCycle cusp_cycle_from(const FibreData& fibre, const CuspCycleInt& c) {
    CuspCycle out{RationalVector(fibre.dtilde_points.size(), 0)};
    for (const auto& [pt, v] : c) {
        long i = fibre.point_index(pt);
        if (i < 0) throw Error(ErrorKind::UnknownPoint, pt);
        out.coeffs[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

std::string to_string(const FibreData& fibre, const VElement& v) {
    std::string s;
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
        if (v.coeffs[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += v.coeffs[i].get_str() + "[" + fibre.dtilde_points[i].id + "]";
    }
    return s.empty() ? "0" : s;
}

VerticalQDivisor compute_phi(const FibreData& fibre, const RationalVector& E, const GeneralisedInverse& L) {
    if (E.size() != fibre.components.size()) {
        throw Error(ErrorKind::HypothesisViolated, "vertical divisor length differs from the number of components");
    }
    mpq_class deg = 0;
    for (std::size_t i = 0; i < E.size(); ++i) deg += fibre.components[i].multiplicity * E[i];
    if (deg != 0) throw Error(ErrorKind::DegreeNonZero, "sum of m_V E_V is " + deg.get_str());
    return {L.L * E};
}

VerticalQDivisor compute_phi(const FibreData& fibre, const RationalVector& E) {
    return compute_phi(fibre, E, generalised_inverse(RationalMatrix::from_int(fibre.intersection_matrix)));
}

VElement phi_dot_dtilde(const FibreData& fibre, const VerticalQDivisor& phi) {
    CuspCycle c{RationalVector(fibre.dtilde_points.size(), 0)};
    for (std::size_t v = 0; v < fibre.components.size(); ++v) {
        if (phi.coeffs[v] == 0) continue;
        for (std::size_t x = 0; x < fibre.dtilde_points.size(); ++x) {
            long i = fibre.cycle_entry(fibre.components[v].id, fibre.dtilde_points[x].id);
            if (i != 0) c.coeffs[x] += phi.coeffs[v] * i;
        }
    }
    return canonical_class(fibre, c);
}

CuspCycle sigma_principal(const FibreData& fibre, const std::map<std::string, long>& valuations) {
    return cusp_cycle_from(fibre, valuations);
}

namespace {

bool in_line(const VElement& v, const VElement& base, const VElement& dir) {
    VElement diff = v - base;
    if (dir.is_zero()) return diff.is_zero();
    std::size_t i = 0;
    while (dir.coeffs[i] == 0) ++i;
    mpq_class k = diff.coeffs[i] / dir.coeffs[i];
    if (k.get_den() != 1) return false;
    return diff == k * dir;
}

}  // namespace

bool constraint_subset(const LocalConstraintSet& a, const LocalConstraintSet& b) {
    using K = LocalConstraintSet::Kind;
    if (a.kind == K::Point && b.kind == K::Point) return a.base == b.base;
    if (a.kind == K::Point) return in_line(a.base, b.base, b.direction);
    if (b.kind == K::Point) return a.direction.is_zero() && a.base == b.base;
    VElement zero{RationalVector(a.base.coeffs.size(), 0)};
    return in_line(a.base, b.base, b.direction) && in_line(a.direction, zero, b.direction);
}

bool LocalConstraintSet::operator==(const LocalConstraintSet& o) const {
    return constraint_subset(*this, o) && constraint_subset(o, *this);
}

std::string LocalConstraintSet::to_string(const FibreData& fibre) const {
    if (kind == Kind::Point) return "{" + affchab::to_string(fibre, base) + "}";
    return affchab::to_string(fibre, base) + " + Z*(" + affchab::to_string(fibre, direction) + ")";
}

LocalConstraintSet local_constraint_set(const FibreData& fibre, const BasePointData& base, const std::string& type) {
    long b = fibre.component_index(base.component);
    if (b < 0) throw Error(ErrorKind::InvalidType, "base point component " + base.component + " unknown");
    GeneralisedInverse L = generalised_inverse(RationalMatrix::from_int(fibre.intersection_matrix));
    VElement p0 = canonical_class(fibre, cusp_cycle_from(fibre, base.cusp_cycle));
    auto correction = [&](long target) {
        RationalVector E(fibre.components.size(), 0);
        E[static_cast<std::size_t>(target)] += 1;
        E[static_cast<std::size_t>(b)] -= 1;
        return phi_dot_dtilde(fibre, compute_phi(fibre, E, L));
    };
    LocalConstraintSet out;
    long c = fibre.component_index(type);
    if (c >= 0) {
        if (!fibre.components[static_cast<std::size_t>(c)].has_smooth_point) {
            throw Error(ErrorKind::InvalidType, "component " + type + " has no smooth point");
        }
        out.kind = LocalConstraintSet::Kind::Point;
        out.base = correction(c) - p0;
        return out;
    }
    bool listed = false;
    for (const auto& s : fibre.smooth_cusp_points) listed = listed || s == type;
    if (!listed) throw Error(ErrorKind::InvalidType, type + " is neither a component nor a smooth cusp point");
    long cpt = fibre.component_index(fibre.component_of_point(type));
    out.kind = LocalConstraintSet::Kind::Line;
    out.base = correction(cpt) - p0;
    CuspCycleInt unit{{type, 1}};
    out.direction = canonical_class(fibre, cusp_cycle_from(fibre, unit));
    return out;
}

}  // namespace affchab
