#include <doctest.h>

#include "affchab/error.hpp"
#include "affchab/selmer.hpp"
#include "fixtures.hpp"

using namespace affchab;

namespace {

NumberFieldInvariants zeta3_inv() {
    NumberFieldInvariants k;
    k.degree = 2;
    k.unit_rank = 0;
    k.n = 2;
    k.num_cusp_points = 2;
    k.n1 = 0;
    k.n2 = 2;
    k.rank = 2;
    k.genus = 2;
    return k;
}

NumberFieldInvariants cubic_inv() {
    NumberFieldInvariants k;
    k.n = 3;
    k.num_cusp_points = 2;
    k.n1 = 1;
    k.n2 = 1;
    k.rank = 1;
    k.genus = 1;
    return k;
}

NumberFieldInvariants rational(long g, long n1, long n2, long pts, long r) {
    NumberFieldInvariants k;
    k.genus = g;
    k.n1 = n1;
    k.n2 = n2;
    k.n = n1 + 2 * n2;
    k.num_cusp_points = pts;
    k.rank = r;
    return k;
}

long expected_count(const std::vector<FibreData>& fibres, const std::set<long>& S) {
    long total = 1;
    for (const auto& f : fibres) {
        long n = 0;
        for (const auto& c : f.components) n += c.has_smooth_point ? 1 : 0;
        total *= S.count(f.prime) ? n + static_cast<long>(f.smooth_cusp_points.size()) : n;
    }
    return total;
}

}  // namespace

TEST_CASE("kernel and selmer ranks") {
    CHECK(ker_sigma_rank(zeta3_inv()) == 2);
    CHECK(ker_sigma_rank(cubic_inv()) == 1);
    CHECK(ker_sigma_rank(rational(1, 1, 0, 1, 0)) == 0);
    CHECK(selmer_rank(zeta3_inv(), 0) == 2);
    CHECK(selmer_rank(cubic_inv(), 1) == 2);
    CHECK(selmer_rank(rational(1, 2, 0, 2, 0), 0) == 0);
    CHECK_THROWS_WITH_AS(selmer_rank(rational(1, 1, 0, 1, 0), 0), doctest::Contains("SingleRationalCusp"), Error);
    std::mt19937_64 g(3);
    for (int i = 0; i < 500; ++i) {
        auto k = rational(1 + g() % 4, 1 + g() % 3, g() % 3, 2 + g() % 2, g() % 6);
        long c = static_cast<long>(g() % 4);
        CHECK(selmer_rank(k, c) - ker_sigma_rank(k) == c);
    }
}

TEST_CASE("chabauty and ROS conditions") {
    Inequality z = chabauty_inequality(zeta3_inv(), 0);
    CHECK(z.lhs == 4);
    CHECK(z.rhs == 5);
    CHECK(z.holds());
    CHECK(z.to_string() == "4 < 5");
    Inequality e = chabauty_inequality(cubic_inv(), 1);
    CHECK(e.lhs == 2);
    CHECK(e.rhs == 3);
    CHECK(condition_1_1(cubic_inv(), 1).holds());
    CHECK(condition_1_2(cubic_inv(), 1).holds());
    auto huge = cubic_inv();
    huge.rank = 100;
    CHECK_FALSE(chabauty_condition(huge, 0));

    CHECK(ros_condition(rational(2, 2, 0, 2, 0), 0));
    Inequality ros = ros_inequality(rational(2, 2, 0, 2, 0), 0);
    CHECK(ros.to_string() == "0 <= 2");
    NumberFieldInvariants tiny = rational(0, 0, 0, 0, 0);
    tiny.rank = 1;
    CHECK_FALSE(ros_condition(tiny, 0));
}

TEST_CASE("ROS over quadratic fields reduces to r <= d g - u") {
    for (long g = 1; g <= 5; ++g) {
        for (long r = 0; r <= 14; ++r) {
            // real quadratic: two real embeddings split both cusps
            NumberFieldInvariants real;
            real.degree = 2;
            real.unit_rank = 1;
            real.genus = g;
            real.n = 2;
            real.n1 = 4;
            real.n2 = 0;
            real.num_cusp_points = 2;
            real.rank = r;
            CHECK(ros_condition(real, 0) == (r <= 2 * g - 1));
            NumberFieldInvariants imag = zeta3_inv();
            imag.genus = g;
            imag.rank = r;
            CHECK(ros_condition(imag, 0) == (r <= 2 * g));
        }
    }
}

TEST_CASE("monotonicity and the rational specialisations") {
    std::mt19937_64 g(5);
    for (int i = 0; i < 1000; ++i) {
        auto k = rational(1 + g() % 4, g() % 3, g() % 3, 1 + g() % 3, g() % 6);
        long c = static_cast<long>(g() % 4);
        if (!chabauty_condition(k, c)) {
            CHECK_FALSE(chabauty_condition(k, c + 1));
            auto more = k;
            more.rank += 1;
            CHECK_FALSE(chabauty_condition(more, c));
        }
        long s = static_cast<long>(g() % 4);
        if (condition_1_1(k, s).holds()) {
            for (long cs = 0; cs <= s; ++cs) CHECK(condition_1_2(k, cs).holds());
        }
        CHECK(chabauty_condition(k, c) == condition_1_2(k, c).holds());
    }
}

TEST_CASE("reduction types for the cubic curve") {
    for (long q : {2L, 5L, 11L}) {
        auto fibres = fixture::cubic_fibres({3, 5 == q ? 3 : 5, q});
        if (q == 5) fibres = fixture::cubic_fibres({3, 5});
        auto types = enumerate_reduction_types(fibres, {q}, true);
        CHECK(types.size() == 1);
        CHECK(types[0].cuspidal_count() == 1);
        CHECK(types[0].cuspidal_set() == std::vector<std::string>{std::to_string(q)});
    }
    for (long q : {13L, 19L}) {
        auto fibres = fixture::cubic_fibres({3, 5, q});
        auto types = enumerate_reduction_types(fibres, {q}, true);
        CHECK(types.size() == 3);
        for (const auto& t : types) CHECK(t.cuspidal_count() == 1);
        auto classes = constraint_classes(fibres, {}, types);
        CHECK(classes.size() == 3);
        auto all = enumerate_reduction_types(fibres, {q}, false);
        CHECK(static_cast<long>(all.size()) == unpruned_type_count(fibres, {q}));
        CHECK(all.size() == 4);
    }
    auto fibres = fixture::cubic_fibres({3, 5});
    CHECK(enumerate_reduction_types(fibres, {}).size() == 1);
    CHECK_THROWS_WITH_AS(enumerate_reduction_types(fibres, {13}), doctest::Contains("MissingFibre"), Error);
    auto t = enumerate_reduction_types(fixture::cubic_fibres({3, 5, 13}), {13}, true)[0];
    CHECK(t.to_string().find("13:") != std::string::npos);
}

TEST_CASE("type count is the product formula") {
    std::mt19937_64 g(11);
    const std::vector<long> primes{3, 5, 11, 13, 17};
    for (int i = 0; i < 100; ++i) {
        std::vector<FibreData> fibres;
        std::set<long> S;
        for (long q : primes) {
            if (g() % 2) continue;
            fibres.push_back(fixture::random_corank1_fibre(g, 1 + g() % 4, q));
            if (g() % 2) S.insert(q);
        }
        long expect = expected_count(fibres, S);
        CHECK(unpruned_type_count(fibres, S) == expect);
        auto types = enumerate_reduction_types(fibres, S);
        CHECK(static_cast<long>(types.size()) == expect);
        for (const auto& t : types) CHECK(t.cuspidal_count() <= static_cast<long>(S.size()));
        CHECK(enumerate_reduction_types(fibres, S, true).size() <= types.size());
    }
}

TEST_CASE("selmer report") {
    auto curve = HyperellipticCurve::from_coefficients({0, 1, 6, 5, 1});
    std::vector<FibreData> good{good_reduction_fibre(curve, 5), good_reduction_fibre(curve, 11)};
    auto types = enumerate_reduction_types(good, {});
    REQUIRE(types.size() == 1);
    auto inv = rational(1, 2, 0, 2, 0);
    SelmerReport r = selmer_set_rank_report(good, {}, types[0], inv);
    CHECK(r.rank == ker_sigma_rank(inv));
    for (const auto& [label, s] : r.constraints) {
        CHECK(s.kind == LocalConstraintSet::Kind::Point);
        CHECK(s.base.is_zero());
    }

    std::vector<FibreData> z{fixture::fibre("zeta3_fibre_1549a.json"), fixture::fibre("zeta3_fibre_1549b.json")};
    auto zt = enumerate_reduction_types(z, {});
    CHECK(constraint_classes(z, {}, zt).size() == 1);
    CHECK(selmer_set_rank_report(z, {}, zt[0], zeta3_inv()).rank == 2);

    auto f13 = fixture::cubic_fibres({3, 5, 13});
    auto t13 = enumerate_reduction_types(f13, {13}, true);
    SelmerReport cusp = selmer_set_rank_report(f13, {}, t13[0], cubic_inv());
    CHECK(cusp.c_sigma == 1);
    CHECK(cusp.rank == 2);
    CHECK(cusp.constraints.at("13").kind == LocalConstraintSet::Kind::Line);
}
