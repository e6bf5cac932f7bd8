#include <doctest.h>

#include <random>

#include "affchab/intpoly.hpp"
#include "oracles.hpp"

using namespace affchab;

namespace {

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Resultant by the Euclidean algorithm over Q.
mpq_class euclid_resultant(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    mpq_class res = 1;
    while (true) {
        long da = static_cast<long>(a.size()) - 1, db = static_cast<long>(b.size()) - 1;
        if (db < 0) return 0;
        if (db == 0) {
            mpq_class r = 1;
            for (long i = 0; i < da; ++i) r *= b[0];
            return res * r;
        }
        QPoly r = a;
        while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
            mpq_class c = r.back() / b.back();
            long s = static_cast<long>(r.size()) - 1 - db;
            for (long i = 0; i <= db; ++i) r[static_cast<std::size_t>(i + s)] -= c * b[static_cast<std::size_t>(i)];
            r.pop_back();
            qtrim(r);
        }
        long dr = static_cast<long>(r.size()) - 1;
        if (dr < 0) return 0;
        // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
        mpq_class f = 1;
        for (long i = 0; i < da - dr; ++i) f *= b.back();
        if ((da * db) % 2) f = -f;
        res *= f;
        a = b;
        b = r;
    }
}

mpz_class oracle_disc(const IntPoly& f) {
    QPoly a(f.begin(), f.end()), d;
    for (std::size_t i = 1; i < f.size(); ++i) d.emplace_back(f[i] * static_cast<long>(i));
    long n = static_cast<long>(f.size()) - 1;
    mpq_class r = euclid_resultant(a, d) / mpq_class(f.back());
    if ((n * (n - 1) / 2) % 2) r = -r;
    return r.get_num();
}

}  // namespace

TEST_CASE("discriminant against a Euclidean resultant") {
    IntPoly f{1, -10, 1, 6, 2, -4, 1};
    mpz_class d = discriminant(f);
    CHECK(d == oracle_disc(f));
    CHECK(abs(d) == mpz_class(4096) * 1549);
    CHECK(discriminant(IntPoly{0, 1, 6, 5, 1}) == oracle_disc(IntPoly{0, 1, 6, 5, 1}));
    CHECK(abs(discriminant(IntPoly{0, 1, 6, 5, 1})) == 49);
    std::mt19937_64 g(7);
    for (int i = 0; i < 200; ++i) {
        IntPoly p;
        int deg = 2 + static_cast<int>(g() % 5);
        for (int k = 0; k <= deg; ++k) p.emplace_back(static_cast<long>(g() % 21) - 10);
        if (p.back() == 0) p.back() = 3;
        CHECK(discriminant(p) == oracle_disc(p));
    }
}

TEST_CASE("factorisation multiplies back to n") {
    std::mt19937_64 g(9);
    for (int i = 0; i < 100; ++i) {
        mpz_class n = mpz_class(std::to_string(g() % 1000000007ULL + 2)) * mpz_class(std::to_string(g() % 100003 + 1));
        mpz_class prod = 1;
        for (const auto& [q, e] : factor_integer(n)) {
            CHECK(mpz_probab_prime_p(q.get_mpz_t(), 30) > 0);
            for (unsigned k = 0; k < e; ++k) prod *= q;
        }
        CHECK(prod == n);
    }
    auto f = factor_integer(mpz_class(-4096) * 1549);
    CHECK(f.size() == 2);
    CHECK(f[2] == 12);
    CHECK(f[1549] == 1);
}

TEST_CASE("taylor shift and evaluation") {
    std::mt19937_64 g(13);
    for (int i = 0; i < 100; ++i) {
        IntPoly p;
        for (int k = 0; k < 6; ++k) p.emplace_back(static_cast<long>(g() % 41) - 20);
        mpz_class c = static_cast<long>(g() % 11) - 5;
        IntPoly s = taylor_shift(p, c);
        for (long x = -3; x <= 3; ++x) CHECK(eval(s, x) == eval(p, x + c));
    }
}

TEST_CASE("squares over F_p against enumeration") {
    for (long p : {3L, 5L}) {
        std::mt19937_64 g(static_cast<unsigned long>(p));
        for (int i = 0; i < 150; ++i) {
            ModPoly f(5);
            for (auto& c : f) c = static_cast<long>(g() % static_cast<unsigned long>(p));
            if (i % 3 == 0) {
                ModPoly h{static_cast<long>(g() % static_cast<unsigned long>(p)),
                          static_cast<long>(g() % static_cast<unsigned long>(p)), 1};
                f = mul(h, h, p);
                long c = 1 + static_cast<long>(g() % static_cast<unsigned long>(p - 1));
                for (auto& x : f) x = x * c % p;
            }
            trim(f);
            if (f.empty()) continue;
            bool brute = false;
            long d = degree(f);
            if (d % 2 == 0) {
                long half = d / 2;
                std::vector<long> h(static_cast<std::size_t>(half + 1), 0);
                long total = 1;
                for (long k = 0; k <= half; ++k) total *= p;
                for (long code = 0; code < total && !brute; ++code) {
                    long t = code;
                    for (auto& x : h) {
                        x = t % p;
                        t /= p;
                    }
                    if (h.back() == 0) continue;
                    ModPoly hh(h.begin(), h.end());
                    ModPoly sq = mul(hh, hh, p);
                    for (long c = 1; c < p && !brute; ++c) {
                        ModPoly cs = sq;
                        for (auto& x : cs) x = x * c % p;
                        trim(cs);
                        if (cs == f && is_qr(c, p)) brute = true;
                    }
                }
            }
            CHECK(is_square_mod(f, p) == brute);
        }
    }
}

TEST_CASE("root multiplicity by repeated division") {
    long p = 7;
    ModPoly f{1};
    for (long r : {2L, 2L, 2L, 5L}) f = mul(f, ModPoly{(p - r) % p, 1}, p);
    CHECK(root_multiplicity(f, 2, p) == 3);
    CHECK(root_multiplicity(f, 5, p) == 1);
    CHECK(root_multiplicity(f, 0, p) == 0);
}

TEST_CASE("quadratic residues") {
    for (long p : {3L, 7L, 11L, 31L}) {
        for (long a = 1; a < p; ++a) {
            bool brute = false;
            for (long y = 1; y < p; ++y) brute = brute || (y * y) % p == a;
            CHECK(is_qr(a, p) == brute);
        }
    }
}
