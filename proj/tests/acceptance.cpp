// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "affchab/chabauty.hpp"
#include "affchab/cli.hpp"
#include "affchab/dintersect.hpp"
#include "affchab/error.hpp"
#include "affchab/selmer.hpp"
#include "fixtures.hpp"

using namespace affchab;
using nlohmann::json;

namespace {

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

json cli_json(std::vector<std::string> args, int* code = nullptr) {
    args.push_back("--json");
    std::ostringstream out, err;
    int c = run_cli(args, out, err);
    if (code) *code = c;
    if (c != kExitOk && c != kExitInconclusive) return json::object();
    return json::parse(out.str());
}

std::string d(const std::string& name) { return fixture::path(name); }

std::set<std::pair<std::string, std::string>> point_set(const std::vector<RationalPoint>& pts) {
    std::set<std::pair<std::string, std::string>> s;
    for (const auto& P : pts) s.insert({P.x.get_str(), P.y.get_str()});
    return s;
}

Padic random_unit(std::mt19937_64& g, long p, long k) {
    mpz_class n = 0;
    for (long i = 0; i < k; ++i) n = n * p + static_cast<long>(g() % static_cast<unsigned long>(p));
    if (n % p == 0) n += 1;
    return Padic::from_int(p, n, k);
}

Check criterion1() {
    Check c;
    auto curve = HyperellipticCurve::from_coefficients({0, 1, 6, 5, 1});
    c.require(liu_star_checks(curve.f).pass, "Liu criteria fail");
    json b = cli_json({"bound", "--curve", d("quartic_curve.json"), "-p", "5"});
    c.require(b.value("bound", -1) == 5, "bound is not 5");
    auto pts = point_set(brute_force_integral_points(curve, 10000));
    std::set<std::pair<std::string, std::string>> expect{{"0", "0"}, {"-1", "1"}, {"-1", "-1"}, {"4", "26"}, {"4", "-26"}};
    c.require(pts == expect, "search does not return the five points");
    return c;
}

Check criterion2() {
    Check c;
    auto curve = HyperellipticCurve::from_coefficients({4, 0, -28, 0, 0, 0, 1});
    c.require(liu_star_checks(curve.f).pass, "Liu criteria fail");
    c.require(count_affine_points(curve, 7) == 2, "#Y(F_7) != 2");
    json b = cli_json({"bound", "--curve", d("sextic_curve.json"), "-p", "7"});
    c.require(b.value("bound", -1) == 6, "bound is not 6");
    auto pts = point_set(brute_force_integral_points(curve, 10000));
    std::set<std::pair<std::string, std::string>> expect{{"0", "2"},      {"0", "-2"},     {"7", "341"},
                                                         {"7", "-341"},   {"-7", "341"},   {"-7", "-341"}};
    c.require(pts == expect, "search does not return the six points");
    return c;
}

Check criterion3() {
    Check c;
    for (long q : {2L, 5L, 11L, 13L, 19L}) {
        std::vector<std::string> a{"bound", "--curve", d("cubic_curve.json"), "-p", "7", "-S", std::to_string(q),
                                   "--prune"};
        for (long l : {7L, 3L, 5L}) a.insert(a.end(), {"--fibre", d("cubic_fibre_" + std::to_string(l) + ".json")});
        if (q != 5) a.insert(a.end(), {"--fibre", d("cubic_fibre_" + std::to_string(q) + ".json")});
        long expect = (q % 3 == 1) ? 18 : 6;
        long got = cli_json(a).value("bound", -1);
        c.require(got == expect, "q = " + std::to_string(q) + ": bound " + std::to_string(got));
    }
    return c;
}

Check criterion4() {
    Check c;
    auto curve = HyperellipticCurve::from_coefficients({1, -10, 1, 6, 2, -4, 1});
    AlphaFixture fx = parse_alpha_fixture(oracle::slurp(d("zeta3_alpha.json")));
    ChabautyFunction fn{fx.omega, fx.constant, fx.prime};
    ResidueDisc disc = make_disc(curve, 7, 0, 1, 12, mpz_class(0));
    PadicSeries rho = rho_series_on_disc(curve, fn, disc, fx.discs.at({0, 1}).base, 12);
    const std::vector<long> expect{kInfinity, 3, 4, 5, 6, 11, 8};
    for (std::size_t n = 0; n < expect.size(); ++n) {
        long v = rho[n].is_exact_zero() ? kInfinity : rho[n].valuation();
        c.require(v == expect[n], "valuation of coefficient " + std::to_string(n));
    }
    SweepReport r = strassmann_sweep(curve, fn, 7, fx.precision, fx.discs);
    std::set<std::pair<long, long>> zeros;
    for (const auto& dv : r.discs) {
        c.require(dv.verdict.kind == StrassmannVerdict::Kind::Exact && dv.verdict.count == 1,
                  "disc without exactly one zero");
        if (dv.verdict.zero_at_origin) zeros.insert({dv.x, dv.y});
    }
    // (0, +-1), (2, +-1), (1, +-sqrt(-3)) with sqrt(-3) = 2 mod 7
    std::set<std::pair<long, long>> known{{0, 1}, {0, 6}, {2, 1}, {2, 6}, {1, 2}, {1, 5}};
    c.require(zeros == known, "zero set differs from the known points");
    c.require(r.total == 6, "total is not 6");
    return c;
}

Check criterion5() {
    Check c;
    std::mt19937_64 g(2024);
    for (int i = 0; i < 100 && c.ok; ++i) {
        FibreData f = fixture::random_corank1_fibre(g, 1 + g() % 6);
        validate_fibre(f);
        RationalMatrix M = RationalMatrix::from_int(f.intersection_matrix);
        RationalMatrix A = -M;
        GeneralisedInverse gi = generalised_inverse(M);
        c.require(A * gi.L * A == A, "(-M) L (-M) != -M");
        std::size_t n = f.components.size();
        for (int t = 0; t < 5; ++t) {
            RationalVector E(n, 0);
            mpq_class s = 0;
            for (std::size_t k = 1; k < n; ++k) {
                E[k] = static_cast<long>(g() % 9) - 4;
                s += f.components[k].multiplicity * E[k];
            }
            E[0] = -s;
            VerticalQDivisor phi = compute_phi(f, E, gi);
            RationalVector r = M * phi.coeffs;
            for (std::size_t k = 0; k < n; ++k) c.require(r[k] == -E[k], "M phi != -E");
            for (const auto& x : phi.coeffs) {
                c.require(mpz_divisible_p(gi.denominator.get_mpz_t(), x.get_den().get_mpz_t()) != 0,
                          "phi denominator does not divide a");
            }
        }
    }
    return c;
}

Check criterion6() {
    Check c;
    NumberFieldInvariants z;
    z.degree = 2;
    z.n = 2;
    z.num_cusp_points = 2;
    z.n1 = 0;
    z.n2 = 2;
    z.rank = 2;
    z.genus = 2;
    c.require(ker_sigma_rank(z) == 2 && selmer_rank(z, 0) == 2, "zeta_3 ranks");
    Inequality iz = chabauty_inequality(z, 0);
    c.require(iz.lhs == 4 && iz.rhs == 5 && iz.holds(), "zeta_3 condition is not 4 < 5");
    c.require(ros_condition(z, 0), "zeta_3 ROS");

    NumberFieldInvariants e;
    e.n = 3;
    e.num_cusp_points = 2;
    e.n1 = 1;
    e.n2 = 1;
    e.rank = 1;
    e.genus = 1;
    c.require(ker_sigma_rank(e) == 1 && selmer_rank(e, 1) == 2, "cubic curve ranks");
    c.require(chabauty_condition(e, 1) && condition_1_1(e, 1).holds(), "cubic curve condition");

    for (long g = 1; g <= 6; ++g) {
        for (long r = 0; r <= 16; ++r) {
            NumberFieldInvariants real;
            real.degree = 2;
            real.unit_rank = 1;
            real.genus = g;
            real.n = 2;
            real.n1 = 4;
            real.n2 = 0;
            real.num_cusp_points = 2;
            real.rank = r;
            c.require(ros_condition(real, 0) == (r <= 2 * g - 1), "real quadratic ROS specialisation");
            NumberFieldInvariants imag = z;
            imag.genus = g;
            imag.rank = r;
            c.require(ros_condition(imag, 0) == (r <= 2 * g), "imaginary quadratic ROS specialisation");
        }
    }

    std::mt19937_64 g(6);
    for (int i = 0; i < 1000; ++i) {
        NumberFieldInvariants k;
        k.degree = 1 + static_cast<long>(g() % 3);
        k.unit_rank = static_cast<long>(g() % 3);
        k.genus = 1 + static_cast<long>(g() % 5);
        k.n1 = static_cast<long>(g() % 4);
        k.n2 = static_cast<long>(g() % 3);
        k.num_cusp_points = 1 + static_cast<long>(g() % 3);
        k.rank = static_cast<long>(g() % 8);
        long cs = static_cast<long>(g() % 3);
        bool before = chabauty_condition(k, cs);
        bool ros_before = ros_condition(k, cs);
        k.rank += 1 + static_cast<long>(g() % 3);
        if (!before) c.require(!chabauty_condition(k, cs), "chabauty condition not monotone in r");
        if (!ros_before) c.require(!ros_condition(k, cs), "ROS condition not monotone in r");
    }
    return c;
}

Check criterion7() {
    Check c;
    std::mt19937_64 g(7);
    for (int i = 0; i < 10000; ++i) {
        long p = (i % 3 == 0) ? 3 : (i % 3 == 1 ? 5 : 7);
        long k = 8 + static_cast<long>(g() % 8);
        Padic a = random_unit(g, p, k), b = random_unit(g, p, k);
        Padic diff = iwasawa_log(a * b) - iwasawa_log(a) - iwasawa_log(b);
        c.require(diff.valuation() >= k, "log(ab) != log a + log b");
    }
    for (int i = 0; i < 200; ++i) {
        long p = (i % 2) ? 5 : 7;
        mpz_class a = 1 + static_cast<long>(g() % static_cast<unsigned long>(p - 1));
        mpz_class b = a + p * static_cast<long>(g() % 10000);
        Padic A = Padic::from_int(p, a, 20), B = Padic::from_int(p, b, 20);
        Padic I = gm_tiny_integral(A, B);
        c.require(I.congruent(iwasawa_log(B / A)) && I.abs_prec() >= 15, "G_m tiny integral is not log(b/a)");
    }
    int agreed = 0;
    for (int i = 0; i < 5000 && agreed < 200; ++i) {
        long p = (i % 2) ? 5 : 7;
        int deg = 1 + static_cast<int>(g() % 5);
        std::vector<mpz_class> f;
        for (int k = 0; k <= deg; ++k) f.emplace_back(static_cast<long>(g() % 401) - 200);
        if (f.back() == 0) f.back() = 1;
        auto truth = oracle::count_zp_roots(f, p);
        if (!truth) continue;
        std::vector<Padic> coeffs;
        for (const auto& x : f) coeffs.push_back(Padic::from_int(p, x, 40));
        auto v = strassmann_zero_count(PadicSeries(p, coeffs, TailBound::zero()), Domain::Zp);
        if (v.kind == StrassmannVerdict::Kind::Exact) {
            c.require(v.count == *truth, "Strassmann count differs from the lift oracle");
            ++agreed;
        } else if (v.kind == StrassmannVerdict::Kind::AtMost) {
            c.require(v.count >= *truth, "Strassmann upper bound below the true count");
        }
    }
    c.require(agreed >= 200, "fewer than 200 Exact verdicts");
    return c;
}

Check criterion8() {
    Check c;
    std::mt19937_64 g(8);
    const std::vector<long> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    int done = 0;
    while (done < 50) {
        long genus = 1 + static_cast<long>(g() % 3);
        long p = primes[g() % primes.size()];
        IntPoly f;
        for (long k = 0; k < 2 * genus + 2; ++k) f.emplace_back(static_cast<long>(g() % 41) - 20);
        f.emplace_back(1);
        mpz_class disc = discriminant(f);
        if (disc == 0 || disc % p == 0) continue;
        auto curve = HyperellipticCurve::from_coefficients(f);
        LogDifferential w;
        std::vector<mpq_class> rat;
        bool nonzero = false;
        for (long j = 0; j <= genus; ++j) {
            long a = static_cast<long>(g() % 61) - 30;
            nonzero = nonzero || a % p != 0;
            rat.emplace_back(a);
            w.alpha.push_back(a == 0 ? Padic::zero(p) : Padic::from_int(p, a, 20));
        }
        if (!nonzero) continue;
        auto ro = reduce_and_order(curve, w, p);
        long n = cusp_invariants(curve).n;
        c.require(ro.n_C <= 2 * genus - 2 + n, "n_C exceeds 2g - 2 + n");
        auto alg = reduce_and_order_algebraic(curve, w, p);
        c.require(alg.n_C == ro.n_C, "series and algebraic orders disagree");
        auto [rp, rm] = residues_at_infinity(curve, rat);
        c.require(rp + rm == 0, "residues do not sum to zero");
        ++done;
    }
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check()> run;
        double limit;  // seconds, 0 for none
    };
    const std::vector<Criterion> all{
        {"1 quartic curve bound and search", criterion1, 5},
        {"2 sextic curve bound and search", criterion2, 10},
        {"3 cubic curve bounds 6 and 18", criterion3, 5},
        {"4 zeta_3 Strassmann reproduction", criterion4, 30},
        {"5 intersection theory properties", criterion5, 0},
        {"6 rank and condition formulas", criterion6, 0},
        {"7 p-adic analytic suite", criterion7, 0},
        {"8 differential reduction suite", criterion8, 0},
    };
    int failures = 0;
    for (const auto& cr : all) {
        auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.ok && cr.limit > 0 && secs >= cr.limit) {
            c.ok = false;
            c.why = "exceeded " + std::to_string(cr.limit) + " s";
        }
        std::printf("%s criterion %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", cr.name, secs, c.ok ? "" : ": ",
                    c.why.c_str());
        if (!c.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
