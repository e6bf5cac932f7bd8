#include "affchab/intpoly.hpp"

#include <algorithm>
#include <cstdlib>

#include "affchab/error.hpp"

namespace affchab {

long degree(const IntPoly& f) {
    for (long i = static_cast<long>(f.size()) - 1; i >= 0; --i) {
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    }
    return -1;
}

void trim(IntPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

mpz_class eval(const IntPoly& f, const mpz_class& x) {
    mpz_class acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

IntPoly derivative(const IntPoly& f) {
    IntPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    trim(d);
    return d;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
    IntPoly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    trim(c);
    return c;
}

IntPoly taylor_shift(const IntPoly& f, const mpz_class& c) {
    IntPoly g = f;
    long n = static_cast<long>(g.size());
    for (long i = 0; i < n; ++i) {
        for (long j = n - 2; j >= i; --j) g[static_cast<std::size_t>(j)] += c * g[static_cast<std::size_t>(j + 1)];
    }
    return g;
}

std::string to_string(const IntPoly& f) {
    std::string s;
    for (long i = degree(f); i >= 0; --i) {
        const mpz_class& c = f[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (!s.empty()) {
            s += c < 0 ? " - " : " + ";
        } else if (c < 0) {
            s += "-";
        }
        bool show = a != 1 || i == 0;
        if (show) s += a.get_str();
        if (i > 0) {
            if (show) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

namespace {

// Fraction-free determinant.
mpz_class bareiss(std::vector<std::vector<mpz_class>> a) {
    std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    long m = degree(f);
    long n = degree(g);
    if (m < 0 || n < 0) return 0;
    std::size_t sz = static_cast<std::size_t>(m + n);
    if (sz == 0) return 1;
    std::vector<std::vector<mpz_class>> s(sz, std::vector<mpz_class>(sz, 0));
    for (long r = 0; r < n; ++r) {
        for (long i = 0; i <= m; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = f[static_cast<std::size_t>(m - i)];
    }
    for (long r = 0; r < m; ++r) {
        for (long i = 0; i <= n; ++i) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = g[static_cast<std::size_t>(n - i)];
    }
    return bareiss(std::move(s));
}

mpz_class discriminant(const IntPoly& f) {
    long n = degree(f);
    if (n < 1) return 0;
    mpz_class r = resultant(f, derivative(f)) / f[static_cast<std::size_t>(n)];
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

namespace {

mpz_class pollard_brent(const mpz_class& n) {
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1, m = 64;
        auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = (q * abs(mpz_class(x - y))) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                mpz_class d = abs(mpz_class(x - ys));
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
        out[n] += 1;
        return;
    }
    mpz_class d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::map<mpz_class, unsigned> factor_integer(const mpz_class& n0) {
    if (n0 == 0) throw Error(ErrorKind::HypothesisViolated, "cannot factor zero");
    std::map<mpz_class, unsigned> out;
    mpz_class n = abs(n0);
    for (unsigned long p = 2; p < 10000 && p * p <= n; ++p) {
        while (n % p == 0) {
            out[mpz_class(p)] += 1;
            n /= p;
        }
    }
    factor_into(n, out);
    return out;
}

long mod(const mpz_class& a, long p) {
    mpz_class r;
    mpz_class pm = p;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), pm.get_mpz_t());
    return r.get_si();
}

ModPoly reduce(const IntPoly& f, long p) {
    ModPoly g;
    for (const auto& c : f) g.push_back(mod(c, p));
    trim(g);
    return g;
}

long degree(const ModPoly& f) {
    for (long i = static_cast<long>(f.size()) - 1; i >= 0; --i) {
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    }
    return -1;
}

void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

long eval(const ModPoly& f, long x, long p) {
    __int128 acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    return static_cast<long>((acc + p) % p);
}

ModPoly mul(const ModPoly& a, const ModPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] = static_cast<long>((c[i + j] + static_cast<__int128>(a[i]) * b[j]) % p);
        }
    }
    trim(c);
    return c;
}

ModPoly derivative(const ModPoly& f, long p) {
    ModPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(static_cast<long>((static_cast<__int128>(f[i]) * static_cast<long>(i)) % p));
    trim(d);
    return d;
}

long inverse_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        long q = r / nr;
        long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw Error(ErrorKind::DivisionByZero, "not invertible mod " + std::to_string(p));
    return (t % p + p) % p;
}

ModPoly gcd(ModPoly a, ModPoly b, long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        long db = degree(b);
        long inv = inverse_mod(b.back(), p);
        while (degree(a) >= db) {
            long da = degree(a);
            long c = static_cast<long>((static_cast<__int128>(a.back()) * inv) % p);
            for (long i = 0; i <= db; ++i) {
                auto& x = a[static_cast<std::size_t>(da - db + i)];
                x = static_cast<long>(((x - static_cast<__int128>(c) * b[static_cast<std::size_t>(i)]) % p + p) % p);
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        long inv = inverse_mod(a.back(), p);
        for (auto& x : a) x = static_cast<long>((static_cast<__int128>(x) * inv) % p);
    }
    return a;
}

bool is_qr(long a, long p) {
    a = ((a % p) + p) % p;
    if (a == 0) return false;
    mpz_class am = a, pm = p;
    return mpz_legendre(am.get_mpz_t(), pm.get_mpz_t()) == 1;
}

bool is_square_mod(const ModPoly& f0, long p) {
    ModPoly f = f0;
    trim(f);
    if (f.empty()) return true;
    long n = degree(f);
    if (n % 2 != 0) return false;
    long lc = f.back();
    if (p != 2 && !is_qr(lc, p)) return false;
    long inv = inverse_mod(lc, p);
    for (auto& c : f) c = static_cast<long>((static_cast<__int128>(c) * inv) % p);
    if (n == 0) return true;
    long k = n / 2;
    if (p == 2) {
        // squares over F_2 have only even-degree terms; h(x^2) = h(x)^2
        for (long i = 1; i <= n; i += 2) {
            if (f[static_cast<std::size_t>(i)] != 0) return false;
        }
        return true;
    }
    // h monic of degree k with h^2 matching the top k coefficients of f
    ModPoly h(static_cast<std::size_t>(k + 1), 0);
    h[static_cast<std::size_t>(k)] = 1;
    long inv2 = inverse_mod(2, p);
    for (long j = k - 1; j >= 0; --j) {
        // coefficient of x^(k + j) in h^2
        __int128 acc = 0;
        for (long i = j + 1; i <= k; ++i) {
            long other = k + j - i;
            if (other > j && other <= k) acc += static_cast<__int128>(h[static_cast<std::size_t>(i)]) * h[static_cast<std::size_t>(other)];
        }
        long target = f[static_cast<std::size_t>(k + j)];
        long rem = static_cast<long>(((target - acc) % p + p) % p);
        h[static_cast<std::size_t>(j)] = static_cast<long>((static_cast<__int128>(rem) * inv2) % p);
    }
    ModPoly sq = mul(h, h, p);
    sq.resize(f.size(), 0);
    return sq == f;
}

long root_multiplicity(const ModPoly& f0, long x0, long p) {
    ModPoly f = f0;
    trim(f);
    if (f.empty()) throw Error(ErrorKind::ZeroDifferential, "multiplicity of a root of the zero polynomial");
    long m = 0;
    while (eval(f, x0, p) == 0) {
        // synthetic division by (x - x0)
        ModPoly q(f.size() - 1, 0);
        long carry = 0;
        for (std::size_t i = f.size(); i-- > 1;) {
            carry = static_cast<long>((f[i] + static_cast<__int128>(carry) * x0) % p);
            q[i - 1] = carry;
        }
        f = q;
        trim(f);
        ++m;
    }
    return m;
}

}  // namespace affchab
