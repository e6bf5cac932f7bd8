#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace affchab {

/// Integer polynomial, coefficients low to high.
using IntPoly = std::vector<mpz_class>;
/// Polynomial over F_p, coefficients low to high, entries in [0, p).
using ModPoly = std::vector<long>;

long degree(const IntPoly& f);
void trim(IntPoly& f);
mpz_class eval(const IntPoly& f, const mpz_class& x);
IntPoly derivative(const IntPoly& f);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
/// f(x + c)
IntPoly taylor_shift(const IntPoly& f, const mpz_class& c);
std::string to_string(const IntPoly& f);

mpz_class resultant(const IntPoly& f, const IntPoly& g);
mpz_class discriminant(const IntPoly& f);

/// Prime factorisation of |n| (n != 0).
std::map<mpz_class, unsigned> factor_integer(const mpz_class& n);

long mod(const mpz_class& a, long p);
ModPoly reduce(const IntPoly& f, long p);
long degree(const ModPoly& f);
void trim(ModPoly& f);
long eval(const ModPoly& f, long x, long p);
ModPoly mul(const ModPoly& a, const ModPoly& b, long p);
ModPoly derivative(const ModPoly& f, long p);
ModPoly gcd(ModPoly a, ModPoly b, long p);
long inverse_mod(long a, long p);
bool is_qr(long a, long p);  // a nonzero square mod odd p
/// True when f is lc(f) * h^2 for some h in F_p[x] with lc(f) a square.
bool is_square_mod(const ModPoly& f, long p);
/// Multiplicity of x0 as a root of f (f != 0).
long root_multiplicity(const ModPoly& f, long x0, long p);

}  // namespace affchab
