#pragma once

#include <gmpxx.h>

#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cliffcyc {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Int parse_int(const std::string& s) {
    Int z;
    if (s.empty() || z.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
    return z;
}

/// Accepts "p", "p/q" and leading signs.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    return make_rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

inline bool is_power_of_two(const Int& z) {
    return z > 0 && mpz_popcount(z.get_mpz_t()) == 1;
}

/// Exponent of 2 in |z|; z must be nonzero.
inline unsigned long two_adic_valuation(const Int& z) {
    return mpz_scan1(z.get_mpz_t(), 0);
}

inline Int abs(const Int& z) { return z < 0 ? Int(-z) : z; }
inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat pow(const Rat& base, long exponent) {
    Rat acc(1);
    Rat b = exponent < 0 ? Rat(1 / base) : base;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1UL) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline Int pow(const Int& base, unsigned long exponent) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

inline long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

/// Euler's totient.
inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

} // namespace cliffcyc
