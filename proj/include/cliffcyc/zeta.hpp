#pragma once

// Special values zeta_F(-1) of the real cyclotomic fields F_n through even
// Dirichlet characters and generalized Bernoulli numbers, the splitting of 2,
// and the Euler-Poincare characteristics built from them.

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cyclotomic.hpp"
#include "embedding.hpp"

namespace cliffcyc {

// ---- (Z/nZ)^x ----

struct UnitGroup {
    long n = 1;
    std::vector<long> generators; // residues mod n
    std::vector<long> orders;
    long exponent = 1;            // lcm of orders
    std::map<long, std::vector<long>> logs; // residue -> exponent vector
};

namespace detail {

inline long powmod_l(long b, long e, long m) {
    long r = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = static_cast<long>((__int128)r * b % m);
        b = static_cast<long>((__int128)b * b % m);
        e >>= 1;
    }
    return r;
}

inline long multiplicative_order(long a, long m) {
    if (m == 1) return 1;
    long x = mod(a, m), k = 1;
    while (x != 1) {
        x = static_cast<long>((__int128)x * a % m);
        ++k;
    }
    return k;
}

inline long primitive_root_prime_power(long p, long k) {
    long pk = 1;
    for (long i = 0; i < k; ++i) pk *= p;
    const long order = pk / p * (p - 1);
    for (long g = 2; g < pk; ++g) {
        if (g % p == 0) continue;
        if (multiplicative_order(g, pk) == order) return g;
    }
    return 1;
}

/// x = r (mod q), x = 1 (mod m/q), with gcd(q, m/q) = 1.
inline long crt_lift(long r, long q, long m) {
    const long rest = m / q;
    for (long x = 1; x < m; x += rest) // x = 1 mod rest
        if (mod(x - r, q) == 0) return x;
    return 1;
}

} // namespace detail

inline UnitGroup unit_group(long n) {
    if (n < 1) throw Error(ErrorCode::UnsupportedLevel, "modulus must be positive");
    UnitGroup g;
    g.n = n;
    long rest = n;
    for (long p : prime_divisors(n)) {
        long k = 0, q = 1;
        while (rest % p == 0) {
            rest /= p;
            ++k;
            q *= p;
        }
        if (p == 2) {
            if (k >= 2) {
                g.generators.push_back(detail::crt_lift(q - 1, q, n));
                g.orders.push_back(2);
            }
            if (k >= 3) {
                g.generators.push_back(detail::crt_lift(5, q, n));
                g.orders.push_back(q / 4);
            }
        } else {
            g.generators.push_back(detail::crt_lift(detail::primitive_root_prime_power(p, k), q, n));
            g.orders.push_back(q / p * (p - 1));
        }
    }
    for (long o : g.orders) g.exponent = std::lcm(g.exponent, o);
    // discrete logarithms by enumeration
    std::vector<long> e(g.orders.size(), 0);
    for (;;) {
        long x = 1 % n;
        for (std::size_t i = 0; i < e.size(); ++i)
            x = static_cast<long>((__int128)x * detail::powmod_l(g.generators[i], e[i], n) % n);
        g.logs[n == 1 ? 0 : x] = e;
        std::size_t i = 0;
        while (i < e.size() && ++e[i] == g.orders[i]) e[i++] = 0;
        if (i == e.size()) break;
    }
    ensure(static_cast<long>(g.logs.size()) == euler_phi(n), "unit group enumeration has the wrong size");
    return g;
}

// ---- Dirichlet characters ----

/// Values are zeta_m^e with m = aux_level; -1 marks a non-unit argument.
struct DirichletChar {
    long modulus = 1;
    long aux_level = 1;
    std::vector<long> generator_images; // exponents e_i with chi(g_i) = zeta_m^e_i
    long conductor = 1;
    bool even = true;
    std::vector<long> primitive_values; // indexed by a mod conductor

    bool is_trivial() const { return conductor == 1; }

    /// Value of the primitive character at a, as an element of Q(zeta_m).
    CycElem primitive_value(long a) const {
        long e = primitive_values[static_cast<std::size_t>(mod(a, conductor))];
        return e < 0 ? CycElem(aux_level) : CycElem::zeta(aux_level, e);
    }

    bool is_quadratic() const {
        for (long e : primitive_values)
            if (e >= 0 && mod(2 * e, aux_level) != 0) return false;
        return true;
    }
};

namespace detail {

inline long char_exponent(const UnitGroup& g, const std::vector<long>& images, long a) {
    const auto& lg = g.logs.at(mod(a, g.n));
    long e = 0;
    for (std::size_t i = 0; i < lg.size(); ++i) e += images[i] * lg[i];
    return mod(e, g.exponent);
}

inline DirichletChar build_character(const UnitGroup& g, std::vector<long> images) {
    DirichletChar chi;
    chi.modulus = g.n;
    chi.aux_level = g.exponent;
    chi.generator_images = std::move(images);
    const long n = g.n;
    chi.even = n <= 2 || char_exponent(g, chi.generator_images, n - 1) == 0;
    for (long f = 1; f <= n; ++f) {
        if (n % f != 0) continue;
        bool trivial_on_kernel = true;
        for (const auto& [a, lg] : g.logs)
            if (mod(a - 1, f) == 0 && char_exponent(g, chi.generator_images, a) != 0) {
                trivial_on_kernel = false;
                break;
            }
        if (trivial_on_kernel) {
            chi.conductor = f;
            break;
        }
    }
    const long f = chi.conductor;
    chi.primitive_values.assign(static_cast<std::size_t>(f), -1);
    for (long b = 0; b < f; ++b) {
        if (gcd_long(b, f) != 1 && f > 1) continue;
        long a = b;
        while (gcd_long(a, n) != 1) a += f;
        chi.primitive_values[static_cast<std::size_t>(b)] = char_exponent(g, chi.generator_images, a);
    }
    return chi;
}

} // namespace detail

inline std::vector<DirichletChar> all_characters(long n) {
    const UnitGroup g = unit_group(n);
    std::vector<DirichletChar> out;
    std::vector<long> e(g.orders.size(), 0);
    for (;;) {
        std::vector<long> images;
        for (std::size_t i = 0; i < e.size(); ++i) images.push_back(e[i] * (g.exponent / g.orders[i]));
        out.push_back(detail::build_character(g, images));
        std::size_t i = 0;
        while (i < e.size() && ++e[i] == g.orders[i]) e[i++] = 0;
        if (i == e.size()) break;
    }
    return out;
}

/// The phi(n)/2 even characters mod n: the characters of Gal(F_n/Q).
inline std::vector<DirichletChar> even_characters(long n) {
    if (n < 3) throw Error(ErrorCode::UnsupportedLevel, "even characters need n >= 3");
    std::vector<DirichletChar> out;
    for (auto& chi : all_characters(n))
        if (chi.even) out.push_back(std::move(chi));
    ensure(static_cast<long>(out.size()) == euler_phi(n) / 2, "wrong number of even characters");
    return out;
}

/// Generalized Bernoulli number B_{2,chi} of the primitive character.
inline CycElem bernoulli2(const DirichletChar& chi) {
    const long f = chi.conductor, m = chi.aux_level;
    std::vector<Rat> acc(static_cast<std::size_t>(m), Rat(0));
    for (long a = 1; a <= f; ++a) {
        long e = chi.primitive_values[static_cast<std::size_t>(mod(a, f))];
        if (e < 0) continue;
        Rat x(a, f);
        x.canonicalize();
        acc[static_cast<std::size_t>(e)] += x * x - x + Rat(1, 6);
    }
    return CycElem::from_poly(m, acc) * Rat(f);
}

/// L(-1, chi) = -B_{2,chi} / 2.
inline CycElem L_minus1(const DirichletChar& chi) { return bernoulli2(chi) * Rat(-1, 2); }

/// zeta_{F_n}(-1) as the product of L(-1, chi) over the even characters mod n.
inline Rat zeta_F_minus1(long n) {
    if (n < 3) throw Error(ErrorCode::UnsupportedLevel, "zeta_F(-1) needs n >= 3");
    const auto chars = even_characters(n);
    CycElem acc(chars.front().aux_level, 1);
    for (const auto& chi : chars) acc *= L_minus1(chi);
    ensure(acc.is_rational(), "product of L-values is not rational");
    return acc.rational_value();
}

// ---- splitting of 2 ----

struct SplitData {
    long n = 0;
    long r = 0, e = 0, f = 0;             // in K_n
    long rPlus = 0, ePlus = 0, fPlus = 0; // in F_n
};

inline long two_part(long n) {
    long t = 1;
    while (n % 2 == 0) {
        n /= 2;
        t *= 2;
    }
    return t;
}

/// Decomposition of 2 computed inside Gal(K_n/Q) = (Z/n)^x: inertia
/// I = {a : a = 1 mod d}, decomposition D = I <2-Frobenius>, and the real
/// subfield as the quotient by H = <-1>.
inline SplitData split_data(long n) {
    if (n % 4 != 0) throw Error(ErrorCode::UnsupportedLevel, "split data need 4 | n");
    const long q = two_part(n), d = n / q;
    std::vector<long> units;
    for (long a = 1; a < n; ++a)
        if (gcd_long(a, n) == 1) units.push_back(a);
    auto in_I = [&](long a) { return mod(a - 1, d) == 0; };
    const long ord2 = detail::multiplicative_order(2, d);
    auto in_D = [&](long a) {
        long x = 1 % d;
        for (long k = 0; k < ord2; ++k) {
            if (mod(a - x, d) == 0) return true;
            x = x * 2 % d;
        }
        return d == 1;
    };
    auto in_HI = [&](long a) { return in_I(a) || in_I(n - a); };
    auto in_HD = [&](long a) { return in_D(a) || in_D(n - a); };
    long cI = 0, cD = 0, cHI = 0, cHD = 0;
    for (long a : units) {
        cI += in_I(a);
        cD += in_D(a);
        cHI += in_HI(a);
        cHD += in_HD(a);
    }
    const long phi = static_cast<long>(units.size());
    SplitData s;
    s.n = n;
    s.e = cI;
    s.f = cD / cI;
    s.r = phi / cD;
    // images in G / H with |H| = 2
    s.ePlus = cHI / 2;
    s.fPlus = cHD / cHI;
    s.rPlus = phi / cHD;
    ensure(s.e * s.f * s.r == phi, "efr != phi(n)");
    ensure(s.ePlus * s.fPlus * s.rPlus == phi / 2, "efr != phi(n)/2 in the real subfield");
    return s;
}

/// -1 mod d lies in <2 mod d>, d the odd part of n.
inline bool u2_equals_u2zeta(long n) {
    const long d = n / two_part(n);
    if (d == 1) return true;
    long x = 1;
    do {
        if (x == d - 1) return true;
        x = x * 2 % d;
    } while (x != 1);
    return false;
}

// ---- Euler-Poincare characteristics ----

inline Rat chi_amalgam(long a, long b, long c) {
    if (a <= 0 || b <= 0 || c <= 0) throw Error(ErrorCode::UnsupportedLevel, "group orders must be positive");
    return Rat(1, a) + Rat(1, b) - Rat(1, c);
}

/// -1/12 + 1/(2n).
inline Rat chi_clifford_cyclotomic(long n) { return Rat(-1, 12) + Rat(1, 2 * n); }

/// The levels where the index of PU2 in SO3 and of PSU2 in SO3 are known:
/// n = 2^s (n >= 8) and n = 3 * 2^s (4 | n).
inline bool has_known_c(long n) {
    if (n % 4 != 0) return false;
    const long d = n / two_part(n);
    return (d == 1 && n >= 8) || d == 3;
}

struct KnownC {
    long c = 2;
    long cbar = 1;
};

inline std::optional<KnownC> known_c(long n) {
    if (!has_known_c(n)) return std::nullopt;
    return KnownC{2, 1};
}

inline Rat M_value(long n) {
    if (n % 4 != 0 || n < 8) throw Error(ErrorCode::UnsupportedLevel, "M_n needs 4 | n and n >= 8");
    const SplitData s = split_data(n);
    const long deg = euler_phi(n) / 2;
    Rat euler_factor = pow(abs(Rat(1) - pow(Rat(2), s.fPlus)), s.rPlus);
    return pow(Rat(2), 1 - deg) * abs(zeta_F_minus1(n)) * euler_factor;
}

struct ChiTable {
    long n = 0;
    Rat zetaMinus1, M;
    Rat chiSU2, chiPSU2, chiPU2zeta, chiPU2;
    std::optional<Rat> chiSO3;
    Rat chiSGn, chiG4n;
    std::optional<long> c, cbar;
    long r = 0, rPlus = 0;
};

inline ChiTable chi_table(long n) {
    if (n % 4 != 0 || n < 8) throw Error(ErrorCode::UnsupportedLevel, "chi table needs 4 | n and n >= 8");
    ChiTable t;
    t.n = n;
    const SplitData s = split_data(n);
    t.r = s.r;
    t.rPlus = s.rPlus;
    t.zetaMinus1 = zeta_F_minus1(n);
    const long deg = euler_phi(n) / 2;
    t.M = pow(Rat(2), 1 - deg) * abs(t.zetaMinus1) * pow(abs(Rat(1) - pow(Rat(2), s.fPlus)), s.rPlus);
    t.chiSU2 = -t.M / 2;
    t.chiPSU2 = 2 * t.chiSU2;
    t.chiPU2zeta = t.chiSU2;
    t.chiPU2 = t.chiSU2 / pow(Rat(2), s.r - s.rPlus);
    t.chiSGn = chi_clifford_cyclotomic(n);
    t.chiG4n = chi_amalgam(24, 2 * n, 8);
    if (auto k = known_c(n)) {
        t.c = k->c;
        t.cbar = k->cbar;
        t.chiSO3 = t.chiPU2 / Rat(k->cbar);
        ensure(*t.chiSO3 == t.chiPSU2 / Rat(k->c), "chi(SO3) from c and from cbar disagree");
    }
    ensure(t.chiPSU2 == -t.M, "chi(PSU2) != -M");
    ensure(t.chiPU2 == -t.M / pow(Rat(2), 1 + s.r - s.rPlus), "chi(PU2) formula mismatch");
    return t;
}

// ---- discriminants ----

inline Int disc_Kn(long n) {
    const long phi = euler_phi(n);
    Int num = pow(Int(n), static_cast<unsigned long>(phi));
    for (long p : prime_divisors(n)) num /= pow(Int(p), static_cast<unsigned long>(phi / (p - 1)));
    return num;
}

inline Rat disc_Fn(long n) {
    if (n % 4 != 0) throw Error(ErrorCode::UnsupportedLevel, "disc_Fn needs 4 | n");
    const long phi = euler_phi(n);
    const long f = (two_part(n) == n) ? 2 : 1;
    Rat den(f);
    for (long p : prime_divisors(n)) {
        ensure(phi % (2 * (p - 1)) == 0, "non-integral discriminant exponent");
        den *= Rat(pow(Int(p), static_cast<unsigned long>(phi / (2 * (p - 1)))));
    }
    return Rat(pow(Int(n), static_cast<unsigned long>(phi / 2))) / den;
}

// ---- the decision ----

enum class Relation { Equal, Greater };

inline const char* to_string(Relation r) { return r == Relation::Equal ? "=" : ">"; }

inline bool is_exceptional_level(long n) { return n == 8 || n == 12 || n == 16 || n == 24; }

struct GateDecision {
    bool equal = false; // true: G_n = U2^zeta(R_n); false: infinite index
    Relation relation = Relation::Greater;
    Rat bound; // 1/12 - 1/(2n)
    ChiTable evidence;
};

inline GateDecision decide_gate_equality(long n) {
    if (n % 4 != 0 || n < 8) throw Error(ErrorCode::UnsupportedLevel, "decision needs 4 | n and n >= 8");
    GateDecision d;
    d.evidence = chi_table(n);
    d.bound = Rat(1, 12) - Rat(1, 2 * n);
    const Rat mag = abs(d.evidence.chiSU2);
    ensure(mag >= d.bound, "|chi(SU2)| below |chi(SG_n)|");
    d.relation = mag == d.bound ? Relation::Equal : Relation::Greater;
    d.equal = is_exceptional_level(n);
    ensure(d.equal == (d.relation == Relation::Equal), "verdict contradicts the Euler characteristic comparison");
    return d;
}

struct ScanRecord {
    long n = 0;
    Rat zetaMinus1, M, chiSU2, bound;
    Relation relation = Relation::Greater;
};

/// Every 4 | n with 8 <= n <= nMax, evaluated concurrently, ordered by n.
inline std::vector<ScanRecord> scan(long nMax, unsigned threads = 0) {
    if (nMax < 8) throw Error(ErrorCode::UnsupportedLevel, "scan needs nMax >= 8");
    std::vector<long> levels;
    for (long n = 8; n <= nMax; n += 4) levels.push_back(n);
    std::vector<ScanRecord> out(levels.size());
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    auto work = [&](std::size_t begin) {
        for (std::size_t i = begin; i < levels.size(); i += threads) {
            GateDecision d = decide_gate_equality(levels[i]);
            out[i] = ScanRecord{levels[i], d.evidence.zetaMinus1, d.evidence.M, d.evidence.chiSU2, d.bound, d.relation};
        }
    };
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, work, t));
    for (auto& j : jobs) j.get();
    return out;
}

// ---- analytic lower bound for large n ----

/// Rational enclosure of pi.
inline Interval pi_enclosure(long bits = 256) {
    detail::Mpfr lo(bits), hi(bits);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return {lo.to_rat(), hi.to_rat()};
}

struct BoundCheck {
    long n = 0;
    bool exactExceedsBound = false;  // |chi(SU2)| > (n^(3/4) (2 pi)^-2)^deg / (2 sqrt 2)
    bool boundExceedsTarget = false; // that bound > 1/12 - 1/(2n)
    bool aboveThreshold = false;     // n > (2 pi)^(8/3)
};

/// Checks the closed-form lower bound in exact arithmetic by raising both
/// sides to the fourth power, with pi replaced by the side of its enclosure
/// that makes each inequality harder.
inline BoundCheck bound_chain(long n) {
    if (n % 4 != 0) throw Error(ErrorCode::UnsupportedLevel, "bound chain needs 4 | n");
    BoundCheck b;
    b.n = n;
    const auto deg = static_cast<unsigned long>(euler_phi(n) / 2);
    const Interval pi = pi_enclosure();
    const Rat two_pi_lo = 2 * pi.lower, two_pi_hi = 2 * pi.upper;
    const Rat n3d(pow(Int(n), 3 * deg));
    const Rat chi = abs(chi_table(n).chiSU2);
    // |chi| > n^(3d/4) / ((2 pi)^(2d) 2 sqrt2)  <=>  |chi|^4 (2 pi)^(8d) 64 > n^(3d)
    b.exactExceedsBound = pow(chi, 4) * pow(two_pi_lo, static_cast<long>(8 * deg)) * 64 > n3d;
    const Rat target = Rat(1, 12) - Rat(1, 2 * n);
    b.boundExceedsTarget = n3d > pow(target, 4) * pow(two_pi_hi, static_cast<long>(8 * deg)) * 64;
    b.aboveThreshold = Rat(Int(n) * n * n) > pow(two_pi_hi, 8);
    return b;
}

} // namespace cliffcyc
