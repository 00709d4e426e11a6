#pragma once

// Certified squareness in the maximal real subfield F of Q(zeta_n).
//
// NonSquare verdicts carry a proof: either a quadratic non-residue at a prime
// p = 1 (mod n) (which splits completely, so F embeds into Q_p) or a negative
// real embedding. Square verdicts carry an explicit root verified by exact
// squaring. The root is found by Hensel lifting square roots at every
// embedding into Z/p^e, interpolating on the power basis and testing the
// sign patterns of the conjugate pairs.

#include <optional>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "embedding.hpp"

namespace cliffcyc {

struct SquarenessOptions {
    int max_primes = 10;
    unsigned max_exponent = 64;
};

struct SquarenessCertificate {
    enum class Verdict { Square, NonSquare };
    enum class Witness { None, ResidueAtSplitPrime, NegativeEmbedding };

    Verdict verdict = Verdict::NonSquare;
    std::optional<CycElem> root;
    Witness witness = Witness::None;
    long witness_prime = 0;     // the split prime p
    long witness_embedding = 0; // k with zeta -> omega^k (or real embedding index)
    Int witness_residue;        // image of the scaled input at that embedding, mod p

    bool is_square() const noexcept { return verdict == Verdict::Square; }
};

namespace detail {

inline long mulmod(long a, long b, long m) { return static_cast<long>((__int128)a * b % m); }

inline long powmod(long b, long e, long m) {
    long r = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

/// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
inline long sqrt_mod_prime(long a, long p) {
    a = mod(a, p);
    if (a == 0) return 0;
    long q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    long z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    long m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        long i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        long b = c;
        for (long j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

/// An element of exact order n modulo p; requires p = 1 (mod n).
inline long root_of_unity_mod_prime(long n, long p) {
    const auto qs = prime_divisors(n);
    for (long g = 2; g < p; ++g) {
        long w = powmod(g, (p - 1) / n, p);
        bool ok = true;
        for (long q : qs)
            if (powmod(w, n / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return w;
    }
    if (n == 1) return 1;
    throw InvariantViolation("no primitive root of unity modulo a split prime");
}

/// Odd primes p = 1 (mod n), ascending, beyond `after`.
inline long next_split_prime(long n, long after) {
    const long step = (n % 2 == 0) ? n : 2 * n;
    long p = after + 1;
    p += mod(1 - p, step);
    while (!is_prime(p) || p == 2) p += step;
    return p;
}

inline Int eval_mod(const IntPoly& poly, const Int& x, const Int& modulus) {
    Int acc(0);
    for (std::size_t k = poly.size(); k-- > 0;) {
        acc = acc * x + poly[k];
        acc %= modulus;
    }
    if (acc < 0) acc += modulus;
    return acc;
}

inline Int inverse_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InvariantViolation("non-invertible element modulo a prime power");
    return r;
}

/// Newton iteration for a simple root of f modulo m, starting from a root mod p.
inline Int hensel_root(const IntPoly& f, Int x, const Int& m, unsigned steps) {
    IntPoly df;
    for (std::size_t k = 1; k < f.size(); ++k) df.push_back(f[k] * static_cast<long>(k));
    for (unsigned i = 0; i < steps; ++i) {
        Int fx = eval_mod(f, x, m);
        if (fx == 0) break;
        x = (x - fx * inverse_mod(eval_mod(df, x, m), m)) % m;
        if (x < 0) x += m;
    }
    ensure(eval_mod(f, x, m) == 0, "Hensel lifting did not converge");
    return x;
}

/// Inverse of a square matrix modulo m (pivots must be units mod m).
inline std::vector<std::vector<Int>> invert_mod(std::vector<std::vector<Int>> a, const Int& m) {
    const std::size_t n = a.size();
    std::vector<std::vector<Int>> inv(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && gcd(a[piv][col], m) != 1) ++piv;
        ensure(piv < n, "Vandermonde matrix singular modulo a split prime");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Int s = inverse_mod(a[col][col], m);
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] = a[col][j] * s % m;
            inv[col][j] = inv[col][j] * s % m;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Int f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] = (a[r][j] - f * a[col][j]) % m;
                inv[r][j] = (inv[r][j] - f * inv[col][j]) % m;
            }
        }
    }
    return inv;
}

inline std::optional<CycElem> lift_square_root(const CycElem& scaled, long p, unsigned exponent) {
    const long n = scaled.level();
    const IntPoly& vals = scaled.numerators();
    const IntPoly& cyc = scaled.context().poly;
    const Int modulus = pow(Int(p), exponent);
    const Int half = modulus / 4;
    unsigned steps = 2;
    while ((1U << steps) < exponent + 1) ++steps;
    ++steps;

    const Int omega = hensel_root(cyc, Int(root_of_unity_mod_prime(n, p)), modulus, steps);
    std::vector<long> nodes;
    for (long k = 1; k <= n; ++k)
        if (gcd_long(k, n) == 1) nodes.push_back(k % n);
    const std::size_t phi = nodes.size();

    std::vector<std::vector<Int>> vander(phi, std::vector<Int>(phi));
    std::vector<Int> node_point(phi);
    for (std::size_t r = 0; r < phi; ++r) {
        Int x;
        mpz_powm_ui(x.get_mpz_t(), omega.get_mpz_t(), static_cast<unsigned long>(nodes[r]), modulus.get_mpz_t());
        node_point[r] = x;
        Int acc(1);
        for (std::size_t j = 0; j < phi; ++j) {
            vander[r][j] = acc;
            acc = acc * x % modulus;
        }
    }
    const auto vinv = invert_mod(vander, modulus);

    // square roots at the representatives k <= n/2; node n-k shares the value
    const auto reps = CycElem::real_embedding_indices(n);
    std::vector<Int> rep_root(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        Int x;
        mpz_powm_ui(x.get_mpz_t(), omega.get_mpz_t(), static_cast<unsigned long>(reps[i]), modulus.get_mpz_t());
        Int v = eval_mod(vals, x, modulus);
        long r0 = sqrt_mod_prime(Int(v % p).get_si(), p);
        IntPoly sq{Int(-v), Int(0), Int(1)};
        rep_root[i] = hensel_root(sq, Int(r0), modulus, steps);
    }
    std::vector<std::size_t> rep_of(phi);
    std::vector<bool> rep_is_conj(phi);
    for (std::size_t r = 0; r < phi; ++r) {
        long k = nodes[r];
        long kk = (2 * k > n) ? n - k : k;
        if (n <= 2) kk = 1;
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (reps[i] == kk) rep_of[r] = i;
    }

    const std::size_t pairs = reps.size();
    ensure(pairs <= 20, "too many sign patterns");
    const unsigned long combos = 1UL << (pairs - 1);
    for (unsigned long mask = 0; mask < combos; ++mask) {
        std::vector<Int> b(phi);
        for (std::size_t r = 0; r < phi; ++r) {
            std::size_t i = rep_of[r];
            bool neg = i > 0 && ((mask >> (i - 1)) & 1UL);
            b[r] = neg ? Int(modulus - rep_root[i]) : rep_root[i];
        }
        std::vector<Rat> coeffs(phi);
        bool plausible = true;
        for (std::size_t j = 0; j < phi && plausible; ++j) {
            Int c(0);
            for (std::size_t r = 0; r < phi; ++r) c += vinv[j][r] * b[r];
            c %= modulus;
            if (c < 0) c += modulus;
            if (c > modulus / 2) c -= modulus;
            if (abs(c) > half) plausible = false;
            coeffs[j] = Rat(c);
        }
        if (!plausible) continue;
        CycElem cand = CycElem::from_coeffs(n, coeffs);
        if (cand * cand == scaled) return cand;
    }
    return std::nullopt;
}

} // namespace detail

/// Decide whether a nonzero real element is a square in the real subfield.
inline SquarenessCertificate is_square_in_F(const CycElem& a, const SquarenessOptions& opt = {}) {
    if (!a.is_real()) throw Error(ErrorCode::NotReal, "squareness test needs a real element");
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "squareness of zero");
    const long n = a.level();
    SquarenessCertificate cert;

    if (a.is_rational()) {
        Rat r = a.rational_value();
        if (r > 0 && mpz_perfect_square_p(r.get_num_mpz_t()) && mpz_perfect_square_p(r.get_den_mpz_t())) {
            Int sn, sd;
            mpz_sqrt(sn.get_mpz_t(), r.get_num_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), r.get_den_mpz_t());
            cert.verdict = SquarenessCertificate::Verdict::Square;
            cert.root = CycElem(n, make_rat(sn, sd));
            return cert;
        }
    }

    // a * den^2 has integer coordinates, and so does its square root
    const Int& den = a.denominator();
    const CycElem scaled = a * Rat(den * den);
    const auto reps = CycElem::real_embedding_indices(n);

    std::vector<long> tested;
    long p = 2;
    while (static_cast<int>(tested.size()) < opt.max_primes) {
        p = detail::next_split_prime(n, p);
        if (den % p == 0) continue;
        const long w = detail::root_of_unity_mod_prime(n, p);
        std::vector<Int> images;
        bool degenerate = false;
        for (long k : reps) {
            Int v = detail::eval_mod(scaled.numerators(), Int(detail::powmod(w, k, p)), Int(p));
            if (v == 0) degenerate = true;
            images.push_back(v);
        }
        if (degenerate) continue;
        tested.push_back(p);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (mpz_legendre(images[i].get_mpz_t(), Int(p).get_mpz_t()) == -1) {
                cert.witness = SquarenessCertificate::Witness::ResidueAtSplitPrime;
                cert.witness_prime = p;
                cert.witness_embedding = reps[i];
                cert.witness_residue = images[i];
                return cert;
            }
        }
    }

    const auto signs = embedding_signs(a);
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] < 0) {
            cert.witness = SquarenessCertificate::Witness::NegativeEmbedding;
            cert.witness_embedding = reps[i];
            return cert;
        }
    }

    for (unsigned e = 4; e <= opt.max_exponent; e *= 2) {
        if (auto beta = detail::lift_square_root(scaled, tested.front(), e)) {
            CycElem root = *beta / Rat(den);
            ensure(root * root == a, "certified square root does not square back");
            cert.verdict = SquarenessCertificate::Verdict::Square;
            cert.root = std::move(root);
            return cert;
        }
    }
    throw Error(ErrorCode::Undecided, "all residue tests passed but no square root was reconstructed");
}

inline bool is_square(const CycElem& a, const SquarenessOptions& opt = {}) { return is_square_in_F(a, opt).is_square(); }

} // namespace cliffcyc
