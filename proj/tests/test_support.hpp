#pragma once

#include <random>

#include "cliffcyc/cyclotomic.hpp"

namespace cliffcyc::fixtures {

/// Random element with small numerators and denominators drawn from {1, 2, 4, 3}.
inline CycElem random_elem(std::mt19937_64& rng, long n, bool two_local = false) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<int> pick(0, 3);
    const long dens[4] = {1, 2, 4, 3};
    std::vector<Rat> c;
    for (long j = 0; j < euler_phi(n); ++j) c.push_back(make_rat(num(rng), dens[two_local ? pick(rng) % 3 : pick(rng)]));
    return CycElem::from_coeffs(n, c);
}

inline CycElem random_real(std::mt19937_64& rng, long n, bool two_local = false) {
    CycElem a = random_elem(rng, n, two_local);
    return a + a.conj();
}

inline CycElem random_nonzero_real(std::mt19937_64& rng, long n) {
    for (;;) {
        CycElem a = random_real(rng, n);
        if (!a.is_zero()) return a;
    }
}

} // namespace cliffcyc::fixtures

#include "cliffcyc/matrix.hpp"

namespace cliffcyc::fixtures {

/// Product of `len` random H(zeta_n^j): an element of SU2(R_n).
inline UMat random_su2(std::mt19937_64& rng, long n, int len) {
    std::uniform_int_distribution<long> j(0, n - 1);
    UMat u = UMat::identity(n);
    for (int k = 0; k < len; ++k) u = u * gate_Hz(n, j(rng));
    return u;
}

/// Random word in H and T_n: an element of the Clifford-cyclotomic group.
inline UMat random_gate_product(std::mt19937_64& rng, long n, int len) {
    std::uniform_int_distribution<long> j(0, n - 1);
    const UMat h = gate_H(n), t = gate_T(n);
    UMat u = UMat::identity(n);
    for (int k = 0; k < len; ++k) u = u * h * power(t, j(rng));
    return u;
}

} // namespace cliffcyc::fixtures
