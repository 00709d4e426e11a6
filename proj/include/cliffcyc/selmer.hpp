#pragma once

// The obstruction to lifting SO3(R+) to SU2(R) and PU2(R): the functions
// phi_i / theta_ij, the square-class map phi, and constructive lifts.

#include <array>
#include <optional>

#include "matrix.hpp"
#include "squareness.hpp"
#include "zeta.hpp"

namespace cliffcyc {

/// A class in F^x / (F^x)^2 held through one totally positive representative.
struct SquareClass {
    CycElem rep;

    long level() const { return rep.level(); }
    bool is_trivial() const { return is_square(rep); }
    bool same_as(const SquareClass& other) const { return is_square(rep * inv(other.rep)); }
    friend SquareClass operator*(const SquareClass& a, const SquareClass& b) { return {a.rep * b.rep}; }
};

struct PhiProfile {
    std::array<CycElem, 4> phi;
    // theta[i][j] for i != j; the diagonal holds phi_i so that theta[i][j] = a_i a_j throughout
    std::array<std::array<CycElem, 4>, 4> theta;

    std::size_t first_nonzero() const {
        for (std::size_t i = 0; i < 4; ++i)
            if (!phi[i].is_zero()) return i;
        throw InvariantViolation("all phi_i vanish");
    }
};

inline PhiProfile phi_profile(const OMat& m) {
    if (!is_in_SO3(m)) throw Error(ErrorCode::NotSpecialOrthogonal, "phi needs an element of SO3(R+)");
    const long n = m.level();
    const CycElem one(n, 1);
    const Rat q(1, 4);
    auto M = [&](int i, int j) -> const CycElem& { return m(i - 1, j - 1); };
    PhiProfile p;
    p.phi = {(one + M(1, 1) + M(2, 2) + M(3, 3)) * q, (one - M(1, 1) - M(2, 2) + M(3, 3)) * q,
             (one - M(1, 1) + M(2, 2) - M(3, 3)) * q, (one + M(1, 1) - M(2, 2) - M(3, 3)) * q};
    auto set = [&](int i, int j, const CycElem& v) {
        p.theta[i - 1][j - 1] = v;
        p.theta[j - 1][i - 1] = v;
    };
    set(1, 2, (M(1, 2) - M(2, 1)) * q);
    set(1, 3, (M(3, 1) - M(1, 3)) * q);
    set(1, 4, (M(2, 3) - M(3, 2)) * q);
    set(3, 4, (M(1, 2) + M(2, 1)) * q);
    set(2, 4, (M(3, 1) + M(1, 3)) * q);
    set(2, 3, (M(2, 3) + M(3, 2)) * q);
    for (std::size_t i = 0; i < 4; ++i) p.theta[i][i] = p.phi[i];

    ensure(p.phi[0] + p.phi[1] + p.phi[2] + p.phi[3] == one, "sum of phi_i is not 1");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            ensure(p.phi[i] * p.phi[j] == p.theta[i][j] * p.theta[i][j], "phi_i phi_j != theta_ij^2");
    return p;
}

inline SquareClass phi_class(const PhiProfile& p) {
    const std::size_t i0 = p.first_nonzero();
    for (std::size_t j = i0 + 1; j < 4; ++j)
        if (!p.phi[j].is_zero())
            ensure(is_square(p.phi[j] / p.phi[i0]), "nonzero phi_i disagree modulo squares");
    return {p.phi[i0]};
}

inline SquareClass phi_class(const OMat& m) { return phi_class(phi_profile(m)); }

/// Exact necessary condition for membership in Sel2+: totally positive, and
/// the odd part of the norm a perfect square (every odd prime has even valuation).
inline bool selmer_valuation_check(const SquareClass& c) {
    if (!c.rep.is_in_Rn_plus() || !is_totally_positive(c.rep)) return false;
    Rat nm = c.rep.real_norm();
    Int num = abs(Rat(nm.get_num())).get_num();
    while (num != 0 && mpz_even_p(num.get_mpz_t())) num /= 2;
    return is_power_of_two(nm.get_den()) && mpz_perfect_square_p(num.get_mpz_t());
}

struct LiftResult {
    std::optional<UMat> lift;
    std::optional<SquareClass> obstruction;

    bool lifted() const { return lift.has_value(); }
};

inline LiftResult try_lift_to_SU2(const OMat& m) {
    const long n = m.level();
    const PhiProfile p = phi_profile(m);
    if (n % 4 != 0) throw Error(ErrorCode::LevelLacksI, "lifting to SU2 needs i in the field (4 | n)");
    const std::size_t i0 = p.first_nonzero();
    const auto cert = is_square_in_F(p.phi[i0]);
    if (!cert.is_square()) return {std::nullopt, SquareClass{p.phi[i0]}};

    std::array<CycElem, 4> a;
    a[i0] = *cert.root;
    if (embedding_signs(a[i0]).front() < 0) a[i0] = -a[i0];
    const CycElem inv0 = inv(a[i0]);
    for (std::size_t j = 0; j < 4; ++j)
        if (j != i0) a[j] = p.theta[i0][j] * inv0;
    for (std::size_t j = 0; j < 4; ++j) ensure(a[j] * a[j] == p.phi[j], "lift coordinate does not square to phi");

    const CycElem i = imag_unit(n);
    UMat A = make_umat(n, a[0] + a[1] * i, a[2] + a[3] * i, -a[2] + a[3] * i, a[0] - a[1] * i);
    ensure(adjoint(A) == m, "constructed lift does not map back");
    return {A, std::nullopt};
}

/// At n = 2^s (n >= 8) and n = 3 * 2^s (4 | n) every element of SO3(R_n+) is
/// the image of M or of T_n M' with M' in SU2(R_n).
inline LiftResult try_lift_to_U2_supported(const OMat& m) {
    const long n = m.level();
    if (!has_known_c(n)) throw Error(ErrorCode::UnsupportedLevel, "U2 lift is supported only at n = 2^s, 3*2^s");
    LiftResult direct = try_lift_to_SU2(m);
    if (direct.lifted()) return direct;
    const UMat t = gate_T(n);
    LiftResult shifted = try_lift_to_SU2(inverse(pi_map(t)) * m);
    if (!shifted.lifted()) throw InvariantViolation("both lifting branches obstructed at a supported level");
    UMat g = t * *shifted.lift;
    ensure(pi_map(g) == m, "U2 lift does not map back");
    return {g, std::nullopt};
}

/// phi_i(MN) phi_i(M) phi_i(N) expanded over theta; the sign is -1 when 1 is among the subscripts.
inline bool phi_product_identity(const PhiProfile& pm, const PhiProfile& pn, const PhiProfile& pmn) {
    for (std::size_t i = 0; i < 4; ++i) {
        CycElem s = pm.phi[i] * pn.phi[i];
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == i) continue;
            const CycElem t = pm.theta[i][j] * pn.theta[i][j];
            if (i == 0 || j == 0)
                s -= t;
            else
                s += t;
        }
        if (pm.phi[i] * pn.phi[i] * pmn.phi[0] != s * s) return false;
    }
    return true;
}

inline bool homomorphism_check(const OMat& m, const OMat& n) {
    const PhiProfile pm = phi_profile(m), pn = phi_profile(n), pmn = phi_profile(m * n);
    if (!phi_product_identity(pm, pn, pmn)) return false;
    return phi_class(pmn).same_as(phi_class(pm) * phi_class(pn));
}

struct SelmerTable {
    long n = 0;
    long rank = 0;
    long c = 0;
    long cbar = 0;
};

inline SelmerTable selmer_table(long n) {
    auto k = known_c(n);
    if (!k) throw Error(ErrorCode::UnsupportedLevel, "Selmer data are tabulated only for n = 2^s, 3*2^s");
    const SplitData s = split_data(n);
    SelmerTable t{n, 1, k->c, k->cbar};
    ensure(Rat(t.c) == pow(Rat(2), 1 + s.r - s.rPlus) * t.cbar, "c != 2^(1+r-r+) cbar");
    return t;
}

// ---- a non-lifting element over Z[sqrt21, 1/2] ----

struct DrearyWitness {
    CycElem sqrt21; // level 21
    CycElem u;      // (5 + sqrt21) / 2, level 21
    OMat Tq;        // level 21
    UMat Mq;        // level 84
    bool tqInSO3 = false;
    bool tqOverZsqrt21 = false;
    bool mqNormIsU = false;     // Mq Mq^dagger = u I
    bool mqInducesTq = false;   // X -> Mq X Mq^dagger / u is Tq on the Pauli basis
    bool classIsU = false;      // phi(Tq) = [u]
    bool uTotallyPositive = false;
    bool uNonsquare = false;
};

inline CycElem sqrt21() {
    const long n = 21;
    const CycElem z3 = CycElem::zeta(n, 7), z7 = CycElem::zeta(n, 3);
    const CycElem g3 = z3 - z3 * z3;
    CycElem g7(n);
    for (long a = 1; a < 7; ++a) {
        const bool residue = a == 1 || a == 2 || a == 4;
        CycElem t = CycElem::zeta(n, 3 * a);
        g7 = residue ? g7 + t : g7 - t;
    }
    CycElem s = g3 * g7;
    ensure(s * s == CycElem(n, 21), "Gauss sum product does not square to 21");
    if (embedding_signs(s).front() < 0) s = -s;
    return s;
}

/// x = x0 + y0 sqrt21 with x0, y0 in Z[1/2].
inline bool in_Z_sqrt21_half(const CycElem& x, const CycElem& s) {
    long k = 2;
    while (s.galois(k) != -s) ++k;
    const CycElem x0 = (x + x.galois(k)) * Rat(1, 2);
    const CycElem y0 = (x - x.galois(k)) * Rat(1, 2) / s;
    if (!x0.is_rational() || !y0.is_rational()) return false;
    if (x0 + y0 * s != x) return false;
    return is_power_of_two(x0.rational_value().get_den()) && is_power_of_two(y0.rational_value().get_den());
}

inline DrearyWitness example_dreary_witness() {
    DrearyWitness w;
    const long n = 21, big = 84;
    const CycElem s = sqrt21();
    w.sqrt21 = s;
    const CycElem one(n, 1);
    w.u = (CycElem(n, 5) + s) * Rat(1, 2);
    const CycElem p = (s + CycElem(n, 3)) * Rat(1, 8), m = (CycElem(n, 3) - s) * Rat(1, 8), q = one * Rat(1, 4);
    w.Tq = OMat(n, {{{p, q, m}, {m, p, q}, {q, m, p}}});

    const CycElem i = imag_unit(big), S = s.level_raise(big), c(big, 4);
    const Rat quarter(1, 4);
    w.Mq = make_umat(big, (c + S + i) * quarter, (CycElem(big, 1) + i) * quarter, (i - CycElem(big, 1)) * quarter,
                     (c + S - i) * quarter);

    w.tqInSO3 = is_in_SO3(w.Tq);
    w.tqOverZsqrt21 = true;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t col = 0; col < 3; ++col) w.tqOverZsqrt21 = w.tqOverZsqrt21 && in_Z_sqrt21_half(w.Tq(r, col), s);

    const CycElem U = w.u.level_raise(big);
    w.mqNormIsU = w.Mq * w.Mq.dagger() == UMat::diagonal(big, {U, U});

    const UMat basis[3] = {sigma_x(big), sigma_y(big), sigma_z(big)};
    const OMat tq84 = w.Tq.level_raise(big);
    w.mqInducesTq = true;
    for (std::size_t j = 0; j < 3; ++j) {
        PauliVec v = to_pauli(w.Mq * basis[j] * w.Mq.dagger());
        const CycElem col[3] = {v.x / U, v.y / U, v.z / U};
        for (std::size_t r = 0; r < 3; ++r) w.mqInducesTq = w.mqInducesTq && col[r] == tq84(r, j);
    }

    w.uTotallyPositive = is_totally_positive(w.u);
    w.uNonsquare = !is_square(w.u);
    w.classIsU = w.tqInSO3 && phi_class(w.Tq).same_as(SquareClass{w.u});
    return w;
}

} // namespace cliffcyc
