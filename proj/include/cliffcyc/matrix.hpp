#pragma once

// Exact 2x2 and 3x3 matrices over Q(zeta_n), membership in the unitary and
// orthogonal groups over R_n and R_n^+, the adjoint map SU2 -> SO3 and its
// extension pi to U2, and the named gates.

#include <array>
#include <optional>
#include <ostream>

#include "cyclotomic.hpp"

namespace cliffcyc {

template <std::size_t Dim>
class SquareMatrix {
public:
    using Row = std::array<CycElem, Dim>;

    SquareMatrix() : SquareMatrix(1) {}

    explicit SquareMatrix(long n) : n_(n) {
        for (auto& row : e_) row.fill(CycElem(n));
    }

    SquareMatrix(long n, std::array<Row, Dim> entries) : n_(n), e_(std::move(entries)) {
        for (const auto& row : e_)
            for (const auto& x : row)
                if (x.level() != n) throw Error(ErrorCode::LevelMismatch, "matrix entries must share the matrix level");
    }

    static SquareMatrix identity(long n) {
        SquareMatrix m(n);
        for (std::size_t i = 0; i < Dim; ++i) m.e_[i][i] = CycElem(n, 1);
        return m;
    }

    static SquareMatrix diagonal(long n, const std::array<CycElem, Dim>& d) {
        SquareMatrix m(n);
        for (std::size_t i = 0; i < Dim; ++i) m.e_[i][i] = d[i];
        return m;
    }

    long level() const noexcept { return n_; }
    static constexpr std::size_t dim() noexcept { return Dim; }

    const CycElem& operator()(std::size_t i, std::size_t j) const { return e_[i][j]; }
    CycElem& operator()(std::size_t i, std::size_t j) { return e_[i][j]; }

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }
    friend bool operator!=(const SquareMatrix& a, const SquareMatrix& b) { return !(a == b); }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        if (a.n_ != b.n_) throw Error(ErrorCode::LevelMismatch, "matrix levels differ");
        SquareMatrix r(a.n_);
        for (std::size_t i = 0; i < Dim; ++i)
            for (std::size_t j = 0; j < Dim; ++j) {
                CycElem acc(a.n_);
                for (std::size_t k = 0; k < Dim; ++k)
                    if (!a.e_[i][k].is_zero() && !b.e_[k][j].is_zero()) acc += a.e_[i][k] * b.e_[k][j];
                r.e_[i][j] = std::move(acc);
            }
        return r;
    }

    friend SquareMatrix operator*(const CycElem& s, const SquareMatrix& a) {
        SquareMatrix r = a;
        for (auto& row : r.e_)
            for (auto& x : row) x = s * x;
        return r;
    }

    SquareMatrix operator-() const { return CycElem(n_, -1) * *this; }

    SquareMatrix transpose() const {
        SquareMatrix r(n_);
        for (std::size_t i = 0; i < Dim; ++i)
            for (std::size_t j = 0; j < Dim; ++j) r.e_[i][j] = e_[j][i];
        return r;
    }

    /// Conjugate transpose.
    SquareMatrix dagger() const {
        SquareMatrix r(n_);
        for (std::size_t i = 0; i < Dim; ++i)
            for (std::size_t j = 0; j < Dim; ++j) r.e_[i][j] = e_[j][i].conj();
        return r;
    }

    SquareMatrix level_raise(long m) const {
        SquareMatrix r(m);
        for (std::size_t i = 0; i < Dim; ++i)
            for (std::size_t j = 0; j < Dim; ++j) r.e_[i][j] = e_[i][j].level_raise(m);
        return r;
    }

    bool is_identity() const { return *this == identity(n_); }

    bool entries_in_Rn() const {
        for (const auto& row : e_)
            for (const auto& x : row)
                if (!x.is_in_Rn()) return false;
        return true;
    }

    bool entries_in_Rn_plus() const {
        for (const auto& row : e_)
            for (const auto& x : row)
                if (!x.is_in_Rn_plus()) return false;
        return true;
    }

    bool entries_real() const {
        for (const auto& row : e_)
            for (const auto& x : row)
                if (!x.is_real()) return false;
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const SquareMatrix& m) {
        os << "[";
        for (std::size_t i = 0; i < Dim; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < Dim; ++j) os << (j ? ", " : "") << m.e_[i][j];
        }
        return os << "]";
    }

private:
    long n_;
    std::array<Row, Dim> e_;
};

using UMat = SquareMatrix<2>;
using OMat = SquareMatrix<3>;

inline CycElem det(const UMat& u) { return u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0); }

inline CycElem det(const OMat& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline UMat make_umat(long n, const CycElem& a, const CycElem& b, const CycElem& c, const CycElem& d) {
    return UMat(n, {{{a, b}, {c, d}}});
}

inline bool is_unitary(const UMat& u) { return (u * u.dagger()).is_identity(); }

/// Inverse of an invertible 2x2 matrix via the adjugate.
inline UMat inverse(const UMat& u) {
    CycElem d = det(u);
    CycElem s = d.inv();
    return make_umat(u.level(), s * u(1, 1), -(s * u(0, 1)), -(s * u(1, 0)), s * u(0, 0));
}

/// Inverse of an orthogonal matrix.
inline OMat inverse(const OMat& m) {
    OMat t = m.transpose();
    ensure((m * t).is_identity(), "inverse requested for a non-orthogonal 3x3 matrix");
    return t;
}

template <std::size_t Dim>
SquareMatrix<Dim> power(const SquareMatrix<Dim>& m, long k) {
    SquareMatrix<Dim> base = k < 0 ? inverse(m) : m;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    SquareMatrix<Dim> acc = SquareMatrix<Dim>::identity(m.level());
    while (e) {
        if (e & 1UL) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

struct Membership {
    bool inU2 = false;
    bool inU2zeta = false;
    bool inSU2 = false;
    std::optional<long> detPower; // j with det = zeta_n^j
};

/// Exponent j with x = zeta_n^j, if any.
inline std::optional<long> root_of_unity_exponent(const CycElem& x) {
    const long n = x.level();
    for (long j = 0; j < n; ++j)
        if (x == CycElem::zeta(n, j)) return j;
    return std::nullopt;
}

inline Membership membership(const UMat& u) {
    Membership m;
    m.inU2 = u.entries_in_Rn() && is_unitary(u);
    CycElem d = det(u);
    m.detPower = root_of_unity_exponent(d);
    m.inU2zeta = m.inU2 && m.detPower.has_value();
    m.inSU2 = m.inU2 && d.is_one();
    return m;
}

/// Coordinates of a trace-0 hermitian matrix x sigma_x + y sigma_y + z sigma_z.
struct PauliVec {
    CycElem x, y, z;
};

inline UMat sigma_x(long n) { return make_umat(n, CycElem(n), CycElem(n, 1), CycElem(n, 1), CycElem(n)); }
inline UMat sigma_y(long n) {
    CycElem i = imag_unit(n);
    return make_umat(n, CycElem(n), -i, i, CycElem(n));
}
inline UMat sigma_z(long n) { return make_umat(n, CycElem(n, 1), CycElem(n), CycElem(n), CycElem(n, -1)); }

inline UMat to_hermitian(const PauliVec& v) {
    const long n = v.x.level();
    CycElem i = imag_unit(n);
    return make_umat(n, v.z, v.x - i * v.y, v.x + i * v.y, -v.z);
}

inline PauliVec to_pauli(const UMat& h) {
    const long n = h.level();
    CycElem i = imag_unit(n);
    Rat half(1, 2);
    PauliVec v{(h(0, 1) + h(1, 0)) * half, (h(1, 0) - h(0, 1)) * half / i, (h(0, 0) - h(1, 1)) * half};
    ensure(to_hermitian(v) == h, "matrix is not trace-0 hermitian");
    return v;
}

/// The entries (a, b, c, d) of [[a + bi, c + di], [-c + di, a - bi]] with a..d real.
struct QuaternionCoords {
    CycElem a, b, c, d;
};

inline QuaternionCoords quaternion_coords(const UMat& u) {
    const long n = u.level();
    CycElem i = imag_unit(n);
    Rat half(1, 2);
    QuaternionCoords q{(u(0, 0) + u(0, 0).conj()) * half, (u(0, 0) - u(0, 0).conj()) * half / i,
                       (u(0, 1) + u(0, 1).conj()) * half, (u(0, 1) - u(0, 1).conj()) * half / i};
    if (u(1, 0) != -q.c + i * q.d || u(1, 1) != q.a - i * q.b)
        throw Error(ErrorCode::NotSpecialUnitary, "matrix does not have the SU2 shape [[a+bi, c+di], [-c+di, a-bi]]");
    return q;
}

/// The adjoint representation SU2 -> SO3, written out in the (a, b, c, d) coordinates.
inline OMat adjoint(const UMat& u) {
    const long n = u.level();
    if (n % 4 != 0) throw Error(ErrorCode::LevelLacksI, "adjoint needs i in the field (4 | n)");
    if (!det(u).is_one() || !is_unitary(u)) throw Error(ErrorCode::NotSpecialUnitary, "adjoint needs det 1 and unitarity");
    auto [a, b, c, d] = quaternion_coords(u);
    const CycElem aa = a * a, bb = b * b, cc = c * c, dd = d * d;
    const CycElem ab = a * b, ac = a * c, ad = a * d, bc = b * c, bd = b * d, cd = c * d;
    const CycElem two(n, 2);
    OMat m(n, {{{aa - bb - cc + dd, two * (ab + cd), two * (bd - ac)},
                {two * (cd - ab), aa - bb + cc - dd, two * (ad + bc)},
                {two * (ac + bd), two * (bc - ad), aa + bb - cc - dd}}});
    return m;
}

/// Conjugation action X -> g X g^dagger on the Pauli basis; column j is the
/// image of sigma_j. For unitary g this agrees with adjoint(g / sqrt(det g)).
inline OMat pi_map(const UMat& g) {
    const long n = g.level();
    if (n % 4 != 0) throw Error(ErrorCode::LevelLacksI, "pi needs i in the field (4 | n)");
    if (!g.entries_in_Rn() || !is_unitary(g)) throw Error(ErrorCode::NotUnitary, "pi needs an element of U2(R_n)");
    const UMat gd = g.dagger();
    const UMat basis[3] = {sigma_x(n), sigma_y(n), sigma_z(n)};
    OMat m(n);
    for (std::size_t j = 0; j < 3; ++j) {
        PauliVec v = to_pauli(g * basis[j] * gd);
        m(0, j) = v.x;
        m(1, j) = v.y;
        m(2, j) = v.z;
    }
    return m;
}

inline bool is_in_SO3(const OMat& m) {
    return m.entries_in_Rn_plus() && (m * m.transpose()).is_identity() && det(m).is_one();
}

inline OMat M_x(long n) { return OMat::diagonal(n, {CycElem(n, 1), CycElem(n, -1), CycElem(n, -1)}); }
inline OMat M_y(long n) { return OMat::diagonal(n, {CycElem(n, -1), CycElem(n, 1), CycElem(n, -1)}); }
inline OMat M_z(long n) { return OMat::diagonal(n, {CycElem(n, -1), CycElem(n, -1), CycElem(n, 1)}); }

// ---- gates ----

/// T_n = diag(1, zeta_n).
inline UMat gate_T(long n) { return UMat::diagonal(n, {CycElem(n, 1), CycElem::zeta(n, 1)}); }

/// H = (1/2) [[1+i, 1+i], [1+i, -1-i]].
inline UMat gate_H(long n) {
    CycElem h = (CycElem(n, 1) + imag_unit(n)) * Rat(1, 2);
    return make_umat(n, h, h, h, -h);
}

/// H(z) = (1/2) [[1+i, z(1+i)], [conj(z)(-1+i), 1-i]] with z = zeta_n^j.
inline UMat gate_Hz(long n, long j) {
    CycElem i = imag_unit(n);
    CycElem one(n, 1);
    CycElem zz = CycElem::zeta(n, j);
    Rat half(1, 2);
    return make_umat(n, (one + i) * half, zz * (one + i) * half, zz.conj() * (i - one) * half, (one - i) * half);
}

/// U = lambda V with lambda a root of unity of R_n; returns the exponent of lambda.
inline std::optional<long> projective_equal(const UMat& u, const UMat& v) {
    if (u.level() != v.level()) throw Error(ErrorCode::LevelMismatch, "matrix levels differ");
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            if (v(i, j).is_zero()) continue;
            auto k = root_of_unity_exponent(u(i, j) / v(i, j));
            if (!k) return std::nullopt;
            if (CycElem::zeta(u.level(), *k) * v == u) return k;
            return std::nullopt;
        }
    return std::nullopt;
}

} // namespace cliffcyc
