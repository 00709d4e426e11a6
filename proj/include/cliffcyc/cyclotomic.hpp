#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_n) on the power basis
// 1, zeta, ..., zeta^(phi(n)-1), reduced modulo the cyclotomic polynomial.

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace cliffcyc {

using IntPoly = std::vector<Int>; // coefficients, lowest degree first

namespace detail {

inline void trim(IntPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

/// Quotient of a by a monic divisor b; the division must be exact.
inline IntPoly exact_div_monic(IntPoly a, const IntPoly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return {Int(0)};
    IntPoly q(a.size() - db, Int(0));
    for (std::size_t k = a.size(); k-- > db;) {
        Int c = a[k];
        q[k - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
    }
    for (std::size_t j = 0; j < db; ++j) ensure(a[j] == 0, "cyclotomic division left a remainder");
    return q;
}

IntPoly cyclotomic_poly_uncached(long n);

} // namespace detail

/// Phi_n, monic of degree phi(n).
inline IntPoly cyclotomic_poly(long n) {
    if (n < 1) throw Error(ErrorCode::UnsupportedLevel, "cyclotomic level must be positive");
    static std::mutex mu;
    static std::map<long, IntPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    IntPoly p = detail::cyclotomic_poly_uncached(n);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, p);
    return p;
}

namespace detail {

inline IntPoly cyclotomic_poly_uncached(long n) {
    IntPoly num(static_cast<std::size_t>(n) + 1, Int(0));
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) num = exact_div_monic(num, cyclotomic_poly(d));
    return num;
}

} // namespace detail

/// Per-level tables shared read-only by every element of that level.
struct LevelContext {
    long n = 1;
    long phi = 1;
    IntPoly poly;
    // powers[k] = x^k mod Phi_n for 0 <= k < size
    std::vector<IntPoly> powers;

    const IntPoly& power(long k) const { return powers[static_cast<std::size_t>(k)]; }
};

inline std::shared_ptr<const LevelContext> level_context(long n) {
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const LevelContext>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto ctx = std::make_shared<LevelContext>();
    ctx->n = n;
    ctx->poly = cyclotomic_poly(n);
    ctx->phi = static_cast<long>(ctx->poly.size()) - 1;
    const long count = std::max(n, 2 * ctx->phi - 1);
    const auto phi = static_cast<std::size_t>(ctx->phi);
    IntPoly cur(phi, Int(0));
    cur[0] = 1;
    for (long k = 0; k < count; ++k) {
        ctx->powers.push_back(cur);
        // multiply by x and reduce with the monic relation x^phi = -sum poly[j] x^j
        Int top = cur[phi - 1];
        for (std::size_t j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (std::size_t j = 0; j < phi; ++j) cur[j] -= top * ctx->poly[j];
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(n, std::move(ctx));
    return it->second;
}

/// Element of Q(zeta_n), stored as an integer vector over a common positive
/// denominator in lowest terms.
class CycElem {
public:
    CycElem() : CycElem(1) {}

    explicit CycElem(long n) : ctx_(level_context(n)), num_(static_cast<std::size_t>(ctx_->phi), Int(0)), den_(1) {}

    CycElem(long n, const Rat& r) : CycElem(n) {
        num_[0] = r.get_num();
        den_ = r.get_den();
    }

    CycElem(long n, long value) : CycElem(n, Rat(value)) {}

    /// Coordinates on the power basis; length must be phi(n).
    static CycElem from_coeffs(long n, const std::vector<Rat>& coeffs) {
        CycElem e(n);
        if (static_cast<long>(coeffs.size()) != e.ctx_->phi)
            throw Error(ErrorCode::ParseError, "coefficient vector length must equal phi(n)");
        return from_poly(n, coeffs);
    }

    /// Any rational polynomial in zeta_n, reduced modulo Phi_n.
    static CycElem from_poly(long n, const std::vector<Rat>& poly) {
        CycElem e(n);
        Int den(1);
        for (const auto& c : poly) den = lcm(den, Int(c.get_den()));
        const auto phi = static_cast<std::size_t>(e.ctx_->phi);
        IntPoly work(std::max(poly.size(), phi), Int(0));
        for (std::size_t k = 0; k < poly.size(); ++k) work[k] = poly[k].get_num() * (den / poly[k].get_den());
        e.num_ = reduce(*e.ctx_, std::move(work));
        e.den_ = den;
        e.normalize();
        return e;
    }

    /// zeta_n^k for any integer k.
    static CycElem zeta(long n, long k = 1) {
        CycElem e(n);
        e.num_ = e.ctx_->power(mod(k, n));
        return e;
    }

    long level() const noexcept { return ctx_->n; }
    long degree() const noexcept { return ctx_->phi; }
    const LevelContext& context() const noexcept { return *ctx_; }

    const IntPoly& numerators() const noexcept { return num_; }
    const Int& denominator() const noexcept { return den_; }

    Rat coeff(std::size_t j) const { return make_rat(num_[j], den_); }

    std::vector<Rat> coeffs() const {
        std::vector<Rat> out;
        out.reserve(num_.size());
        for (std::size_t j = 0; j < num_.size(); ++j) out.push_back(coeff(j));
        return out;
    }

    bool is_zero() const {
        for (const auto& c : num_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t j = 1; j < num_.size(); ++j)
            if (num_[j] != 0) return false;
        return true;
    }

    /// Constant coordinate; meaningful when is_rational().
    Rat rational_value() const { return coeff(0); }

    bool is_one() const { return is_rational() && den_ == 1 && num_[0] == 1; }

    friend bool operator==(const CycElem& a, const CycElem& b) {
        return a.level() == b.level() && a.den_ == b.den_ && a.num_ == b.num_;
    }
    friend bool operator!=(const CycElem& a, const CycElem& b) { return !(a == b); }

    CycElem operator-() const {
        CycElem r = *this;
        for (auto& c : r.num_) c = -c;
        return r;
    }

    friend CycElem operator+(const CycElem& a, const CycElem& b) {
        check_level(a, b);
        CycElem r(a.level());
        r.den_ = a.den_ * b.den_;
        for (std::size_t j = 0; j < r.num_.size(); ++j) r.num_[j] = a.num_[j] * b.den_ + b.num_[j] * a.den_;
        r.normalize();
        return r;
    }

    friend CycElem operator-(const CycElem& a, const CycElem& b) { return a + (-b); }

    friend CycElem operator*(const CycElem& a, const CycElem& b) {
        check_level(a, b);
        const std::size_t phi = a.num_.size();
        IntPoly prod(2 * phi - 1, Int(0));
        for (std::size_t i = 0; i < phi; ++i) {
            if (a.num_[i] == 0) continue;
            for (std::size_t j = 0; j < phi; ++j)
                if (b.num_[j] != 0) prod[i + j] += a.num_[i] * b.num_[j];
        }
        CycElem r(a.level());
        r.num_ = reduce(*a.ctx_, std::move(prod));
        r.den_ = a.den_ * b.den_;
        r.normalize();
        return r;
    }

    friend CycElem operator*(const CycElem& a, const Rat& s) {
        CycElem r = a;
        for (auto& c : r.num_) c *= s.get_num();
        r.den_ *= s.get_den();
        r.normalize();
        return r;
    }
    friend CycElem operator*(const Rat& s, const CycElem& a) { return a * s; }

    friend CycElem operator/(const CycElem& a, const CycElem& b) { return a * b.inv(); }
    friend CycElem operator/(const CycElem& a, const Rat& s) {
        if (s == 0) throw Error(ErrorCode::DivisionByZero, "division by rational zero");
        return a * Rat(1 / s);
    }

    CycElem& operator+=(const CycElem& b) { return *this = *this + b; }
    CycElem& operator-=(const CycElem& b) { return *this = *this - b; }
    CycElem& operator*=(const CycElem& b) { return *this = *this * b; }

    /// Multiplicative inverse via extended Euclid against Phi_n over Q.
    CycElem inv() const;

    /// zeta -> zeta^k; requires gcd(k, n) = 1.
    CycElem galois(long k) const {
        const long n = level();
        if (gcd_long(mod(k, n), n) != 1) throw Error(ErrorCode::NotAutomorphism, "galois exponent not coprime to level");
        const long kk = mod(k, n);
        IntPoly acc(num_.size(), Int(0));
        for (std::size_t j = 0; j < num_.size(); ++j) {
            if (num_[j] == 0) continue;
            const IntPoly& pw = ctx_->power(mod(static_cast<long>(j) * kk, n));
            for (std::size_t t = 0; t < acc.size(); ++t)
                if (pw[t] != 0) acc[t] += num_[j] * pw[t];
        }
        CycElem r(n);
        r.num_ = std::move(acc);
        r.den_ = den_;
        r.normalize();
        return r;
    }

    /// Complex conjugation, zeta -> zeta^-1.
    CycElem conj() const { return galois(-1); }

    bool is_real() const { return conj() == *this; }

    bool is_in_Rn() const { return is_power_of_two(den_); }

    bool is_in_Rn_plus() const { return is_in_Rn() && is_real(); }

    /// Least k >= 0 with 2^k * a integral.
    unsigned long denom_exp() const {
        if (!is_power_of_two(den_)) throw Error(ErrorCode::NotTwoLocal, "denominator is not a power of 2");
        return two_adic_valuation(den_);
    }

    /// Same element viewed in Q(zeta_m) through zeta_n = zeta_m^(m/n).
    CycElem level_raise(long m) const {
        const long n = level();
        if (m % n != 0) throw Error(ErrorCode::LevelMismatch, "target level must be a multiple of the source level");
        const long step = m / n;
        CycElem r(m);
        IntPoly acc(r.num_.size(), Int(0));
        for (std::size_t j = 0; j < num_.size(); ++j) {
            if (num_[j] == 0) continue;
            const IntPoly& pw = r.ctx_->power(static_cast<long>(j) * step);
            for (std::size_t t = 0; t < acc.size(); ++t)
                if (pw[t] != 0) acc[t] += num_[j] * pw[t];
        }
        r.num_ = std::move(acc);
        r.den_ = den_;
        r.normalize();
        return r;
    }

    /// Product of all Galois conjugates: the absolute norm N_{K/Q}.
    Rat norm() const {
        CycElem acc(level(), 1);
        for (long k = 1; k < level(); ++k)
            if (gcd_long(k, level()) == 1) acc *= galois(k);
        ensure(acc.is_rational(), "absolute norm is not rational");
        return acc.rational_value();
    }

    /// Norm from the maximal real subfield to Q; input must be real.
    Rat real_norm() const {
        if (!is_real()) throw Error(ErrorCode::NotReal, "real_norm of a nonreal element");
        CycElem acc(level(), 1);
        for (long k : real_embedding_indices(level())) acc *= galois(k);
        ensure(acc.is_rational(), "real norm is not rational");
        return acc.rational_value();
    }

    /// Representatives k of (Z/n)^x / {+-1}, ascending, k <= n/2. Index 0 is
    /// the embedding zeta -> exp(2 pi i / n).
    static std::vector<long> real_embedding_indices(long n) {
        std::vector<long> ks;
        if (n <= 2) return {1};
        for (long k = 1; 2 * k < n; ++k)
            if (gcd_long(k, n) == 1) ks.push_back(k);
        return ks;
    }

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const CycElem& a) {
        bool first = true;
        for (std::size_t j = 0; j < a.num_.size(); ++j) {
            if (a.num_[j] == 0) continue;
            Rat c = a.coeff(j);
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            Rat m = abs(c);
            if (j == 0) os << to_string(m);
            else {
                if (m != 1) os << to_string(m) << "*";
                os << "z";
                if (j > 1) os << "^" << j;
            }
        }
        if (first) os << "0";
        return os;
    }

private:
    static void check_level(const CycElem& a, const CycElem& b) {
        if (a.level() != b.level()) throw Error(ErrorCode::LevelMismatch, "operands live at different cyclotomic levels");
    }

    static IntPoly reduce(const LevelContext& ctx, IntPoly p) {
        const auto phi = static_cast<std::size_t>(ctx.phi);
        // long inputs: peel the top degree with the monic relation
        while (p.size() > ctx.powers.size()) {
            Int top = p.back();
            const std::size_t k = p.size() - 1;
            p.pop_back();
            if (top == 0) continue;
            for (std::size_t j = 0; j < phi; ++j) p[k - phi + j] -= top * ctx.poly[j];
        }
        IntPoly out(phi, Int(0));
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] == 0) continue;
            if (k < phi) {
                out[k] += p[k];
                continue;
            }
            const IntPoly& pw = ctx.powers[k];
            for (std::size_t j = 0; j < phi; ++j)
                if (pw[j] != 0) out[j] += p[k] * pw[j];
        }
        return out;
    }

    void normalize() {
        if (den_ < 0) {
            den_ = -den_;
            for (auto& c : num_) c = -c;
        }
        Int g = den_;
        for (const auto& c : num_) {
            if (g == 1) break;
            if (c != 0) g = gcd(g, c);
        }
        if (is_zero()) {
            den_ = 1;
            return;
        }
        if (g != 1) {
            for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    std::shared_ptr<const LevelContext> ctx_;
    IntPoly num_;
    Int den_;
};

namespace detail {

using RatPoly = std::vector<Rat>;

inline void trim(RatPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

inline bool is_zero_poly(const RatPoly& p) { return p.size() == 1 && p[0] == 0; }

inline void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    r = a;
    trim(r);
    const std::size_t db = b.size() - 1;
    if (r.size() < b.size()) {
        q = {Rat(0)};
        return;
    }
    q.assign(r.size() - db, Rat(0));
    const Rat lead = b.back();
    for (std::size_t k = r.size(); k-- > db;) {
        Rat c = r[k] / lead;
        q[k - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= c * b[j];
    }
    r.resize(std::max<std::size_t>(db, 1));
    trim(r);
}

inline RatPoly sub_mul(const RatPoly& a, const RatPoly& q, const RatPoly& b) {
    RatPoly out(std::max(a.size(), q.size() + b.size() - 1), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
    trim(out);
    return out;
}

} // namespace detail

inline CycElem CycElem::inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    const long n = level();
    detail::RatPoly r0, r1, s0{Rat(0)}, s1{Rat(1)};
    for (const auto& c : ctx_->poly) r0.push_back(Rat(c));
    r1 = coeffs();
    detail::trim(r1);
    while (!detail::is_zero_poly(r1)) {
        detail::RatPoly q, rem;
        detail::divmod(r0, r1, q, rem);
        r0 = std::move(r1);
        r1 = std::move(rem);
        auto s2 = detail::sub_mul(s0, q, s1);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    ensure(r0.size() == 1, "gcd with the cyclotomic polynomial is not constant");
    for (auto& c : s0) c /= r0[0];
    CycElem out = from_poly(n, s0);
    ensure((out * *this).is_one(), "inverse check failed");
    return out;
}

inline CycElem inv(const CycElem& a) { return a.inv(); }
inline CycElem conj(const CycElem& a) { return a.conj(); }
inline CycElem galois(const CycElem& a, long k) { return a.galois(k); }

/// The imaginary unit zeta_n^(n/4); requires 4 | n.
inline CycElem imag_unit(long n) {
    if (n % 4 != 0) throw Error(ErrorCode::LevelLacksI, "level " + std::to_string(n) + " has no i (needs 4 | n)");
    return CycElem::zeta(n, n / 4);
}

/// 2 cos(2 pi k / n) = zeta^k + zeta^-k.
inline CycElem two_cos(long n, long k) { return CycElem::zeta(n, k) + CycElem::zeta(n, -k); }

/// sqrt(2) = zeta_8 - zeta_8^3, raised to level n (8 | n).
inline CycElem sqrt2(long n) {
    if (n % 8 != 0) throw Error(ErrorCode::UnsupportedLevel, "sqrt(2) needs 8 | n");
    return (CycElem::zeta(8, 1) - CycElem::zeta(8, 3)).level_raise(n);
}

} // namespace cliffcyc
