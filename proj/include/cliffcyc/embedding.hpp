#pragma once

// Rigorous interval enclosures of the real embeddings of the maximal real
// subfield of Q(zeta_n). Cosines are bracketed with directed MPFR rounding
// and then carried as exact rationals.

#include <mpfr.h>

#include <utility>
#include <vector>

#include "cyclotomic.hpp"

namespace cliffcyc {

struct Interval {
    Rat lower;
    Rat upper;

    bool excludes_zero() const { return lower > 0 || upper < 0; }
    Rat width() const { return upper - lower; }
};

/// Enclosures, one per real embedding; embedding k sends zeta_n to exp(2 pi i k / n)
/// for k in CycElem::real_embedding_indices(n).
struct EmbeddingBox {
    long n = 1;
    std::vector<long> indices;
    std::vector<Interval> values;
};

namespace detail {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

    Rat to_rat() {
        Rat q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

private:
    mpfr_t v_;
};

/// Interval containing cos(2 pi t / n).
inline Interval cos_enclosure(long t, long n, mpfr_prec_t prec) {
    t = mod(t, n);
    if (2 * t > n) t = n - t;
    if (t == 0) return {Rat(1), Rat(1)};
    if (2 * t == n) return {Rat(-1), Rat(-1)};
    if (4 * t == n) return {Rat(0), Rat(0)};
    // 0 < 2 pi t / n < pi, where cos is decreasing
    Mpfr pi_lo(prec), pi_hi(prec), x_lo(prec), x_hi(prec), c_lo(prec), c_hi(prec);
    mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
    mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
    mpfr_mul_si(x_lo.get(), pi_lo.get(), 2 * t, MPFR_RNDD);
    mpfr_div_si(x_lo.get(), x_lo.get(), n, MPFR_RNDD);
    mpfr_mul_si(x_hi.get(), pi_hi.get(), 2 * t, MPFR_RNDU);
    mpfr_div_si(x_hi.get(), x_hi.get(), n, MPFR_RNDU);
    ensure(mpfr_cmp(x_hi.get(), pi_lo.get()) < 0, "angle enclosure crossed pi");
    mpfr_cos(c_lo.get(), x_hi.get(), MPFR_RNDD);
    mpfr_cos(c_hi.get(), x_lo.get(), MPFR_RNDU);
    return {c_lo.to_rat(), c_hi.to_rat()};
}

inline Interval evaluate_real_embedding(const CycElem& a, long k, mpfr_prec_t prec) {
    const long n = a.level();
    Rat lo(0), hi(0);
    const auto& num = a.numerators();
    for (std::size_t j = 0; j < num.size(); ++j) {
        if (num[j] == 0) continue;
        Interval c = cos_enclosure(static_cast<long>(j) * k, n, prec);
        Rat x = Rat(num[j]) * c.lower, y = Rat(num[j]) * c.upper;
        if (x > y) std::swap(x, y);
        lo += x;
        hi += y;
    }
    Rat inv_den(Int(1), a.denominator());
    return {lo * inv_den, hi * inv_den};
}

} // namespace detail

/// Enclosures of all real embeddings of a real element, each excluding zero
/// (for nonzero input) and of width at most `width`.
inline EmbeddingBox embeddings(const CycElem& a, const Rat& width = Rat(1, 1 << 20)) {
    if (!a.is_real()) throw Error(ErrorCode::NotReal, "embeddings of a nonreal element");
    EmbeddingBox box;
    box.n = a.level();
    box.indices = CycElem::real_embedding_indices(a.level());
    const bool zero = a.is_zero();
    for (mpfr_prec_t prec = 64;; prec *= 2) {
        ensure(prec <= (mpfr_prec_t(1) << 20), "embedding refinement did not converge");
        box.values.clear();
        bool done = true;
        for (long k : box.indices) {
            Interval iv = detail::evaluate_real_embedding(a, k, prec);
            if ((!zero && !iv.excludes_zero()) || iv.width() > width) done = false;
            box.values.push_back(std::move(iv));
        }
        if (done) return box;
    }
}

/// Signs of all real embeddings (+1 / -1); input real and nonzero.
inline std::vector<int> embedding_signs(const CycElem& a) {
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "sign of zero");
    EmbeddingBox box = embeddings(a, Rat(1));
    std::vector<int> s;
    for (const auto& iv : box.values) s.push_back(iv.lower > 0 ? 1 : -1);
    return s;
}

inline bool is_totally_positive(const CycElem& a) {
    if (!a.is_real()) throw Error(ErrorCode::NotReal, "total positivity of a nonreal element");
    if (a.is_zero()) return false;
    for (int s : embedding_signs(a))
        if (s < 0) return false;
    return true;
}

/// Sign of the first real embedding of a - b; the order used for canonical
/// choices (transversals, lift signs).
inline int compare_first_embedding(const CycElem& a, const CycElem& b) {
    if (a == b) return 0;
    return embedding_signs(a - b).front();
}

} // namespace cliffcyc
