#pragma once

// Words in H and T_n, the rewriting of determinant-1 words into products of
// H(zeta^j), and exact synthesis by 2-adic descent.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace cliffcyc {

struct GateToken {
    bool is_H = true;
    long k = 0; // exponent of T when !is_H

    friend bool operator==(const GateToken&, const GateToken&) = default;
};

struct GateWord {
    long n = 8;
    std::vector<GateToken> tokens;

    /// Merges adjacent T tokens, reduces exponents mod n and drops T^0.
    GateWord& normalize() {
        std::vector<GateToken> out;
        for (const auto& t : tokens) {
            if (!t.is_H && !out.empty() && !out.back().is_H)
                out.back().k = mod(out.back().k + t.k, n);
            else
                out.push_back(t.is_H ? t : GateToken{false, mod(t.k, n)});
            if (!out.back().is_H && out.back().k == 0) out.pop_back();
        }
        tokens = std::move(out);
        return *this;
    }

    GateWord& H() {
        tokens.push_back({true, 0});
        return *this;
    }
    GateWord& T(long k = 1) {
        tokens.push_back({false, k});
        return *this;
    }
    GateWord& append(const GateWord& w) {
        tokens.insert(tokens.end(), w.tokens.begin(), w.tokens.end());
        return *this;
    }

    std::size_t h_count() const {
        std::size_t c = 0;
        for (const auto& t : tokens) c += t.is_H;
        return c;
    }

    friend bool operator==(const GateWord&, const GateWord&) = default;
};

/// Tokens "H", "T", "T^k" (k possibly negative) separated by whitespace.
inline GateWord parse_gate_word(long n, const std::string& text) {
    if (n % 4 != 0) throw Error(ErrorCode::UnsupportedLevel, "gate words need 4 | n");
    GateWord w{n, {}};
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "H") {
            w.H();
        } else if (tok == "T") {
            w.T(1);
        } else if (tok.size() > 2 && tok.compare(0, 2, "T^") == 0) {
            try {
                std::size_t used = 0;
                long k = std::stol(tok.substr(2), &used);
                if (used != tok.size() - 2) throw std::invalid_argument(tok);
                w.T(k);
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::ParseError, "bad T exponent in token '" + tok + "'");
            }
        } else {
            throw Error(ErrorCode::ParseError, "unknown gate token '" + tok + "'");
        }
    }
    return w.normalize();
}

inline std::string format_gate_word(const GateWord& w) {
    std::string s;
    for (const auto& t : w.tokens) {
        if (!s.empty()) s += ' ';
        s += t.is_H ? std::string("H") : "T^" + std::to_string(t.k);
    }
    return s;
}

inline UMat eval_word(const GateWord& w) {
    const long n = w.n;
    if (n % 4 != 0) throw Error(ErrorCode::UnsupportedLevel, "gate words need 4 | n");
    const UMat h = gate_H(n);
    UMat acc = UMat::identity(n);
    for (const auto& t : w.tokens) acc = acc * (t.is_H ? h : power(gate_T(n), t.k));
    return acc;
}

// ---- products of H(zeta^j) ----

struct HzWord {
    long n = 8;
    std::vector<long> factors; // j for H(zeta_n^j)
};

inline UMat eval_hz(const HzWord& w) {
    UMat acc = UMat::identity(w.n);
    for (long j : w.factors) acc = acc * gate_Hz(w.n, j);
    return acc;
}

/// Replace each H by T^(-n/4) H(1); with total T-exponent 0 the word
/// T^b0 H(1) T^b1 H(1) ... telescopes into prod_i T^(P_i) H(1) T^(-P_i),
/// with P_i = b0 + ... + bi, and T^(-j) H(1) T^j = H(zeta^j).
inline HzWord to_hz_word(const GateWord& w) {
    const long n = w.n;
    if (!det(eval_word(w)).is_one()) throw Error(ErrorCode::NotSpecial, "word does not have determinant 1");
    HzWord out{n, {}};
    long prefix = 0;
    for (const auto& t : w.tokens) {
        if (t.is_H) {
            prefix = mod(prefix - n / 4, n);
            out.factors.push_back(mod(-prefix, n));
        } else {
            prefix = mod(prefix + t.k, n);
        }
    }
    ensure(prefix == 0, "determinant 1 word with nonzero total T exponent");
    ensure(eval_hz(out) == eval_word(w), "H(zeta^j) rewriting changed the product");
    return out;
}

/// H(zeta^j) = T^(-j) T^(n/4) H T^j.
inline GateWord hz_to_gate_word(const HzWord& w) {
    GateWord g{w.n, {}};
    for (long j : w.factors) g.T(-j).T(w.n / 4).H().T(j);
    return g.normalize();
}

// ---- descent ----

namespace detail {

/// -v_2(N_{F/Q}(|z|^2)), floored at 0; the norm sees the unique prime above 2.
inline long descent_potential(const CycElem& z) {
    if (z.is_zero()) return 0;
    const Rat nm = (z * z.conj()).real_norm();
    const long v = static_cast<long>(two_adic_valuation(nm.get_num())) - static_cast<long>(two_adic_valuation(nm.get_den()));
    return v < 0 ? -v : 0;
}

/// X = H^7 T^(n/2) H.
inline GateWord pauli_x_word(long n) {
    GateWord w{n, {}};
    for (int k = 0; k < 7; ++k) w.H();
    w.T(n / 2).H();
    return w;
}

/// Word for a monomial matrix whose nonzero entries are powers of zeta_n,
/// times the extra scalar zeta_n^phase.  diag(z^p, z^q) = (zI)^p T^(q-p),
/// antidiagonal = diag(z^p, z^q) X, and zI = T X T X.
inline std::optional<GateWord> monomial_word(const UMat& v, long phase) {
    const long n = v.level();
    std::optional<long> p, q;
    bool anti = false;
    if (v(0, 1).is_zero() && v(1, 0).is_zero()) {
        p = root_of_unity_exponent(v(0, 0));
        q = root_of_unity_exponent(v(1, 1));
    } else if (v(0, 0).is_zero() && v(1, 1).is_zero()) {
        anti = true;
        p = root_of_unity_exponent(v(0, 1));
        q = root_of_unity_exponent(v(1, 0));
    }
    if (!p || !q) return std::nullopt;
    const GateWord x = pauli_x_word(n);
    GateWord scalar{n, {}};
    scalar.T().append(x).T().append(x);
    GateWord w{n, {}};
    for (long r = 0; r < mod(*p + phase, n); ++r) w.append(scalar);
    w.T(*q - *p);
    if (anti) w.append(x);
    return w.normalize();
}

} // namespace detail

/// Every element of U2(R_8) as a word in H and T.  Peels off det as T^j,
/// then repeatedly replaces V by H T^(-a) V, choosing a in {0..3} to lower
/// the 2-adic potential of the top-left entry, until V is monomial.
/// `trace`, when given, receives the potential before each step and at the end.
inline GateWord synthesize_n8(const UMat& u, std::vector<long>* trace = nullptr) {
    const long n = 8;
    if (u.level() != n) throw Error(ErrorCode::NotInGroup, "synthesis works over R_8");
    const Membership mem = membership(u);
    if (!mem.inU2) throw Error(ErrorCode::NotInGroup, "input is not in U2(R_8)");
    if (!mem.detPower) throw InvariantViolation("determinant of a U2(R_8) element is not a root of unity");

    const UMat h = gate_H(n);
    GateWord w{n, {}};
    w.T(*mem.detPower);
    UMat v = power(gate_T(n), -*mem.detPower) * u;
    long phase = 0; // each H^-1 = -i H contributes zeta_8^6
    long k = detail::descent_potential(v(0, 0));

    auto step = [&](long a) { return h * power(gate_T(n), -a) * v; };
    if (trace) trace->push_back(k);
    while (k > 0) {
        long best_a = -1, best_k = k;
        UMat best = v;
        for (long a = 0; a < n / 2; ++a) {
            UMat cand = step(a);
            long ck = detail::descent_potential(cand(0, 0));
            if (ck < best_k) {
                best_k = ck;
                best_a = a;
                best = cand;
            }
        }
        if (best_a < 0) {
            // two steps at once when no single one lowers the potential
            for (long a = 0; a < n / 2 && best_a < 0; ++a) {
                UMat mid = step(a);
                for (long b = 0; b < n / 2; ++b) {
                    UMat cand = h * power(gate_T(n), -b) * mid;
                    long ck = detail::descent_potential(cand(0, 0));
                    if (ck < k) {
                        w.T(a).H();
                        phase += 6;
                        best_a = b;
                        best_k = ck;
                        best = cand;
                        break;
                    }
                }
            }
            if (best_a < 0) throw InvariantViolation("2-adic descent stalled over R_8");
        }
        w.T(best_a).H();
        phase += 6;
        v = best;
        k = best_k;
        if (trace) trace->push_back(k);
    }
    auto tail = detail::monomial_word(v, phase);
    if (!tail) throw InvariantViolation("descent ended on a non-monomial matrix");
    w.append(*tail).normalize();
    ensure(eval_word(w) == u, "synthesized word does not evaluate to the input");
    return w;
}

/// The same descent at other levels, using H(zeta^j)^-1 steps; gives up with
/// Unsynthesized after max_steps.
inline GateWord synthesize_bounded(const UMat& u, int max_steps = 200) {
    const long n = u.level();
    if (n % 4 != 0) throw Error(ErrorCode::UnsupportedLevel, "synthesis needs 4 | n");
    if (n == 8) return synthesize_n8(u);
    const Membership mem = membership(u);
    if (!mem.inU2zeta || !mem.detPower) throw Error(ErrorCode::NotInGroup, "input is not in U2^zeta(R_n)");

    GateWord w{n, {}};
    w.T(*mem.detPower);
    UMat v = power(gate_T(n), -*mem.detPower) * u;
    std::vector<UMat> inv_steps;
    for (long j = 0; j < n; ++j) inv_steps.push_back(inverse(gate_Hz(n, j)));
    HzWord factors{n, {}};
    long k = detail::descent_potential(v(0, 0));
    for (int s = 0; k > 0; ++s) {
        if (s >= max_steps) throw Error(ErrorCode::Unsynthesized, "descent bound reached");
        long best_j = -1, best_k = k;
        UMat best = v;
        for (long j = 0; j < n; ++j) {
            UMat cand = inv_steps[j] * v;
            long ck = detail::descent_potential(cand(0, 0));
            if (ck < best_k) {
                best_k = ck;
                best_j = j;
                best = cand;
            }
        }
        if (best_j < 0) {
            for (long j = 0; j < n && best_j < 0; ++j) {
                UMat mid = inv_steps[j] * v;
                for (long l = 0; l < n; ++l) {
                    UMat cand = inv_steps[l] * mid;
                    long ck = detail::descent_potential(cand(0, 0));
                    if (ck < k) {
                        factors.factors.push_back(j);
                        best_j = l;
                        best_k = ck;
                        best = cand;
                        break;
                    }
                }
            }
            if (best_j < 0) throw Error(ErrorCode::Unsynthesized, "descent stalled");
        }
        factors.factors.push_back(best_j);
        v = best;
        k = best_k;
    }
    auto tail = detail::monomial_word(v, 0);
    if (!tail) throw Error(ErrorCode::Unsynthesized, "descent ended on a non-monomial matrix");
    w.append(hz_to_gate_word(factors)).append(*tail).normalize();
    ensure(eval_word(w) == u, "synthesized word does not evaluate to the input");
    return w;
}

} // namespace cliffcyc
