#pragma once

// PG_n inside SO3 as the amalgam S4 *_{D4} D_n: the two finite factors,
// fixed right transversals of D4, and the reduced form of a word.

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "synthesis.hpp"
#include "zeta.hpp"

namespace cliffcyc {

namespace detail {

inline std::string matrix_key(const OMat& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) os << m(i, j).str() << ';';
    return os.str();
}

/// Row-major order on real entries, each compared in the first embedding.
inline bool matrix_less(const OMat& a, const OMat& b) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            int c = compare_first_embedding(a(i, j), b(i, j));
            if (c != 0) return c < 0;
        }
    return false;
}

} // namespace detail

/// A finite matrix group closed under multiplication, with an index by key.
class FiniteGroup {
public:
    FiniteGroup() = default;

    static FiniteGroup generated_by(long n, const std::vector<OMat>& gens) {
        FiniteGroup g;
        g.add(OMat::identity(n));
        for (std::size_t i = 0; i < g.elements_.size(); ++i)
            for (const auto& s : gens) g.add(g.elements_[i] * s);
        return g;
    }

    std::size_t size() const { return elements_.size(); }
    const std::vector<OMat>& elements() const { return elements_; }
    std::optional<std::size_t> find(const OMat& m) const {
        auto it = index_.find(detail::matrix_key(m));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(const OMat& m) const { return find(m).has_value(); }

private:
    void add(const OMat& m) {
        auto key = detail::matrix_key(m);
        if (index_.count(key)) return;
        index_.emplace(std::move(key), elements_.size());
        elements_.push_back(m);
    }

    std::vector<OMat> elements_;
    std::map<std::string, std::size_t> index_;
};

enum class Side { S4, Dn };

inline const char* to_string(Side s) { return s == Side::S4 ? "S4" : "Dn"; }

/// Right cosets D4 t of D4 in a factor, each with a fixed representative.
struct Transversal {
    std::vector<OMat> reps;                 // reps[0] is the identity
    std::map<std::string, std::size_t> of;  // element key -> coset index
};

struct AmalgamData {
    long n = 0;
    OMat yRot4, zRotN;
    FiniteGroup s4, dn, d4;
    Transversal s4_cosets, dn_cosets;

    const FiniteGroup& group(Side s) const { return s == Side::S4 ? s4 : dn; }
    const Transversal& cosets(Side s) const { return s == Side::S4 ? s4_cosets : dn_cosets; }
};

namespace detail {

inline Transversal right_transversal(const FiniteGroup& big, const FiniteGroup& sub) {
    Transversal t;
    std::vector<bool> done(big.size(), false);
    const long n = big.elements().front().level();
    t.reps.push_back(OMat::identity(n));
    std::vector<std::vector<std::size_t>> cosets;
    for (std::size_t i = 0; i < big.size(); ++i) {
        if (done[i]) continue;
        std::vector<std::size_t> coset;
        for (const auto& c : sub.elements()) {
            std::size_t j = *big.find(c * big.elements()[i]);
            if (!done[j]) {
                done[j] = true;
                coset.push_back(j);
            }
        }
        cosets.push_back(std::move(coset));
    }
    // cosets[0] contains the identity (element 0): it is D4 itself
    for (std::size_t c = 0; c < cosets.size(); ++c) {
        if (c > 0) {
            const OMat* least = &big.elements()[cosets[c].front()];
            for (std::size_t j : cosets[c])
                if (matrix_less(big.elements()[j], *least)) least = &big.elements()[j];
            t.reps.push_back(*least);
        }
        for (std::size_t j : cosets[c]) t.of[matrix_key(big.elements()[j])] = c;
    }
    return t;
}

inline AmalgamData build_amalgam(long n) {
    AmalgamData a;
    a.n = n;
    a.yRot4 = pi_map(gate_H(n) * power(gate_T(n), n / 2));
    a.zRotN = pi_map(gate_T(n));
    const OMat z4 = power(a.zRotN, n / 4), y2 = a.yRot4 * a.yRot4;
    a.s4 = FiniteGroup::generated_by(n, {a.yRot4, z4});
    a.dn = FiniteGroup::generated_by(n, {a.zRotN, y2});
    a.d4 = FiniteGroup::generated_by(n, {z4, y2});
    for (const auto& m : a.d4.elements()) ensure(a.s4.contains(m) && a.dn.contains(m), "D4 not in both factors");
    std::size_t common = 0;
    for (const auto& m : a.s4.elements()) common += a.dn.contains(m);
    ensure(common == a.d4.size(), "factor intersection is not D4");
    a.s4_cosets = right_transversal(a.s4, a.d4);
    a.dn_cosets = right_transversal(a.dn, a.d4);
    return a;
}

} // namespace detail

/// Built once per level and then shared read-only.
inline const AmalgamData& amalgam_generators(long n) {
    if (n % 4 != 0 || n < 8) throw Error(ErrorCode::UnsupportedLevel, "the amalgam needs 4 | n and n >= 8");
    static std::mutex mu;
    static std::map<long, std::unique_ptr<AmalgamData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<AmalgamData>(detail::build_amalgam(n));
    return *slot;
}

struct AmalgamLetter {
    Side side = Side::S4;
    std::size_t coset = 0; // index into that side's transversal, never 0
    OMat matrix;

    friend bool operator==(const AmalgamLetter& a, const AmalgamLetter& b) {
        return a.side == b.side && a.coset == b.coset;
    }
};

/// head * letters[0] * letters[1] * ..., head in D4, sides alternating.
struct AmalgamWord {
    long n = 0;
    OMat head;
    std::vector<AmalgamLetter> letters;

    OMat product() const {
        OMat acc = head;
        for (const auto& l : letters) acc = acc * l.matrix;
        return acc;
    }
    friend bool operator==(const AmalgamWord& a, const AmalgamWord& b) {
        return a.n == b.n && a.head == b.head && a.letters == b.letters;
    }
};

/// Right-to-left: each new letter g multiplies head * t1 ...; g * head is
/// merged with t1 when they lie in the same factor, and the result is split
/// again as (element of D4) * (coset representative).
inline AmalgamWord normal_form(long n, const std::vector<OMat>& word) {
    const AmalgamData& A = amalgam_generators(n);
    AmalgamWord out{n, OMat::identity(n), {}};
    std::vector<AmalgamLetter> rev; // letters stored back to front
    auto split = [&](Side side, const OMat& y) {
        const std::size_t c = A.cosets(side).of.at(detail::matrix_key(y));
        const OMat& t = A.cosets(side).reps[c];
        return std::make_pair(y * inverse(t), c);
    };
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const OMat& g = *it;
        if (g.level() != n) throw Error(ErrorCode::LevelMismatch, "letter level differs from n");
        OMat gc = g * out.head;
        if (A.d4.contains(gc)) {
            out.head = gc;
            continue;
        }
        Side side;
        if (A.s4.contains(gc))
            side = Side::S4;
        else if (A.dn.contains(gc))
            side = Side::Dn;
        else
            throw Error(ErrorCode::NotAGenerator, "letter lies in neither S4 nor D_n");
        OMat y = gc;
        if (!rev.empty() && rev.back().side == side) {
            y = gc * rev.back().matrix;
            rev.pop_back();
        }
        auto [c, idx] = split(side, y);
        out.head = c;
        if (idx != 0) rev.push_back({side, idx, A.cosets(side).reps[idx]});
        ensure(A.d4.contains(out.head), "coset splitting left D4");
    }
    out.letters.assign(rev.rbegin(), rev.rend());
    for (std::size_t i = 1; i < out.letters.size(); ++i)
        ensure(out.letters[i].side != out.letters[i - 1].side, "normal form does not alternate");
    return out;
}

/// H -> pi(H) in S4, T^k -> zRotN^k in D_n.
inline std::vector<OMat> gate_word_letters(const GateWord& w) {
    const AmalgamData& A = amalgam_generators(w.n);
    const OMat ph = pi_map(gate_H(w.n));
    std::vector<OMat> out;
    for (const auto& t : w.tokens) out.push_back(t.is_H ? ph : power(A.zRotN, t.k));
    return out;
}

inline bool amalgam_equal(long n, const std::vector<OMat>& w1, const std::vector<OMat>& w2) {
    const AmalgamWord a = normal_form(n, w1), b = normal_form(n, w2);
    auto product = [n](const std::vector<OMat>& w) {
        OMat acc = OMat::identity(n);
        for (const auto& g : w) acc = acc * g;
        return acc;
    };
    const bool same_form = a == b;
    const bool same_matrix = product(w1) == product(w2);
    if (same_form != same_matrix) throw InvariantViolation("normal forms and matrix products disagree");
    ensure(a.product() == product(w1) && b.product() == product(w2), "normal form changed the product");
    return same_form;
}

struct ChiGroupReport {
    long n = 0;
    Rat amalgam;     // chi(S4 *_{D4} D_n)
    Rat binaryCover; // 2 chi(E48 *_{Q16} Q_4n)
    Rat expected;    // -1/12 + 1/(2n)
};

inline ChiGroupReport chi_group_identities(long n) {
    if (n % 4 != 0) throw Error(ErrorCode::UnsupportedLevel, "needs 4 | n");
    ChiGroupReport r{n, chi_amalgam(24, 2 * n, 8), 2 * chi_amalgam(48, 4 * n, 16), chi_clifford_cyclotomic(n)};
    ensure(r.amalgam == r.expected && r.binaryCover == r.expected, "Euler characteristics of the amalgams disagree");
    return r;
}

} // namespace cliffcyc
