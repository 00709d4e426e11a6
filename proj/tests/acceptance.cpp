// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "cliffcyc/cliffcyc.hpp"
#include "test_support.hpp"

using namespace cliffcyc;
using namespace cliffcyc::fixtures;

namespace {

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) c.require(false, "over the time limit");
    char timing[64];
    if (limit_s > 0)
        std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, limit_s);
    else
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::printf("%s %2d. %s (%s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, timing, c.ok ? "" : ": ", c.why.c_str());
    std::fflush(stdout);
    failures += !c.ok;
}

std::string s(const Rat& r) { return to_string(r); }

/// Random SO3(R_n+) elements: pi of gate words, half of them twisted by T_n.
std::vector<OMat> so3_corpus(std::mt19937_64& rng, long n, int count) {
    std::vector<OMat> out;
    for (int k = 0; k < count; ++k) {
        UMat w = random_gate_product(rng, n, 5);
        if (k % 2) w = w * gate_T(n);
        out.push_back(pi_map(w));
    }
    return out;
}

GateWord random_word(std::mt19937_64& rng, long n, int max_tokens) {
    std::uniform_int_distribution<int> pairs(0, max_tokens / 2);
    std::uniform_int_distribution<long> k(0, n - 1);
    GateWord w{n, {}};
    for (int i = pairs(rng); i > 0; --i) w.T(k(rng)).H();
    return w.normalize();
}

/// -1 in the subgroup of (Z/n)^x generated by {a = 1 mod d} and 2 mod d, by closure.
bool minus_one_in_decomposition_group(long n) {
    long d = n;
    while (d % 2 == 0) d /= 2;
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    std::vector<long> gens, frontier{1};
    in[1] = 1;
    for (long a = 1; a < n; ++a)
        if (gcd_long(a, n) == 1 && mod(a - 1, d) == 0) gens.push_back(a);
    for (long a = 1; a < n; ++a)
        if (gcd_long(a, n) == 1 && mod(a - 2, d) == 0) {
            gens.push_back(a);
            break;
        }
    while (!frontier.empty()) {
        long x = frontier.back();
        frontier.pop_back();
        for (long g : gens) {
            long y = x * g % n;
            if (!in[y]) {
                in[y] = 1;
                frontier.push_back(y);
            }
        }
    }
    return in[n - 1];
}

} // namespace

int main() {
    criterion(1, "chi(SU2(R_n)) = -1/12 + 1/(2n) at n = 8, 12, 16, 24", 5, [](Check& c) {
        const std::pair<long, Rat> expect[] = {{8, Rat(-1, 48)}, {12, Rat(-1, 24)}, {16, Rat(-5, 96)}, {24, Rat(-1, 16)}};
        for (const auto& [n, v] : expect) {
            const Rat chi = chi_table(n).chiSU2;
            c.require(chi == v, "n=" + std::to_string(n) + " gave " + s(chi));
            c.require(chi == chi_clifford_cyclotomic(n), "n=" + std::to_string(n) + " differs from -1/12 + 1/(2n)");
        }
    });

    criterion(2, "zeta_F(-1) spot values and M_24", 0, [](Check& c) {
        c.require(zeta_F_minus1(8) == Rat(1, 12), "n=8");
        c.require(zeta_F_minus1(12) == Rat(1, 6), "n=12");
        c.require(zeta_F_minus1(16) == Rat(5, 6), "n=16");
        c.require(M_value(24) == Rat(1, 8), "M_24 = " + s(M_value(24)));
        // the values forced by criterion 1 through chi = -M/2
        for (long n : {16L, 24L}) c.require(-M_value(n) / 2 == chi_clifford_cyclotomic(n), "criterion 1 cross-check");
    });

    criterion(3, "scan 8 <= n <= 132: strict inequality except exactly four equalities", 60, [](Check& c) {
        int equal = 0;
        for (const auto& r : scan(132)) {
            const Rat mag = abs(r.chiSU2);
            const bool exceptional = is_exceptional_level(r.n);
            if (exceptional) {
                c.require(mag == r.bound, "no equality at n=" + std::to_string(r.n));
                ++equal;
            } else {
                c.require(mag > r.bound, "not strict at n=" + std::to_string(r.n));
            }
            c.require(r.bound == Rat(1, 12) - Rat(1, 2 * r.n), "bound mismatch");
        }
        c.require(equal == 4, "equalities: " + std::to_string(equal));
    });

    criterion(4, "chi(SO3(R_n+)) = -2^(-2^(s-2)) zeta_F(-1) at n = 8, 16, 32", 0, [](Check& c) {
        for (long s_ : {3L, 4L, 5L}) {
            const long n = 1L << s_;
            const ChiTable t = chi_table(n);
            const Rat expect = -pow(Rat(2), -(1L << (s_ - 2))) * zeta_F_minus1(n);
            c.require(t.chiSO3.has_value() && *t.chiSO3 == expect, "n=" + std::to_string(n));
            c.require(t.c == 2, "c != 2 at n=" + std::to_string(n));
            c.require(*t.chiSO3 == t.chiPSU2 / 2, "chi(SO3) != chi(PSU2)/c");
        }
    });

    criterion(5, "Selmer exactness on 200 SU2(R_8) words; pi(T_8) obstructed by (2+sqrt2)/4", 0, [](Check& c) {
        std::mt19937_64 rng(101);
        for (int k = 0; k < 200; ++k) {
            const UMat a = random_su2(rng, 8, 1 + k % 9);
            const OMat m = adjoint(a);
            c.require(phi_class(m).is_trivial(), "phi(Ad A) nontrivial");
            const LiftResult r = try_lift_to_SU2(m);
            c.require(r.lifted() && (*r.lift == a || *r.lift == -a), "lift did not recover +-A");
        }
        const LiftResult t = try_lift_to_SU2(pi_map(gate_T(8)));
        const CycElem cls = (CycElem(8, 2) + sqrt2(8)) * Rat(1, 4);
        c.require(!t.lifted() && t.obstruction && t.obstruction->same_as(SquareClass{cls}), "wrong obstruction class");
        c.require(!is_square(cls), "(2+sqrt2)/4 reported square");
    });

    criterion(6, "phi homomorphism and product identity on 200 pairs at n = 8 and n = 12", 0, [](Check& c) {
        std::mt19937_64 rng(103);
        for (long n : {8L, 12L}) {
            const auto xs = so3_corpus(rng, n, 200), ys = so3_corpus(rng, n, 200);
            for (std::size_t k = 0; k < xs.size(); ++k) {
                const PhiProfile pm = phi_profile(xs[k]), pn = phi_profile(ys[k]), pmn = phi_profile(xs[k] * ys[k]);
                c.require(phi_product_identity(pm, pn, pmn), "identity fails at n=" + std::to_string(n));
                c.require(homomorphism_check(xs[k], ys[k]), "phi(MN) != phi(M)phi(N) at n=" + std::to_string(n));
            }
        }
    });

    criterion(7, "phi sum, theta squares and products, valuation, signed-permutation invariance", 0, [](Check& c) {
        std::mt19937_64 rng(103);
        for (long n : {8L, 12L}) {
            for (const OMat& m : so3_corpus(rng, n, 200)) {
                const PhiProfile p = phi_profile(m);
                c.require((p.phi[0] + p.phi[1] + p.phi[2] + p.phi[3]).is_one(), "sum of phi");
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = i + 1; j < 4; ++j) c.require(p.phi[i] * p.phi[j] == p.theta[i][j] * p.theta[i][j], "theta squares");
                const CycElem t = p.theta[0][1] * p.theta[2][3];
                c.require(t == p.theta[0][2] * p.theta[1][3] && t == p.theta[0][3] * p.theta[1][2], "theta products");
                const SquareClass cl = phi_class(p);
                c.require(selmer_valuation_check(cl), "valuation");
                for (const OMat& mi : {M_x(n), M_y(n), M_z(n)})
                    c.require(phi_class(m * mi).same_as(cl) && phi_class(mi * m).same_as(cl), "invariance");
            }
        }
    });

    criterion(8, "non-surjectivity witness over Z[sqrt21, i, 1/2]", 0, [](Check& c) {
        const DrearyWitness w = example_dreary_witness();
        c.require(w.tqInSO3, "T_q not in SO3");
        c.require(w.tqOverZsqrt21, "T_q entries outside Z[sqrt21, 1/2]");
        c.require(w.mqNormIsU, "M_q M_q^dagger != u I");
        c.require(w.uNonsquare && w.classIsU && !phi_class(w.Tq).is_trivial(), "class of u trivial");
        c.require(w.uTotallyPositive && w.mqInducesTq, "auxiliary checks");
    });

    criterion(9, "synthesis round trip on 100 random U2(R_8) words of length <= 60", 30, [](Check& c) {
        std::mt19937_64 rng(107);
        for (int k = 0; k < 100; ++k) {
            const GateWord w = random_word(rng, 8, 60);
            c.require(w.tokens.size() <= 60, "corpus word too long");
            const UMat u = eval_word(w);
            std::vector<long> trace;
            const GateWord back = synthesize_n8(u, &trace);
            c.require(eval_word(back) == u, "round trip changed the matrix");
            for (std::size_t i = 1; i < trace.size(); ++i) c.require(trace[i] < trace[i - 1], "descent stalled");
        }
    });

    criterion(10, "amalgam at n = 12: normal forms vs matrices on 500 words; orders; chi", 0, [](Check& c) {
        const AmalgamData& A = amalgam_generators(12);
        c.require(A.s4.size() == 24 && A.dn.size() == 24 && A.d4.size() == 8, "factor orders");
        std::mt19937_64 rng(109);
        int same = 0;
        for (int k = 0; k < 500; ++k) {
            GateWord a = random_word(rng, 12, 20), b = random_word(rng, 12, 20);
            if (k % 2 == 0) {
                b = a;
                b.T(5).H().H().H().H().T(-5).normalize(); // trivial in SO3
            }
            const auto la = gate_word_letters(a), lb = gate_word_letters(b);
            const bool eq = amalgam_equal(12, la, lb);
            c.require(eq == (pi_map(eval_word(a)) == pi_map(eval_word(b))), "normal form equality != matrix equality");
            same += eq;
        }
        c.require(same >= 250, "rewritten pairs not recognized");
        for (long n = 8; n <= 200; n += 4) {
            const ChiGroupReport r = chi_group_identities(n);
            c.require(r.amalgam == chi_clifford_cyclotomic(n) && r.binaryCover == chi_clifford_cyclotomic(n), "chi at n=" + std::to_string(n));
        }
    });

    criterion(11, "U2 = U2^zeta criterion vs direct subgroup computation, 4 | n <= 100", 0, [](Check& c) {
        for (long n = 4; n <= 100; n += 4) {
            const bool crit = u2_equals_u2zeta(n);
            c.require(crit == minus_one_in_decomposition_group(n), "closure disagrees at n=" + std::to_string(n));
            if (n >= 8) c.require(crit == (split_data(n).r == split_data(n).rPlus), "r vs r+ at n=" + std::to_string(n));
        }
        c.require(u2_equals_u2zeta(20), "n=20 should be true");
        c.require(!u2_equals_u2zeta(28), "n=28 should be false");
    });

    criterion(12, "splitting of 2: efr = phi(n), e+f+r+ = phi(n)/2, r = r+ = 1 on the known families", 0, [](Check& c) {
        for (long n = 4; n <= 200; n += 4) {
            const SplitData sd = split_data(n);
            c.require(sd.e * sd.f * sd.r == euler_phi(n), "efr at n=" + std::to_string(n));
            c.require(sd.ePlus * sd.fPlus * sd.rPlus == euler_phi(n) / 2, "e+f+r+ at n=" + std::to_string(n));
            if (n >= 8 && has_known_c(n)) c.require(sd.r == 1 && sd.rPlus == 1, "r, r+ at n=" + std::to_string(n));
        }
    });

    std::printf("%d failed\n", failures);
    return failures;
}
