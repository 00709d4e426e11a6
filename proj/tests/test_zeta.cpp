#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cliffcyc/zeta.hpp"

using namespace cliffcyc;

namespace {

// sum_{b^2 < D, b = D mod 2} sigma_1((D - b^2) / 4) / 60, real quadratic fields only
Rat siegel_quadratic(long D) {
    auto sigma1 = [](long m) {
        long s = 0;
        for (long k = 1; k <= m; ++k)
            if (m % k == 0) s += k;
        return s;
    };
    long total = 0;
    for (long b = -D; b <= D; ++b)
        if (b * b < D && mod(b - D, 2) == 0) total += sigma1((D - b * b) / 4);
    return make_rat(total, 60);
}

struct Ramified {
    long p, f, g;
};

// zeta_F(2) from its Euler product, then zeta_F(-1) by the functional equation
//   zeta_F(-1) = disc^(3/2) (-1 / (2 pi^2))^d zeta_F(2).
// An unramified p has residue degree = order of p in (Z/n)^x / {+-1}.
double zeta_minus1_functional(long n, double disc, const std::vector<Ramified>& ramified) {
    const long P = 2000000;
    const long d = euler_phi(n) / 2;
    std::vector<char> composite(P + 1, 0);
    double log_zeta2 = 0;
    for (long p = 2; p <= P; ++p) {
        if (composite[p]) continue;
        for (long q = p * p; q <= P; q += p) composite[q] = 1;
        long f = 0, g = 0;
        if (n % p == 0) {
            for (const auto& r : ramified)
                if (r.p == p) f = r.f, g = r.g;
        } else {
            long x = p % n;
            f = 1;
            while (x != 1 && x != n - 1) {
                x = x * p % n;
                ++f;
            }
            g = d / f;
        }
        log_zeta2 -= g * std::log1p(-std::pow(double(p), -2.0 * f));
    }
    const double pi = std::acos(-1.0);
    return std::pow(disc, 1.5) * std::pow(-1.0 / (2 * pi * pi), double(d)) * std::exp(log_zeta2);
}

double to_d(const Rat& q) { return q.get_d(); }

} // namespace

TEST(UnitGroup, Structure) {
    auto g = unit_group(20);
    EXPECT_EQ(g.orders, (std::vector<long>{2, 4}));
    EXPECT_EQ(g.exponent, 4);
    EXPECT_EQ(unit_group(8).orders, (std::vector<long>{2, 2}));
    EXPECT_EQ(unit_group(7).orders, (std::vector<long>{6}));
    for (long n : {1L, 2L, 9L, 24L, 100L, 300L})
        EXPECT_EQ(static_cast<long>(unit_group(n).logs.size()), euler_phi(n));
}

TEST(Characters, CountsAndConductors) {
    auto ev = even_characters(8);
    ASSERT_EQ(ev.size(), 2U);
    std::vector<long> conductors;
    for (auto& c : ev) conductors.push_back(c.conductor);
    std::sort(conductors.begin(), conductors.end());
    EXPECT_EQ(conductors, (std::vector<long>{1, 8}));
    for (long n : {12L, 16L, 20L, 21L, 24L, 60L})
        EXPECT_EQ(static_cast<long>(even_characters(n).size()), euler_phi(n) / 2);
    // the even characters mod 12 have conductors 1 and 12
    for (auto& c : even_characters(12)) EXPECT_TRUE(c.conductor == 1 || c.conductor == 12);
    EXPECT_THROW(even_characters(2), Error);
}

TEST(Characters, IntrinsicProperties) {
    for (long n : {15L, 16L, 24L, 28L}) {
        for (const auto& chi : all_characters(n)) {
            ASSERT_EQ(n % chi.conductor, 0);
            const long m = chi.aux_level;
            // multiplicative on units mod the conductor
            for (long a = 1; a < chi.conductor; ++a)
                for (long b = 1; b < chi.conductor; ++b) {
                    long ea = chi.primitive_values[a], eb = chi.primitive_values[b];
                    long eab = chi.primitive_values[a * b % chi.conductor];
                    if (ea < 0 || eb < 0) continue;
                    EXPECT_EQ(mod(ea + eb - eab, m), 0);
                }
            long em1 = chi.primitive_values[mod(-1, chi.conductor)];
            if (chi.conductor > 2) {
                EXPECT_EQ(mod(em1, m) == 0, chi.even);
            }
        }
    }
}

TEST(Zeta, SmallFields) {
    EXPECT_EQ(zeta_F_minus1(3), Rat(-1, 12));
    EXPECT_EQ(zeta_F_minus1(4), Rat(-1, 12));
    EXPECT_EQ(zeta_F_minus1(5), Rat(1, 30));
    EXPECT_EQ(zeta_F_minus1(10), Rat(1, 30));
    EXPECT_EQ(zeta_F_minus1(8), Rat(1, 12));
    EXPECT_EQ(zeta_F_minus1(12), Rat(1, 6));
    EXPECT_EQ(zeta_F_minus1(16), Rat(5, 6));
    EXPECT_EQ(zeta_F_minus1(24), Rat(1));
}

TEST(Zeta, SiegelQuadraticOracle) {
    EXPECT_EQ(zeta_F_minus1(5), siegel_quadratic(5));
    EXPECT_EQ(zeta_F_minus1(8), siegel_quadratic(8));
    EXPECT_EQ(zeta_F_minus1(12), siegel_quadratic(12));
}

TEST(Zeta, FunctionalEquationOracle) {
    struct Case {
        long n;
        double disc;
        std::vector<Ramified> ram;
    };
    std::vector<Case> cases = {
        {8, 8, {{2, 1, 1}}},
        {12, 12, {{2, 1, 1}, {3, 1, 1}}},
        {16, 2048, {{2, 1, 1}}},
        {24, 2304, {{2, 1, 1}, {3, 2, 1}}},
        {20, 2000, {{2, 2, 1}, {5, 1, 1}}},
    };
    for (const auto& c : cases) {
        double expect = zeta_minus1_functional(c.n, c.disc, c.ram);
        double got = to_d(zeta_F_minus1(c.n));
        EXPECT_NEAR(got / expect, 1.0, 1e-5) << "n=" << c.n;
        EXPECT_EQ(disc_Fn(c.n), Rat(static_cast<long>(c.disc))) << "n=" << c.n;
    }
}

TEST(Zeta, SignAlternatesWithDegree) {
    for (long n = 8; n <= 80; n += 4) {
        const long d = euler_phi(n) / 2;
        EXPECT_EQ(sgn(zeta_F_minus1(n)), d % 2 == 0 ? 1 : -1) << n;
    }
}

TEST(Split, Examples) {
    auto s24 = split_data(24);
    EXPECT_EQ(s24.ePlus, 4);
    EXPECT_EQ(s24.fPlus, 1);
    EXPECT_EQ(s24.rPlus, 1);
    EXPECT_EQ(s24.e, 4);
    EXPECT_EQ(s24.f, 2);
    EXPECT_EQ(s24.r, 1);
    auto s16 = split_data(16);
    EXPECT_EQ(s16.ePlus, 4);
    EXPECT_EQ(s16.rPlus, 1);
    auto s20 = split_data(20);
    EXPECT_EQ(s20.e, 2);
    EXPECT_EQ(s20.f, 4);
    EXPECT_EQ(s20.r, 1);
    // 2 splits into two primes in Q(zeta_7)
    auto s28 = split_data(28);
    EXPECT_EQ(s28.r, 2);
    EXPECT_THROW(split_data(10), Error);
}

TEST(Split, GroupOrdersMultiply) {
    for (long n = 8; n <= 300; n += 4) {
        auto s = split_data(n);
        EXPECT_EQ(s.e * s.f * s.r, euler_phi(n));
        EXPECT_EQ(s.ePlus * s.fPlus * s.rPlus, euler_phi(n) / 2);
        EXPECT_TRUE(s.r == s.rPlus || s.r == 2 * s.rPlus);
        EXPECT_EQ(u2_equals_u2zeta(n), s.r == s.rPlus) << n;
    }
}

TEST(Chi, TableValues) {
    EXPECT_EQ(chi_table(8).chiSU2, Rat(-1, 48));
    EXPECT_EQ(chi_table(12).chiSU2, Rat(-1, 24));
    EXPECT_EQ(chi_table(16).chiSU2, Rat(-5, 96));
    EXPECT_EQ(chi_table(24).chiSU2, Rat(-1, 16));
    auto t8 = chi_table(8);
    EXPECT_EQ(t8.M, Rat(1, 24));
    EXPECT_EQ(t8.chiPSU2, Rat(-1, 24));
    ASSERT_TRUE(t8.chiSO3.has_value());
    EXPECT_EQ(*t8.chiSO3, Rat(-1, 48));
    EXPECT_FALSE(chi_table(20).chiSO3.has_value());
    EXPECT_TRUE(chi_table(96).chiSO3.has_value());
}

TEST(Chi, CliffordCyclotomicIsAmalgam) {
    for (long n = 8; n <= 300; n += 4) EXPECT_EQ(chi_clifford_cyclotomic(n), chi_amalgam(24, 2 * n, 8));
    EXPECT_EQ(chi_amalgam(24, 16, 8), Rat(-1, 48));
    EXPECT_THROW(chi_amalgam(0, 1, 1), Error);
}

TEST(Chi, SubgroupOfSU2HasLargerMagnitude) {
    for (long n = 8; n <= 132; n += 4) {
        auto t = chi_table(n);
        EXPECT_GE(abs(t.chiSU2), -t.chiSGn + Rat(0)) << n;
        EXPECT_EQ(t.chiPU2zeta, t.chiSU2);
    }
}

TEST(Disc, Examples) {
    EXPECT_EQ(disc_Kn(8), Int(256));
    EXPECT_EQ(disc_Kn(12), Int(144));
    EXPECT_EQ(disc_Kn(5), Int(125));
    EXPECT_EQ(disc_Fn(8), Rat(8));
    EXPECT_EQ(disc_Fn(12), Rat(12));
}

TEST(Decision, ExceptionalLevels) {
    for (long n : {8L, 12L, 16L, 24L}) {
        auto d = decide_gate_equality(n);
        EXPECT_TRUE(d.equal);
        EXPECT_EQ(d.relation, Relation::Equal);
    }
    for (long n : {20L, 28L, 32L, 36L, 48L}) {
        auto d = decide_gate_equality(n);
        EXPECT_FALSE(d.equal);
        EXPECT_EQ(d.relation, Relation::Greater);
    }
    EXPECT_THROW(decide_gate_equality(6), Error);
}

TEST(Decision, ScanIsSortedAndMatchesSequential) {
    auto rows = scan(132);
    ASSERT_EQ(rows.size(), 32U);
    long equal = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].n, 8 + 4 * static_cast<long>(i));
        EXPECT_EQ(rows[i].chiSU2, chi_table(rows[i].n).chiSU2);
        equal += rows[i].relation == Relation::Equal;
    }
    EXPECT_EQ(equal, 4);
    auto single = scan(60, 1);
    for (std::size_t i = 0; i < single.size(); ++i) EXPECT_EQ(single[i].M, rows[i].M);
}

TEST(Bound, ChainHoldsBeyondScan) {
    for (long n = 136; n <= 300; n += 4) {
        auto b = bound_chain(n);
        EXPECT_TRUE(b.exactExceedsBound) << n;
        EXPECT_TRUE(b.boundExceedsTarget) << n;
        EXPECT_TRUE(b.aboveThreshold) << n;
    }
    auto pi = pi_enclosure();
    EXPECT_LT(pi.lower, pi.upper);
    EXPECT_LT(pi.width(), Rat(1, 1000000));
}

TEST(Zeta, GaloisOrbitsGiveRationalFactors) {
    for (long n : {16L, 20L, 24L, 28L, 60L}) {
        auto chars = even_characters(n);
        std::vector<bool> used(chars.size(), false);
        Rat total(1);
        for (std::size_t i = 0; i < chars.size(); ++i) {
            if (used[i]) continue;
            const long m = chars[i].aux_level;
            CycElem orbit(m, 1);
            for (std::size_t j = 0; j < chars.size(); ++j) {
                if (used[j]) continue;
                bool conjugate = false;
                for (long k = 1; k < m && !conjugate; ++k) {
                    if (gcd_long(k, m) != 1) continue;
                    bool same = true;
                    for (std::size_t g = 0; g < chars[i].generator_images.size(); ++g)
                        same = same && mod(k * chars[i].generator_images[g] - chars[j].generator_images[g], m) == 0;
                    conjugate = same;
                }
                if (conjugate) {
                    used[j] = true;
                    orbit *= L_minus1(chars[j]);
                }
            }
            ASSERT_TRUE(orbit.is_rational()) << "n=" << n;
            total *= orbit.rational_value();
        }
        EXPECT_EQ(total, zeta_F_minus1(n));
    }
}
