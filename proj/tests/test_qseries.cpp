#include <gtest/gtest.h>

#include <random>

#include "lacunary/period.hpp"
#include "lacunary/qseries.hpp"
#include "lacunary/stern.hpp"

using namespace lacunary;

namespace {

QPoly qp(std::initializer_list<std::pair<Exponent, long>> t) {
    std::vector<QPoly::Term> v;
    for (auto [e, c] : t) v.emplace_back(e, Rational(c));
    return QPoly(v);
}

// Q_n for n >= 0 with binomials taken from GMP and reduced afterwards
QPoly brute_q(std::uint64_t n, const LambdaSpec& lam, const EpsilonSpec& eps) {
    std::vector<QPoly::Term> t;
    for (std::uint64_t k = n % 2; k <= n; k += 2) {
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), (n + k) / 2, k);
        if (mpz_odd_p(b.get_mpz_t())) t.emplace_back(mu(k, lam), Rational(sigma(k, eps)));
    }
    return QPoly(t);
}

std::vector<int> support_bits(const QSeriesHandle& h, std::uint64_t count) {
    auto c = q_omega_coefficients(h, count);
    for (auto& x : c) x = x != 0;
    return c;
}

}  // namespace

TEST(QPolyTest, Examples) {
    EXPECT_EQ(q_poly(0), QPoly::one());
    EXPECT_TRUE(q_poly(-1).is_zero());
    EXPECT_EQ(q_poly(2), qp({{0, 1}, {2, -1}}));
}

TEST(QPolyTest, BinomialOracle) {
    const std::vector<std::pair<LambdaSpec, EpsilonSpec>> cfgs{
        {LambdaSpec::mersenne(), EpsilonSpec::zero()},
        {LambdaSpec::mersenne(), EpsilonSpec({}, {1, 0})},
        {LambdaSpec::list({1, 4, 9, 19, 39, 80, 161, 323, 647, 1300, 2601}), EpsilonSpec({1}, {0, 1, 1})},
    };
    for (const auto& [lam, eps] : cfgs) {
        for (std::uint64_t n = 0; n < 700; ++n) {
            ASSERT_EQ(q_poly(static_cast<std::int64_t>(n), lam, eps), brute_q(n, lam, eps)) << n;
        }
    }
}

TEST(QPolyTest, NegativeIndex) {
    const LambdaSpec lists[] = {LambdaSpec::mersenne(), LambdaSpec::list({1, 4, 9, 19, 39, 80, 161})};
    for (const auto& lam : lists) {
        for (const auto& eps : {EpsilonSpec::zero(), EpsilonSpec({0, 1}, {1, 0})}) {
            EXPECT_TRUE(q_poly(-1, lam, eps).is_zero());
            for (std::int64_t n = 2; n <= 64; ++n) ASSERT_EQ(q_poly(-n, lam, eps), q_poly(n - 2, lam, eps)) << n;
        }
    }
}

TEST(QPolyTest, TermCountIsStern) {
    for (std::int64_t n = -(1 << 10) + 1; n < (1 << 12); ++n) {
        ASSERT_EQ(Integer(static_cast<unsigned long>(q_poly(n).term_count())), stern_u(n)) << n;
    }
}

TEST(QPolyTest, CoefficientsAreUnitsWithParity) {
    const QSeriesHandle h{Dyadic::from_rational(3, 7), LambdaSpec::mersenne(), EpsilonSpec({}, {1, 1, 0})};
    for (const auto& t : q_omega_window(h, 4096)) {
        EXPECT_TRUE(t.coefficient == 1 || t.coefficient == -1);
        EXPECT_EQ(t.k % 2, 1u);  // 3/7 is odd
    }
}

TEST(QOmegaWindow, MatchesIntegerPolynomial) {
    for (long n : {0L, 1L, 7L, 30L, 255L, -5L, -100L}) {
        const QSeriesHandle h{Dyadic(n), LambdaSpec::mersenne(), EpsilonSpec::zero()};
        const auto k = static_cast<std::uint64_t>(n >= 0 ? n : -n) + 40;
        EXPECT_EQ(window_poly(q_omega_window(h, k)), q_poly(n)) << n;
    }
}

TEST(QOmegaWindow, MinusOneIsEmpty) {
    const QSeriesHandle h{Dyadic(-1L), LambdaSpec::mersenne(), EpsilonSpec::zero()};
    for (std::uint64_t K : {0u, 1u, 100u, 1u << 16}) EXPECT_TRUE(q_omega_window(h, K).empty());
}

TEST(QOmegaWindow, MonotoneInBound) {
    const QSeriesHandle h{Dyadic::from_rational(-5, 11), LambdaSpec::mersenne(), EpsilonSpec({}, {1, 0})};
    const auto big = q_omega_window(h, 2048);
    for (std::uint64_t K : {0u, 17u, 300u, 1024u}) {
        const auto small = q_omega_window(h, K);
        ASSERT_LE(small.size(), big.size());
        EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
        if (!small.empty()) {
            EXPECT_LE(small.back().k, K);
        }
    }
}

TEST(QOmegaWindow, OneThirdPersists) {
    const QSeriesHandle h{Dyadic::from_rational(1, 3), LambdaSpec::mersenne(), EpsilonSpec::zero()};
    const auto terms = q_omega_window(h, 1u << 10);
    for (std::uint64_t b = 1; b < (1u << 10); b *= 2) {
        EXPECT_TRUE(std::any_of(terms.begin(), terms.end(), [b](const QTerm& t) { return t.k > b; })) << b;
    }
}

TEST(QOmegaWindow, StreamDepthEnforced) {
    const QSeriesHandle h{Dyadic::thue_morse(8), LambdaSpec::mersenne(), EpsilonSpec::zero()};
    EXPECT_NO_THROW(q_omega_window(h, 100));
    EXPECT_THROW(q_omega_window(h, 1000), Error);
}

TEST(QOmegaWindow, SupportNotUltimatelyPeriodic) {
    for (const auto& w : {Dyadic::from_rational(1, 3), Dyadic::from_rational(-1, 3), Dyadic::from_rational(1, 5),
                          Dyadic::from_rational(3, 7), Dyadic::from_rational(-5, 9)}) {
        const QSeriesHandle h{w, LambdaSpec::mersenne(), EpsilonSpec::zero()};
        EXPECT_FALSE(detect_ultimate_period(support_bits(h, 1u << 12), 64, 256)) << w.to_string();
    }
    // integers end in zeros, so the same test must see a period there
    const QSeriesHandle n{Dyadic(37L), LambdaSpec::mersenne(), EpsilonSpec::zero()};
    EXPECT_TRUE(detect_ultimate_period(support_bits(n, 1u << 12), 64, 256));
}

TEST(Fgh, BaseValues) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> a(-500, 500), b(0, 60);
    for (int i = 0; i < 200; ++i) {
        const Dyadic w = Dyadic::from_rational(a(rng), 2 * b(rng) + 1);
        EXPECT_EQ(fgh(w, 0, Tag::g), 1);
        EXPECT_EQ(fgh(w, 0, Tag::h), w.digit(0));
    }
}

TEST(Fgh, SumRelation) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> a(-1000, 1000), b(0, 127);
    std::uniform_int_distribution<std::uint64_t> kd(0, 1u << 16);
    for (int i = 0; i < 1000; ++i) {
        const Dyadic w = Dyadic::from_rational(a(rng), 2 * b(rng) + 1);
        const std::uint64_t k = kd(rng);
        ASSERT_EQ(fgh(w, k, Tag::f), fgh(w, k, Tag::g) ^ fgh(w, k, Tag::h));
        ASSERT_EQ(fgh(w, k, Tag::f), halfsum_binom(w, k));
    }
}

TEST(Polynomiality, Verdicts) {
    const auto yes = is_polynomial({Dyadic(5L), LambdaSpec::mersenne(), EpsilonSpec::zero()});
    EXPECT_EQ(yes.verdict, Polynomiality::Yes);
    EXPECT_EQ(yes.degree, q_poly(5).degree());
    EXPECT_EQ(is_polynomial({Dyadic::from_rational(1, 3), LambdaSpec::mersenne(), EpsilonSpec::zero()}).verdict,
              Polynomiality::No);
    const auto tm = is_polynomial({Dyadic::thue_morse(), LambdaSpec::mersenne(), EpsilonSpec::zero()}, 1000);
    EXPECT_EQ(tm.verdict, Polynomiality::Unknown);
    EXPECT_TRUE(tm.last_nonzero_k.has_value());
    const auto neg = is_polynomial({Dyadic(-1L), LambdaSpec::mersenne(), EpsilonSpec::zero()});
    EXPECT_EQ(neg.verdict, Polynomiality::Yes);
    EXPECT_EQ(neg.degree, kDegreeOfZero);
}

TEST(Polynomiality, DegreeUnderList) {
    const LambdaSpec lam = LambdaSpec::list({1, 4, 9, 19, 39, 80, 161});
    for (long n = -60; n < 100; ++n) {
        const auto r = is_polynomial({Dyadic(n), lam, EpsilonSpec::zero()});
        ASSERT_EQ(r.degree, q_poly(n, lam, EpsilonSpec::zero()).degree()) << n;
    }
}

TEST(Pell, Examples) {
    for (long n = 1; n <= 64; ++n) EXPECT_TRUE(pell_check_mod2(Dyadic(n), 128)) << n;
    EXPECT_TRUE(pell_check_mod2(Dyadic(0L), 128));
    EXPECT_TRUE(pell_check_mod2(Dyadic::from_rational(1, 3), 256));
    for (const auto& w : {Dyadic::from_rational(-1, 3), Dyadic::from_rational(1, 5), Dyadic::from_rational(7, 9)}) {
        EXPECT_TRUE(pell_check_mod2(w, 256)) << w.to_string();
    }
}

TEST(Pell, DetectsBrokenIdentity) {
    // Q_n^2 + Q_{n+2} Q_n is not 1 for n = 3
    const GF2Poly a = q_mod2_truncated(Dyadic(3L), LambdaSpec::mersenne(), 64);
    const GF2Poly b = q_mod2_truncated(Dyadic(5L), LambdaSpec::mersenne(), 64);
    EXPECT_NE(a * a + a * b, GF2Poly::one());
}

TEST(Chebyshev, Examples) {
    EXPECT_EQ(chebyshev_U_scaled(2), qp({{0, -1}, {2, 1}}));
    EXPECT_EQ(chebyshev_U_scaled_mod2(2), reduce_mod2(qp({{0, 1}, {2, 1}})));
}

TEST(Chebyshev, AgreesWithQn) {
    const auto table = chebyshev_U_scaled_table(1u << 9);
    for (std::size_t n = 0; n < table.size(); ++n) {
        ASSERT_EQ(reduce_mod2(table[n]), reduce_mod2(q_poly(static_cast<std::int64_t>(n)))) << n;
        if (n < (1u << 9)) {
            ASSERT_EQ(Integer(static_cast<unsigned long>(reduce_mod2(table[n]).term_count())),
                      stern_u(static_cast<std::int64_t>(n)));
        }
        if (n <= 80) {
            ASSERT_EQ(table[n], chebyshev_U_scaled_explicit(n)) << n;
        }
    }
}

TEST(Fibonacci, SumMatchesRecurrenceAndReduction) {
    QPoly prev, cur = QPoly::one();
    for (std::uint64_t n = 1; n < 256; ++n) {
        ASSERT_EQ(fibonacci_poly(n), cur) << n;
        // F_{n+1} mod 2 through Lucas
        std::vector<GF2Poly::Term> t;
        for (std::uint64_t j = 0; 2 * j <= n; ++j) {
            if (lucas_binom2(n - j, j)) t.emplace_back(static_cast<Exponent>(n - 2 * j), 1);
        }
        QPoly next = QPoly::x() * cur + prev;
        prev = cur;
        cur = next;
        ASSERT_EQ(reduce_mod2(cur), GF2Poly(t)) << n;
        ASSERT_EQ(reduce_mod2(cur), reduce_mod2(q_poly(static_cast<std::int64_t>(n)))) << n;
    }
    EXPECT_TRUE(fibonacci_poly(0).is_zero());
}

TEST(MorganVoyce, SmallCases) {
    EXPECT_EQ(morgan_voyce(0, MorganVoyceKind::b), QPoly::one());
    EXPECT_EQ(morgan_voyce(1, MorganVoyceKind::b), qp({{0, 1}, {1, 1}}));
    EXPECT_EQ(morgan_voyce(1, MorganVoyceKind::B), qp({{0, 2}, {1, 1}}));
    EXPECT_EQ(morgan_voyce(2, MorganVoyceKind::b), qp({{0, 1}, {1, 3}, {2, 1}}));
}

TEST(ANumber, ZeroIsOne) {
    const auto a = a_number(EpsilonSpec::zero(), Dyadic(0L), 10, 60);
    EXPECT_EQ(a.partial_sum, Rational(1));
    EXPECT_EQ(a.decimal(5), "1.00000");
}

TEST(ANumber, MinusOne) {
    // -1 dominates every k, but the sum runs over k << (k + w)/2, which is empty for w = -1
    for (std::uint64_t k = 0; k < 4096; ++k) ASSERT_EQ(binom2_dyadic(Dyadic(-1L), Integer(static_cast<unsigned long>(k))), 1);
    EXPECT_EQ(a_number(EpsilonSpec::zero(), Dyadic(-1L), 2, 50).partial_sum, Rational(0));
    // -3 keeps exactly k = 1: binom(-1, 1) = 1
    const std::uint64_t K = 50;
    Rational want = 0, p = 1;
    for (std::uint64_t k = 0; k <= K; ++k) {
        if (k % 2 == 1 && halfsum_binom(Dyadic(-3L), k)) want += (nu(k) % 2 ? -p : p);
        p /= 2;
    }
    EXPECT_EQ(want, Rational(1, 2));
    EXPECT_EQ(a_number(EpsilonSpec::zero(), Dyadic(-3L), 2, K).partial_sum, want);
}

TEST(ANumber, WindowStableOneThird) {
    const Dyadic w = Dyadic::from_rational(1, 3);
    const auto a = a_number(EpsilonSpec::zero(), w, 10, 40), b = a_number(EpsilonSpec::zero(), w, 10, 50);
    EXPECT_EQ(a.decimal(40), b.decimal(40));
    EXPECT_LE(abs(Rational(a.partial_sum - b.partial_sum)), a.error_bound);
    EXPECT_THROW(a_number(EpsilonSpec::zero(), w, 1, 10), Error);
}

TEST(ANumber, DecimalRendering) {
    EXPECT_EQ(to_decimal(Rational(-1, 8), 3), "-0.125");
    EXPECT_EQ(to_decimal(Rational(22, 7), 4), "3.1428");
    EXPECT_EQ(to_decimal(Rational(5), 0), "5");
}
