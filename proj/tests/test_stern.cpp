#include <gtest/gtest.h>

#include <thread>

#include "lacunary/dyadic.hpp"
#include "lacunary/stern.hpp"

using namespace lacunary;

namespace {

// ways to write n as a sum of powers of two, each used at most twice
long hyperbinary(long n, long p = 1) {
    if (n == 0) return 1;
    if (p > n) return 0;
    long c = 0;
    for (int use = 0; use <= 2 && use * p <= n; ++use) {
        if ((n - use * p) % (2 * p) == 0) c += hyperbinary(n - use * p, 2 * p);
    }
    return c;
}

}  // namespace

TEST(Stern, Examples) {
    EXPECT_EQ(stern_u(4), 3);
    EXPECT_EQ(stern_u(-1), 0);
    EXPECT_EQ(stern_u(-4), 2);
    const long want[] = {2, 1, 1, 0, 1, 1, 2, 1, 3};
    for (int n = -4; n <= 4; ++n) EXPECT_EQ(stern_u(n), want[n + 4]) << n;
}

TEST(Stern, HyperbinaryOracle) {
    for (long n = 0; n < 1024; ++n) ASSERT_EQ(stern_u(n), hyperbinary(n)) << n;
}

TEST(Stern, ExtendedRecursion) {
    for (std::int64_t m = -2000; m < 2000; ++m) {
        ASSERT_EQ(stern_u(2 * m), stern_u(m) + stern_u(m - 1)) << m;
        ASSERT_EQ(stern_u(2 * m + 1), stern_u(m)) << m;
    }
    for (std::int64_t n = 2; n < 3000; ++n) ASSERT_EQ(stern_u(-n), stern_u(n - 2));
}

TEST(Stern, Carlitz) {
    EXPECT_EQ(stern_carlitz(0), 1);
    EXPECT_EQ(stern_carlitz(4), 3);
    EXPECT_EQ(stern_carlitz(1 << 10), stern_u(1 << 10));
    for (std::int64_t n = 0; n < (1 << 12); ++n) ASSERT_EQ(stern_carlitz(n), stern_u(n)) << n;
    EXPECT_THROW(stern_carlitz(-1), Error);
}

TEST(Stern, DiatomicShift) {
    EXPECT_EQ(stern_diatomic(0), 0);
    EXPECT_EQ(stern_diatomic(1), 1);
    for (std::int64_t n = 0; n < (1 << 12); ++n) ASSERT_EQ(stern_diatomic(n + 1), stern_u(n));
}

TEST(Stern, DominatedCount) {
    for (long n = 0; n < 512; ++n) {
        long c = 0;
        for (std::uint64_t k = 0; k <= static_cast<std::uint64_t>(n); ++k) c += halfsum_binom(Dyadic(n), k);
        ASSERT_EQ(stern_u(n), c) << n;
    }
}

TEST(Stern, ConcurrentMemo) {
    std::vector<std::thread> pool;
    std::vector<Integer> got(8);
    for (int t = 0; t < 8; ++t) {
        pool.emplace_back([t, &got] {
            Integer acc = 0;
            for (std::int64_t n = 100000 + t; n < 140000; n += 7) acc += stern_u(n);
            got[static_cast<std::size_t>(t)] = acc;
        });
    }
    for (auto& th : pool) th.join();
    for (int t = 0; t < 8; ++t) {
        Integer acc = 0;
        for (std::int64_t n = 100000 + t; n < 140000; n += 7) acc += stern_carlitz(n);
        EXPECT_EQ(got[static_cast<std::size_t>(t)], acc);
    }
}

TEST(CTransform, Examples) {
    EXPECT_EQ(c_transform(constant_one, constant_one, 4), 3);
    EXPECT_EQ(alpha_c(0), 1);
    const int gamma[] = {1, -1, 0, 1, -1, 0, 1, -1, 0};
    for (int n = 0; n <= 8; ++n) EXPECT_EQ(gamma_c(n), gamma[n]) << n;
    EXPECT_THROW(c_transform(constant_one, constant_one, -1), Error);
}

TEST(ThueMorse, Values) {
    const int want[] = {1, -1, -1, 1};
    for (int n = 0; n < 4; ++n) EXPECT_EQ(thue_morse(n), want[n]);
    for (std::int64_t n = 0; n < 1000; ++n) {
        EXPECT_EQ(thue_morse(2 * n), thue_morse(n));
        EXPECT_EQ(thue_morse(2 * n + 1), -thue_morse(n));
    }
}

TEST(Remarks, InitialValues) {
    EXPECT_EQ(alpha_rec(0), 1);
    EXPECT_EQ(beta_rec(0), 1);
    EXPECT_EQ(beta_rec(1), -1);
    EXPECT_EQ(gamma_rec(0), 1);
}

TEST(Remarks, GammaPeriod) {
    const int g[3] = {1, -1, 0};
    for (std::int64_t n = 0; n < 10000; ++n) ASSERT_EQ(gamma_rec(n), g[n % 3]) << n;
}

TEST(Remarks, DualPath) {
    for (std::int64_t n = 0; n < 2048; ++n) {
        ASSERT_EQ(alpha_rec(n), alpha_c(n)) << n;
        ASSERT_EQ(beta_rec(n), beta_c(n)) << n;
        ASSERT_EQ(gamma_rec(n), gamma_c(n)) << n;
    }
}

TEST(Paperfolding, Relations) {
    EXPECT_EQ(paperfolding_vwz(0).z, -1);
    for (std::uint64_t n = 0; n < (1u << 14); ++n) {
        const int s = n % 2 ? -1 : 1;
        ASSERT_EQ(paperfolding_vwz(2 * n).w, s);
        ASSERT_EQ(paperfolding_vwz(2 * n + 1).z, paperfolding_vwz(n).z);
        ASSERT_EQ(paperfolding_vwz(2 * n).z, -s);
        ASSERT_EQ(paperfolding_vwz(n).v, nu(n) % 2 ? -1 : 1);
    }
}

TEST(Paperfolding, MatchesFoldingConstruction) {
    // unfold a strip: d_{2^m + i} = d for i = 2^m (middle), mirrored and negated elsewhere
    std::vector<int> seq{1};
    while (seq.size() < 4096) {
        std::vector<int> next = seq;
        next.push_back(1);
        for (auto it = seq.rbegin(); it != seq.rend(); ++it) next.push_back(-*it);
        seq = std::move(next);
    }
    // z(n) is the regular paperfolding sequence read from index 0, up to a global sign
    const int sign = paperfolding_vwz(0).z * seq[0];
    for (std::uint64_t n = 0; n < 4095; ++n) ASSERT_EQ(paperfolding_vwz(n).z, sign * seq[n]) << n;
}
