#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "lacunary/bits.hpp"

namespace lacunary {

using IntSequence = std::function<Integer(std::int64_t)>;

namespace detail {

/// Thread-safe memo table for a recursively defined integer sequence.
/// The rule may call back into the table; the lock is never held while
/// the rule runs.
class MemoSequence {
public:
    using Rule = std::function<Integer(std::int64_t, MemoSequence&)>;
    explicit MemoSequence(Rule rule) : rule_(std::move(rule)) {}

    Integer operator()(std::int64_t n) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(n); it != table_.end()) return it->second;
        }
        Integer value = rule_(n, *this);
        std::unique_lock lock(mutex_);
        table_.try_emplace(n, value);
        return value;
    }

private:
    Rule rule_;
    std::shared_mutex mutex_;
    std::unordered_map<std::int64_t, Integer> table_;
};

inline std::int64_t half_floor(std::int64_t n) { return n >= 0 ? n / 2 : -((-n + 1) / 2); }

inline MemoSequence& stern_table() {
    static MemoSequence table([](std::int64_t n, MemoSequence& u) -> Integer {
        if (n == 0 || n == 1) return 1;
        if (n == -1) return 0;
        if (n < 0) return u(-n - 2);
        const std::int64_t m = n / 2;
        return n % 2 == 0 ? Integer(u(m) + u(m - 1)) : u(m);
    });
    return table;
}

/// alpha, beta, gamma from their recursions; the table's index selects which.
inline MemoSequence& remark_table(char which) {
    auto make = [](int first, int sign_even, int sign_odd) {
        return MemoSequence([=](std::int64_t n, MemoSequence& s) -> Integer {
            if (n == 0) return 1;
            if (n == 1) return first;
            const std::int64_t m = n / 2;
            if (n % 2 == 0) return s(m) + sign_even * s(m - 1);
            return sign_odd * s(m);
        });
    };
    static MemoSequence alpha = make(1, -1, 1);
    static MemoSequence beta = make(-1, -1, -1);
    static MemoSequence gamma = make(-1, 1, -1);
    switch (which) {
        case 'a': return alpha;
        case 'b': return beta;
        default: return gamma;
    }
}

}  // namespace detail

/// u_n for every n in Z: u_0 = u_1 = 1, u_{2n} = u_n + u_{n-1},
/// u_{2n+1} = u_n, u_{-1} = 0 and u_{-n} = u_{n-2}.
inline Integer stern_u(std::int64_t n) {
    if (n < 0 && n < -(std::int64_t{1} << 62)) throw Error("index out of range");
    return detail::stern_table()(n);
}

/// Carlitz: u_n = sum_{0 <= 2r <= n} binom(n - r, r)_2.
inline Integer stern_carlitz(std::int64_t n) {
    if (n < 0) throw Error("stern_carlitz needs n >= 0");
    std::int64_t count = 0;
    for (std::int64_t r = 0; 2 * r <= n; ++r) {
        count += lucas_binom2(static_cast<std::uint64_t>(n - r), static_cast<std::uint64_t>(r));
    }
    return count;
}

/// The diatomic variant v_0 = 0, v_1 = 1, v_{2n} = v_n, v_{2n+1} = v_n + v_{n+1}.
inline Integer stern_diatomic(std::int64_t n) {
    if (n < 0) throw Error("stern_diatomic needs n >= 0");
    // Track (v_n, v_{n+1}) from the top bit down.
    Integer a = 0, b = 1;
    for (int q = 63 - std::countl_zero(static_cast<std::uint64_t>(n | 1)); q >= 0; --q) {
        if ((n >> q) & 1) a = a + b;
        else b = a + b;
    }
    return a;
}

/// C(a, b)_n = sum_{0 <= 2r <= n} binom(n - r, r)_2 a_r b_{n-r}.
inline Integer c_transform(const IntSequence& a, const IntSequence& b, std::int64_t n) {
    if (n < 0) throw Error("c_transform needs n >= 0");
    Integer total = 0;
    for (std::int64_t r = 0; 2 * r <= n; ++r) {
        if (lucas_binom2(static_cast<std::uint64_t>(n - r), static_cast<std::uint64_t>(r))) {
            total += a(r) * b(n - r);
        }
    }
    return total;
}

/// +-1 Thue-Morse: t_{2n} = t_n, t_{2n+1} = -t_n.
inline int thue_morse(std::int64_t n) {
    if (n < 0) throw Error("thue_morse needs n >= 0");
    return std::popcount(static_cast<std::uint64_t>(n)) & 1 ? -1 : 1;
}

inline Integer thue_morse_int(std::int64_t n) { return thue_morse(n); }
inline Integer constant_one(std::int64_t) { return 1; }

inline Integer alpha_rec(std::int64_t n) { return detail::remark_table('a')(n); }
inline Integer beta_rec(std::int64_t n) { return detail::remark_table('b')(n); }
inline Integer gamma_rec(std::int64_t n) { return detail::remark_table('g')(n); }

inline Integer alpha_c(std::int64_t n) { return c_transform(thue_morse_int, constant_one, n); }
inline Integer beta_c(std::int64_t n) { return c_transform(constant_one, thue_morse_int, n); }
inline Integer gamma_c(std::int64_t n) { return c_transform(thue_morse_int, thue_morse_int, n); }

struct Paperfolding {
    int v;
    int w;
    int z;
};

/// v(n) = (-1)^{nu(n)}, w(n) = v(n) v(n+1), z(n) = w(2n+1).
inline Paperfolding paperfolding_vwz(std::uint64_t n) {
    auto v = [](std::uint64_t m) { return nu(m) & 1u ? -1 : 1; };
    auto w = [&](std::uint64_t m) { return v(m) * v(m + 1); };
    return {v(n), w(n), w(2 * n + 1)};
}

}  // namespace lacunary
