#pragma once

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "lacunary/automaton.hpp"
#include "lacunary/contfrac.hpp"
#include "lacunary/oeis.hpp"
#include "lacunary/qseries.hpp"
#include "lacunary/stern.hpp"

namespace lacunary::verify {

enum class Level { Quick, Full };

struct Config {
    Level level = Level::Quick;
    std::uint64_t seed = 1;
    std::string fixtures_dir;  // empty: OEIS checks are skipped
};

struct Result {
    std::string module;
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
};

/// A check returns an empty string on success, otherwise a description of
/// the first counterexample.
struct Check {
    std::string module;
    std::string name;
    std::function<std::string(const Config&)> run;
};

namespace detail {

inline std::uint64_t pick(const Config& c, std::uint64_t quick, std::uint64_t full) {
    return c.level == Level::Quick ? quick : full;
}

inline QPoly random_qpoly(std::mt19937_64& rng, bool integral) {
    std::uniform_int_distribution<int> count(0, 6), exp(0, 20), num(-5, 5), den(1, 4);
    std::vector<QPoly::Term> t;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Rational c(num(rng), integral ? 1 : den(rng));
        c.canonicalize();
        t.emplace_back(exp(rng), c);
    }
    return QPoly(std::move(t));
}

inline GF2Poly random_gf2poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(0, 8), exp(0, 30);
    std::vector<GF2Poly::Term> t;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) t.emplace_back(exp(rng), 1);
    return GF2Poly(std::move(t));
}

/// a/b with |a| <= 1000 and odd 1 <= b <= 255.
inline Dyadic random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000, 1000), den(0, 127);
    return Dyadic::from_rational(Integer(num(rng)), Integer(2 * den(rng) + 1));
}

/// Extended list 1, 4, 9, 19, 39, 79, ... (lambda_{n+1} = 2 lambda_n + 1 after 9).
inline LambdaSpec long_list_lambda(std::size_t count = 40) {
    std::vector<Exponent> v{1, 4, 9};
    while (v.size() < count) v.push_back(2 * v.back() + 1);
    return LambdaSpec::list(v);
}

struct CfBundle {
    ContinuedFraction cf;
    Convergents conv;
};

struct CfCase {
    std::string name;
    LambdaSpec lambda;
    EpsilonSpec eps;
    Exponent precision;
};

inline std::vector<CfCase> cf_cases(const Config& c) {
    const auto N = static_cast<Exponent>(pick(c, 512, 4096));
    return {
        {"mersenne/eps=0", LambdaSpec::mersenne(), EpsilonSpec::zero(), N},
        {"mersenne/eps=period:1,0", LambdaSpec::mersenne(), EpsilonSpec({}, {1, 0}), N},
        {"mersenne/eps=pre:1+period:0", LambdaSpec::mersenne(), EpsilonSpec({1}, {0}), N},
        {"list:1,4,9,19,39", LambdaSpec::list({1, 4, 9, 19, 39}), EpsilonSpec::zero(), 78},
        {"list:1,4,9,...(extended)/eps=period:1,1,0", long_list_lambda(), EpsilonSpec({}, {1, 1, 0}), N},
    };
}

inline std::shared_ptr<const CfBundle> cached_cf(const CfCase& c) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_future<std::shared_ptr<const CfBundle>>> cache;
    const std::string key = c.name + "@" + std::to_string(c.precision);
    std::promise<std::shared_ptr<const CfBundle>> promise;
    std::shared_future<std::shared_ptr<const CfBundle>> future;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second.get();
        future = promise.get_future().share();
        cache.emplace(key, future);
    }
    try {
        auto b = std::make_shared<CfBundle>();
        b->cf = cf_expand(build_F(c.lambda, c.eps, c.precision), SIZE_MAX);
        b->conv = convergents(b->cf);
        promise.set_value(std::move(b));
    } catch (...) {
        promise.set_exception(std::current_exception());
    }
    return future.get();
}

inline std::vector<Dyadic> rational_set() {
    return {Dyadic::from_rational(1, 3), Dyadic::from_rational(-1, 3), Dyadic::from_rational(1, 5),
            Dyadic::from_rational(3, 7), Dyadic(-5L)};
}

/// binom((w+k)/2, k)_2 by halving the low digits explicitly.
inline int halfsum_by_halving(const Dyadic& w, std::uint64_t k) {
    if (w.parity() != static_cast<int>(k & 1u)) return 0;
    const unsigned L = bit_length(k);
    Integer sum = w.low_bits(L + 1) + Integer(std::to_string(k));
    mpz_fdiv_q_2exp(sum.get_mpz_t(), sum.get_mpz_t(), 1);
    mpz_fdiv_r_2exp(sum.get_mpz_t(), sum.get_mpz_t(), L);
    return lucas_binom2(sum, Integer(std::to_string(k)));
}

}  // namespace detail

inline std::vector<Check> all_checks() {
    using namespace detail;
    std::vector<Check> v;
    auto add = [&](std::string module, std::string name, std::function<std::string(const Config&)> fn) {
        v.push_back({std::move(module), std::move(name), std::move(fn)});
    };

    // -------------------------------------------------------------- core-arith
    add("core-arith", "ring-axioms-Q", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed);
        for (std::uint64_t i = 0; i < pick(c, 200, 1000); ++i) {
            const QPoly a = random_qpoly(rng, false), b = random_qpoly(rng, false), d = random_qpoly(rng, false);
            if ((a + b) + d != a + (b + d)) return "addition not associative";
            if ((a * b) * d != a * (b * d)) return "multiplication not associative";
            if (a * (b + d) != a * b + a * d) return "not distributive";
            if (a * b != b * a) return "multiplication not commutative";
            if (a - a != QPoly()) return "a - a != 0";
        }
        return {};
    });
    add("core-arith", "ring-axioms-GF2", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 1);
        for (std::uint64_t i = 0; i < pick(c, 200, 1000); ++i) {
            const GF2Poly a = random_gf2poly(rng), b = random_gf2poly(rng), d = random_gf2poly(rng);
            if ((a + b) + d != a + (b + d)) return "addition not associative";
            if ((a * b) * d != a * (b * d)) return "multiplication not associative";
            if (a * (b + d) != a * b + a * d) return "not distributive";
            if (a + a != GF2Poly()) return "a + a != 0";
        }
        return {};
    });
    add("core-arith", "series-inverse", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 2);
        std::uniform_int_distribution<int> top(-3, 3), num(-4, 4), width(1, 30);
        for (std::uint64_t i = 0; i < pick(c, 100, 500); ++i) {
            const int t = top(rng), w = width(rng);
            std::vector<std::pair<Exponent, Rational>> terms{{t, Rational(num(rng) == 0 ? 1 : 2)}};
            for (int e = t - 1; e > t - w; --e) terms.emplace_back(e, Rational(num(rng)));
            const QSeries a = QSeries::from_terms(terms, t, t - w + 1, false);
            const QSeries prod = a * a.inverse();
            for (Exponent e = prod.top(); e >= prod.low(); --e) {
                if (prod.coefficient(e) != (e == 0 ? 1 : 0)) return "a * a^-1 differs from 1 at X^" + std::to_string(e);
            }
        }
        return {};
    });
    add("core-arith", "reduce-mod2-homomorphism", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 3);
        for (std::uint64_t i = 0; i < pick(c, 200, 1000); ++i) {
            const QPoly a = random_qpoly(rng, true), b = random_qpoly(rng, true);
            if (reduce_mod2(a * b) != reduce_mod2(a) * reduce_mod2(b)) return "product not preserved";
            if (reduce_mod2(a + b) != reduce_mod2(a) + reduce_mod2(b)) return "sum not preserved";
        }
        return {};
    });

    // -------------------------------------------------------------------- bits
    add("bits", "lucas-popcount", [](const Config& c) -> std::string {
        for (std::uint64_t m = 0; m < pick(c, 1u << 9, 1u << 12); ++m) {
            std::uint64_t count = 0;
            for (std::uint64_t k = 0; k <= m; ++k) count += static_cast<std::uint64_t>(lucas_binom2(m, k));
            if (count != std::uint64_t{1} << std::popcount(m)) return "m = " + std::to_string(m);
        }
        return {};
    });
    add("bits", "lucas-vs-pascal", [](const Config& c) -> std::string {
        const std::uint64_t limit = pick(c, 1u << 7, 1u << 10);
        std::vector<std::uint8_t> row{1};
        for (std::uint64_t m = 0; m < limit; ++m) {
            for (std::uint64_t k = 0; k <= m; ++k) {
                if (lucas_binom2(m, k) != row[k]) return "C(" + std::to_string(m) + "," + std::to_string(k) + ")";
            }
            std::vector<std::uint8_t> next(row.size() + 1, 0);
            for (std::size_t k = 0; k < next.size(); ++k) {
                next[k] = static_cast<std::uint8_t>((k < row.size() ? row[k] : 0) ^ (k > 0 ? row[k - 1] : 0));
            }
            row = std::move(next);
        }
        return {};
    });
    add("bits", "domination-partial-order", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 4);
        std::uniform_int_distribution<std::uint64_t> d(0, 63);
        for (std::uint64_t i = 0; i < pick(c, 2000, 20000); ++i) {
            const std::uint64_t a = d(rng), b = d(rng), e = d(rng);
            if (!dominates(a, a)) return "not reflexive";
            if (dominates(a, b) && dominates(b, a) && a != b) return "not antisymmetric";
            if (dominates(a, b) && dominates(b, e) && !dominates(a, e)) return "not transitive";
        }
        return {};
    });
    add("bits", "nu-dual-path", [](const Config& c) -> std::string {
        for (std::uint64_t n = 0; n < pick(c, 1u << 12, 1u << 16); ++n) {
            if (nu(n) != nu_recursive(n)) return "n = " + std::to_string(n);
        }
        return {};
    });
    add("bits", "v-recurrences", [](const Config& c) -> std::string {
        auto v = [](std::uint64_t n) { return nu(n) & 1u ? -1 : 1; };
        for (std::uint64_t n = 0; n < pick(c, 1u << 12, 1u << 16); ++n) {
            if (v(2 * n + 1) != v(n) || v(4 * n) != v(2 * n) || v(4 * n + 2) != -v(n)) return "n = " + std::to_string(n);
            if (v_sign(n) != v(n)) return "v_sign(" + std::to_string(n) + ")";
        }
        return {};
    });
    add("bits", "mu-injective", [](const Config& c) -> std::string {
        const LambdaSpec lam = long_list_lambda(14);
        const std::uint64_t limit = pick(c, 1u << 10, 1u << 12);
        std::vector<Exponent> seen;
        for (std::uint64_t k = 0; k < limit; ++k) seen.push_back(mu(k, lam));
        for (std::size_t i = 1; i < seen.size(); ++i) {
            if (seen[i] <= seen[i - 1]) return "mu not increasing at k = " + std::to_string(i);
        }
        return {};
    });

    // ------------------------------------------------------------------ dyadic
    add("dyadic", "digit-lemma-i", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 5);
        for (std::uint64_t i = 0; i < pick(c, 100, 1000); ++i) {
            const Dyadic w = random_rational(rng);
            for (unsigned j = 0; j < 64; ++j) {
                Integer p2;
                mpz_ui_pow_ui(p2.get_mpz_t(), 2, j);
                const int lhs = binom2_dyadic(w.add(p2), Integer(2 * p2));
                if (lhs != (w.digit(j) ^ w.digit(j + 1))) return w.to_string() + " j = " + std::to_string(j);
            }
        }
        return {};
    });
    add("dyadic", "digit-lemma-iv", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 6);
        std::uniform_int_distribution<std::uint64_t> kd(0, 1u << 16);
        for (std::uint64_t i = 0; i < pick(c, 100, 1000); ++i) {
            const Dyadic w = random_rational(rng);
            const std::uint64_t k = kd(rng);
            const int a = halfsum_binom(w, k);
            if (a != halfsum_binom_via_add(w, k)) return "add route differs at " + w.to_string();
            if (a != halfsum_by_halving(w, k)) return "halving route differs at " + w.to_string();
        }
        return {};
    });
    add("dyadic", "digit-lemma-v", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 7);
        for (std::uint64_t i = 0; i < pick(c, 100, 1000); ++i) {
            const Dyadic w = random_rational(rng);
            if (w.is_finite() && w.value() == -1) continue;
            const auto [ell, rest] = split_leading_ones(w);
            if (ell + 12 > 62) return "leading ones beyond the test range";
            const std::uint64_t base = (std::uint64_t{1} << ell) - 1;
            for (std::uint64_t kp = 0; kp < (1u << 10); ++kp) {
                const std::uint64_t k = base + (kp << (ell + 1));
                const int rhs = kp < 16 ? binom2_dyadic(rest.add(Integer(static_cast<long>(kp))), 2 * kp)
                                        : shifted_binom2(rest, kp, 2 * kp);
                if (halfsum_binom(w, k) != rhs) return w.to_string() + " k' = " + std::to_string(kp);
            }
        }
        return {};
    });
    add("dyadic", "digit-lemma-vi", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 8);
        for (std::uint64_t i = 0; i < pick(c, 100, 1000); ++i) {
            const Dyadic w = random_rational(rng);
            if (w.is_finite() && w.value() == -1) continue;
            const auto split = split_first_zero_one(w);
            if (!split) continue;  // w = 2^l - 1
            const auto& [ell, j, rest] = *split;
            if (ell + j + 14 > 62) return "block beyond the test range";
            const std::uint64_t base = (std::uint64_t{1} << ell) - 1;
            for (std::uint64_t kp = 0; kp < (1u << 10); ++kp) {
                const std::uint64_t k = base + ((((2 * kp + 1) << j)) << (ell + 1));
                const int rhs = kp < 16 ? binom2_dyadic(rest.add(Integer(static_cast<long>(kp + 1))), 2 * kp + 1)
                                        : shifted_binom2(rest, kp + 1, 2 * kp + 1);
                if (halfsum_binom(w, k) != rhs) return w.to_string() + " k' = " + std::to_string(kp);
            }
        }
        return {};
    });
    add("dyadic", "rational-round-trip", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 9);
        for (std::uint64_t i = 0; i < pick(c, 200, 1000); ++i) {
            const Dyadic w = random_rational(rng);
            const auto [a, b] = w.to_rational();
            if (!(Dyadic::from_rational(a, b) == w)) return "round trip " + w.to_string();
            const auto dp = w.digits_period();
            if (!(Dyadic::from_digits(dp.preperiod, dp.period) == w)) return "canonical form not idempotent " + w.to_string();
            // a = b * (omega mod 2^64) mod 2^64
            Integer lhs = a - b * w.low_bits(64);
            mpz_fdiv_r_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), 64);
            if (lhs != 0) return "multiply-back " + w.to_string();
        }
        return {};
    });
    add("dyadic", "add-dual-route", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 10);
        std::uniform_int_distribution<long> nd(-100000, 100000);
        for (std::uint64_t i = 0; i < pick(c, 200, 1000); ++i) {
            const Dyadic w = random_rational(rng);
            const Integer n(nd(rng));
            if (!(w.add(n) == w.add_via_rational(n))) return w.to_string() + " + " + n.get_str();
        }
        return {};
    });

    // ---------------------------------------------------------------- contfrac
    add("contfrac", "quotients-integral", [](const Config& c) -> std::string {
        for (const auto& cs : cf_cases(c)) {
            if (!cached_cf(cs)->cf.integral()) return cs.name;
        }
        return {};
    });
    add("contfrac", "coefficients-pm1", [](const Config& c) -> std::string {
        for (const auto& cs : cf_cases(c)) {
            const auto b = cached_cf(cs);
            for (std::size_t n = 0; n < b->cf.certified_count(); ++n) {
                for (const auto& [e, q] : b->conv.Q[n].terms()) {
                    if (q != 1 && q != -1) return cs.name + " Q_" + std::to_string(n);
                }
            }
        }
        return {};
    });
    add("contfrac", "p-congruence", [](const Config& c) -> std::string {
        for (const auto& cs : cf_cases(c)) {
            if (!cs.lambda.is_mersenne()) continue;
            const auto b = cached_cf(cs);
            for (std::size_t n = 1; n < b->cf.certified_count(); ++n) {
                if (reduce_mod2(b->conv.P[n]) != reduce_mod2(b->conv.Q[n - 1])) return cs.name + " n = " + std::to_string(n);
            }
        }
        return {};
    });
    add("contfrac", "phi-congruence", [](const Config& c) -> std::string {
        for (const auto& cs : cf_cases(c)) {
            if (!cs.lambda.is_mersenne()) continue;
            const auto b = cached_cf(cs);
            const std::size_t m = b->cf.certified_count();
            if (m < 2) return cs.name + ": nothing certified";
            const auto phi = phi_oracle(m - 1);
            for (std::size_t n = 0; n < m; ++n) {
                if (reduce_mod2(b->conv.Q[n]) != reduce_mod2(phi.Q[n])) return cs.name + " n = " + std::to_string(n);
            }
        }
        return {};
    });
    add("contfrac", "phi-numerators", [](const Config& c) -> std::string {
        const auto phi = phi_oracle(pick(c, 20, 50));
        for (std::size_t n = 1; n < phi.P.size(); ++n) {
            if (phi.P[n] != phi.Q[n - 1]) return "pi_n != kappa_{n-1} at n = " + std::to_string(n);
        }
        return {};
    });
    add("contfrac", "term-count-stern", [](const Config& c) -> std::string {
        for (const auto& cs : cf_cases(c)) {
            const auto b = cached_cf(cs);
            for (std::size_t n = 0; n < b->cf.certified_count(); ++n) {
                if (Integer(static_cast<unsigned long>(b->conv.Q[n].term_count())) != stern_u(static_cast<std::int64_t>(n))) {
                    return cs.name + " n = " + std::to_string(n);
                }
            }
        }
        return {};
    });
    add("contfrac", "determinant", [](const Config& c) -> std::string {
        for (const auto& cs : cf_cases(c)) {
            const auto b = cached_cf(cs);
            for (std::size_t n = 0; n + 1 < b->cf.certified_count(); ++n) {
                const QPoly d = b->conv.P[n + 1] * b->conv.Q[n] - b->conv.P[n] * b->conv.Q[n + 1];
                if (d != QPoly::constant(Rational(n % 2 ? -1 : 1))) return cs.name + " n = " + std::to_string(n);
            }
        }
        return {};
    });
    add("contfrac", "prefix-stability", [](const Config& c) -> std::string {
        for (auto cs : cf_cases(c)) {
            if (!cs.lambda.is_mersenne()) continue;
            const auto coarse = cf_expand(build_F(cs.lambda, cs.eps, cs.precision / 2), SIZE_MAX);
            const auto fine = cached_cf(cs);
            for (std::size_t i = 0; i < coarse.certified_count(); ++i) {
                if (i >= fine->cf.quotients.size() || coarse.quotients[i] != fine->cf.quotients[i]) {
                    return cs.name + " A_" + std::to_string(i);
                }
            }
        }
        return {};
    });

    // ------------------------------------------------------------------- stern
    add("stern", "carlitz", [](const Config& c) -> std::string {
        for (std::int64_t n = 0; n < static_cast<std::int64_t>(pick(c, 1u << 10, 1u << 14)); ++n) {
            if (stern_u(n) != stern_carlitz(n)) return "n = " + std::to_string(n);
        }
        return {};
    });
    add("stern", "dominated-count", [](const Config& c) -> std::string {
        for (std::int64_t n = 0; n < static_cast<std::int64_t>(pick(c, 1u << 8, 1u << 10)); ++n) {
            const Dyadic w(Integer(static_cast<long>(n)));
            long count = 0;
            for (std::uint64_t k = 0; k <= static_cast<std::uint64_t>(n); ++k) count += halfsum_binom(w, k);
            if (stern_u(n) != count) return "n = " + std::to_string(n);
        }
        return {};
    });
    add("stern", "extended-recursion", [](const Config&) -> std::string {
        for (std::int64_t m = -(1 << 10) + 1; m < (1 << 10); ++m) {
            if (stern_u(2 * m) != stern_u(m) + stern_u(m - 1)) return "u(2m), m = " + std::to_string(m);
            if (stern_u(2 * m + 1) != stern_u(m)) return "u(2m+1), m = " + std::to_string(m);
        }
        return {};
    });
    add("stern", "diatomic-shift", [](const Config& c) -> std::string {
        for (std::int64_t n = 0; n < static_cast<std::int64_t>(pick(c, 1u << 10, 1u << 12)); ++n) {
            if (stern_u(n) != stern_diatomic(n + 1)) return "n = " + std::to_string(n);
        }
        return {};
    });
    add("stern", "gamma-period", [](const Config& c) -> std::string {
        static constexpr int period[3] = {1, -1, 0};
        for (std::int64_t n = 0; n < static_cast<std::int64_t>(pick(c, 1000, 16384)); ++n) {
            if (gamma_rec(n) != period[n % 3]) return "n = " + std::to_string(n);
        }
        return {};
    });
    add("stern", "alpha-beta-gamma-dual-path", [](const Config& c) -> std::string {
        for (std::int64_t n = 0; n < static_cast<std::int64_t>(pick(c, 1u << 9, 1u << 12)); ++n) {
            if (alpha_rec(n) != alpha_c(n)) return "alpha n = " + std::to_string(n);
            if (beta_rec(n) != beta_c(n)) return "beta n = " + std::to_string(n);
            if (gamma_rec(n) != gamma_c(n)) return "gamma n = " + std::to_string(n);
        }
        return {};
    });
    add("stern", "paperfolding", [](const Config& c) -> std::string {
        for (std::uint64_t n = 0; n < pick(c, 1u << 10, 1u << 14); ++n) {
            const int sign = n % 2 ? -1 : 1;
            if (paperfolding_vwz(2 * n).w != sign) return "w(2n), n = " + std::to_string(n);
            if (paperfolding_vwz(2 * n).z != -sign) return "z(2n), n = " + std::to_string(n);
            if (paperfolding_vwz(2 * n + 1).z != paperfolding_vwz(n).z) return "z(2n+1), n = " + std::to_string(n);
        }
        return {};
    });

    // ----------------------------------------------------------------- qseries
    add("qseries", "cf-oracle", [](const Config& c) -> std::string {
        for (const auto& cs : cf_cases(c)) {
            const auto b = cached_cf(cs);
            const std::size_t m = b->cf.certified_count();
            if (m < 12) return cs.name + ": only " + std::to_string(m) + " certified";
            for (std::size_t n = 0; n < m; ++n) {
                if (q_poly(static_cast<std::int64_t>(n), cs.lambda, cs.eps) != b->conv.Q[n]) {
                    return cs.name + " n = " + std::to_string(n);
                }
            }
        }
        return {};
    });
    add("qseries", "negative-index", [](const Config&) -> std::string {
        for (const auto& lam : {LambdaSpec::mersenne(), long_list_lambda()}) {
            if (!q_poly(-1, lam, EpsilonSpec::zero()).is_zero()) return "Q_{-1} != 0";
            for (std::int64_t n = 2; n <= 64; ++n) {
                for (const auto& eps : {EpsilonSpec::zero(), EpsilonSpec({}, {1, 0})}) {
                    if (q_poly(-n, lam, eps) != q_poly(n - 2, lam, eps)) return lam.to_string() + " n = " + std::to_string(n);
                }
            }
        }
        return {};
    });
    add("qseries", "term-count-stern", [](const Config& c) -> std::string {
        const auto hi = static_cast<std::int64_t>(pick(c, 1u << 9, 1u << 12));
        for (std::int64_t n = -(1 << 10) + 1; n < hi; ++n) {
            if (Integer(static_cast<unsigned long>(q_poly(n).term_count())) != stern_u(n)) return "n = " + std::to_string(n);
        }
        return {};
    });
    add("qseries", "chebyshev", [](const Config& c) -> std::string {
        const std::size_t limit = pick(c, 1u << 7, 1u << 9);
        const auto table = chebyshev_U_scaled_table(limit);
        for (std::size_t n = 0; n <= limit; ++n) {
            const GF2Poly u = reduce_mod2(table[n]);
            if (u != reduce_mod2(q_poly(static_cast<std::int64_t>(n)))) return "n = " + std::to_string(n);
            if (Integer(static_cast<unsigned long>(u.term_count())) != stern_u(static_cast<std::int64_t>(n))) {
                return "odd coefficients, n = " + std::to_string(n);
            }
            if (n <= 64 && table[n] != chebyshev_U_scaled_explicit(n)) return "explicit sum, n = " + std::to_string(n);
        }
        return {};
    });
    add("qseries", "fibonacci-morgan-voyce", [](const Config& c) -> std::string {
        QPoly f_prev, f = QPoly::one();  // F_0, F_1
        for (std::uint64_t n = 0; n < pick(c, 1u << 6, 1u << 8); ++n) {
            // f = F_{n+1}
            if (fibonacci_poly(n + 1) != f) return "Fibonacci recurrence, n = " + std::to_string(n);
            if (reduce_mod2(f) != reduce_mod2(q_poly(static_cast<std::int64_t>(n)))) return "F_{n+1} mod 2, n = " + std::to_string(n);
            QPoly next = QPoly::x() * f + f_prev;
            f_prev = std::move(f);
            f = std::move(next);
            const Dyadic w(Integer(static_cast<unsigned long>(n)));
            std::vector<GF2Poly::Term> gt, ft;
            for (std::uint64_t k = 0; k <= n; ++k) {
                if (fgh(w, k, Tag::g)) gt.emplace_back(static_cast<Exponent>(k), 1);
                if (fgh(w, k, Tag::f)) ft.emplace_back(static_cast<Exponent>(k), 1);
            }
            if (reduce_mod2(morgan_voyce(n, MorganVoyceKind::b)) != GF2Poly(gt)) return "b_n mod 2, n = " + std::to_string(n);
            if (reduce_mod2(morgan_voyce(n, MorganVoyceKind::B)) != GF2Poly(ft)) return "B_n mod 2, n = " + std::to_string(n);
            if (n >= 2) {
                const QPoly x2 = QPoly::x() + QPoly::constant(2);
                if (morgan_voyce(n, MorganVoyceKind::b) != x2 * morgan_voyce(n - 1, MorganVoyceKind::b) - morgan_voyce(n - 2, MorganVoyceKind::b)) {
                    return "b_n recurrence, n = " + std::to_string(n);
                }
                if (morgan_voyce(n, MorganVoyceKind::B) != x2 * morgan_voyce(n - 1, MorganVoyceKind::B) - morgan_voyce(n - 2, MorganVoyceKind::B)) {
                    return "B_n recurrence, n = " + std::to_string(n);
                }
            }
        }
        return {};
    });
    add("qseries", "pell-mod2", [](const Config& c) -> std::string {
        for (long n = 0; n <= static_cast<long>(pick(c, 64, 1024)); ++n) {
            if (!pell_check_mod2(Dyadic(n), 2 * n + 2)) return "n = " + std::to_string(n);
        }
        for (const auto& w : rational_set()) {
            if (!pell_check_mod2(w, 256)) return w.to_string();
        }
        return {};
    });
    add("qseries", "fgh-sum", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 11);
        std::uniform_int_distribution<std::uint64_t> kd(0, 1u << 20);
        for (std::uint64_t i = 0; i < pick(c, 1000, 10000); ++i) {
            const Dyadic w = random_rational(rng);
            const std::uint64_t k = kd(rng);
            if (fgh(w, k, Tag::f) != (fgh(w, k, Tag::g) ^ fgh(w, k, Tag::h))) return w.to_string() + " k = " + std::to_string(k);
        }
        return {};
    });
    add("qseries", "polynomiality", [](const Config& c) -> std::string {
        for (long n : {5L, -7L, 12L, 0L, -2L}) {
            const QSeriesHandle h{Dyadic(n), LambdaSpec::mersenne(), EpsilonSpec::zero()};
            const auto r = is_polynomial(h);
            if (r.verdict != Polynomiality::Yes) return "int:" + std::to_string(n) + " not polynomial";
            const auto window = q_omega_window(h, 1u << 12);
            const Exponent expect = window.empty() ? kDegreeOfZero : window.back().exponent;
            if (r.degree != expect) return "int:" + std::to_string(n) + " degree";
        }
        const std::uint64_t bound = pick(c, 1u << 10, 1u << 12);
        for (const auto& w : {Dyadic::from_rational(1, 3), Dyadic::from_rational(1, 5), Dyadic::from_rational(-1, 3)}) {
            const QSeriesHandle h{w, LambdaSpec::mersenne(), EpsilonSpec::zero()};
            if (is_polynomial(h).verdict != Polynomiality::No) return w.to_string() + " reported polynomial";
            const auto coeffs = q_omega_coefficients(h, bound);
            for (std::uint64_t p2 = 1; p2 < bound; p2 *= 2) {
                bool found = false;
                for (std::uint64_t k = p2; k < bound && !found; ++k) found = coeffs[k] != 0;
                if (!found) return w.to_string() + ": no term beyond " + std::to_string(p2);
            }
            std::vector<std::uint8_t> support(coeffs.size());
            for (std::size_t k = 0; k < coeffs.size(); ++k) support[k] = coeffs[k] != 0;
            if (detect_ultimate_period(support, 64, 256)) return w.to_string() + ": support looks periodic";
        }
        return {};
    });

    // --------------------------------------------------------------- automaton
    add("automaton", "dfao-equivalence", [](const Config& c) -> std::string {
        const std::uint64_t limit = pick(c, 1u << 12, 1u << 16);
        for (const auto& w : rational_set()) {
            for (Tag t : {Tag::f, Tag::g, Tag::h}) {
                const Dfao d = build_dfao(w, t);
                if (d.size() > 3 * orbit(w).size() + 1) return w.to_string() + " too many states";
                for (std::uint64_t k = 0; k < limit; ++k) {
                    if (d.evaluate(k) != fgh(w, k, t)) return w.to_string() + " " + tag_char(t) + " k = " + std::to_string(k);
                }
            }
        }
        return {};
    });
    add("automaton", "trailing-zero-stability", [](const Config& c) -> std::string {
        std::mt19937_64 rng(c.seed + 12);
        std::uniform_int_distribution<std::uint64_t> kd(0, 1u << 20);
        for (const auto& w : rational_set()) {
            const Dfao d = build_dfao(w, Tag::f);
            for (std::size_t s = 0; s < d.size(); ++s) {
                if (d.output[d.delta[s][0]] != d.output[s]) return w.to_string() + " state " + std::to_string(s);
            }
            for (int i = 0; i < 200; ++i) {
                const std::uint64_t k = kd(rng);
                std::vector<int> digits;
                for (std::uint64_t x = k; x; x >>= 1) digits.push_back(static_cast<int>(x & 1u));
                digits.resize(digits.size() + 5, 0);
                if (d.evaluate_digits(digits) != d.evaluate(k)) return w.to_string() + " k = " + std::to_string(k);
            }
        }
        return {};
    });
    add("automaton", "kernel-closure", [](const Config& c) -> std::string {
        const std::uint64_t len = pick(c, 1u << 8, 1u << 10);
        for (const auto& w : rational_set()) {
            for (Tag t : {Tag::f, Tag::g, Tag::h}) {
                const Dfao d = build_dfao(w, t);
                std::vector<std::vector<int>> realized(d.size(), std::vector<int>(len));
                for (std::size_t s = 0; s < d.size(); ++s) {
                    for (std::uint64_t k = 0; k < len; ++k) realized[s][k] = d.evaluate_from(static_cast<Dfao::State>(s), k);
                }
                for (std::size_t s = 0; s < d.size(); ++s) {
                    for (std::uint64_t b = 0; b < 2; ++b) {
                        std::vector<int> sub(len / 2);
                        for (std::uint64_t k = 0; k < len / 2; ++k) sub[k] = realized[s][2 * k + b];
                        bool found = false;
                        for (const auto& r : realized) found = found || std::equal(sub.begin(), sub.end(), r.begin());
                        if (!found) return w.to_string() + " state " + std::to_string(s);
                    }
                }
            }
        }
        return {};
    });
    add("automaton", "signed-dfao", [](const Config& c) -> std::string {
        const std::uint64_t limit = pick(c, 1u << 10, 1u << 14);
        for (const auto& w : rational_set()) {
            for (const auto& eps : {EpsilonSpec::zero(), EpsilonSpec({}, {1, 0}), EpsilonSpec({1, 1}, {0, 1, 1})}) {
                const Dfao d = signed_dfao(w, eps);
                const auto coeffs = q_omega_coefficients({w, LambdaSpec::mersenne(), eps}, limit);
                for (std::uint64_t k = 0; k < limit; ++k) {
                    if (d.evaluate(k) != coeffs[k]) return w.to_string() + " " + eps.to_string() + " k = " + std::to_string(k);
                }
            }
        }
        return {};
    });
    add("automaton", "json-round-trip", [](const Config&) -> std::string {
        for (const auto& w : rational_set()) {
            const Dfao d = signed_dfao(w, EpsilonSpec({}, {1, 0}));
            const Dfao back = load_json(export_json(d));
            for (std::uint64_t k = 0; k < 1000; ++k) {
                if (back.evaluate(k) != d.evaluate(k)) return w.to_string();
            }
        }
        return {};
    });
    add("automaton", "algebraic-relation", [](const Config&) -> std::string {
        for (const auto& w : {Dyadic::from_rational(1, 3), Dyadic::from_rational(-1, 3), Dyadic::from_rational(1, 5)}) {
            const auto s = q_mod2_prefix(w, 4096);
            const auto r = find_algebraic_relation(s, 4, 64, 4096);
            if (!r) return w.to_string() + ": no relation within (4, 64, 4096)";
            if (!verify_relation(s, *r)) return w.to_string() + ": relation does not re-verify";
        }
        std::vector<std::uint8_t> squares(4096, 0);
        for (std::size_t i = 0; i * i < squares.size(); ++i) squares[i * i] = 1;
        if (find_algebraic_relation(squares, 4, 64, 4096)) return "relation reported for the squares";
        return {};
    });

    // -------------------------------------------------------------------- oeis
    for (const auto& rel : oeis_registry()) {
        add("oeis", rel.id, [id = rel.id](const Config& c) -> std::string {
            const auto& r = find_oeis(id);
            const BFile b = load_bfile(c.fixtures_dir + "/b" + id.substr(1) + ".txt");
            const auto rep = oeis_check(r, b);
            if (!rep.ok()) {
                return "mismatch at index " + std::to_string(*rep.first_mismatch) + ": expected " + rep.expected.get_str() +
                       ", got " + rep.got.get_str();
            }
            return {};
        });
    }
    return v;
}

/// Runs the selected checks concurrently; results come back in registry order.
inline std::vector<Result> run(const Config& config, const std::string& module_filter = "") {
    std::vector<Check> checks;
    for (auto& c : all_checks()) {
        if (module_filter.empty() || c.module == module_filter) checks.push_back(std::move(c));
    }
    std::vector<std::future<Result>> futures;
    for (const auto& c : checks) {
        futures.push_back(std::async(std::launch::async, [&config, c] {
            Result r;
            r.module = c.module;
            r.name = c.name;
            if (c.module == "oeis" && config.fixtures_dir.empty()) {
                r.skipped = true;
                r.passed = true;
                r.detail = "no fixture directory";
                return r;
            }
            const auto start = std::chrono::steady_clock::now();
            try {
                r.detail = c.run(config);
                r.passed = r.detail.empty();
            } catch (const std::exception& e) {
                r.passed = false;
                r.detail = std::string("error: ") + e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return r;
        }));
    }
    std::vector<Result> results;
    for (auto& f : futures) results.push_back(f.get());
    return results;
}

}  // namespace lacunary::verify
