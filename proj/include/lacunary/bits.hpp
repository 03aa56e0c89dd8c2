#pragma once

#include <bit>
#include <charconv>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <concepts>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lacunary/ring.hpp"

namespace lacunary {

// ---------------------------------------------------------------------------
// Binary digits of nonnegative integers
// ---------------------------------------------------------------------------

inline unsigned bit_length(std::uint64_t k) { return static_cast<unsigned>(std::bit_width(k)); }
inline unsigned bit_length(const Integer& k) {
    if (sgn(k) < 0) throw Error("negative BinaryNat");
    return sgn(k) == 0 ? 0u : static_cast<unsigned>(mpz_sizeinbase(k.get_mpz_t(), 2));
}

/// e_q(k), the q-th binary digit.
inline int digit(std::uint64_t k, unsigned q) { return q < 64 ? static_cast<int>((k >> q) & 1u) : 0; }
inline int digit(const Integer& k, unsigned q) { return mpz_tstbit(k.get_mpz_t(), q); }

template <typename T>
concept BinaryNat = std::same_as<T, std::uint64_t> || std::same_as<T, Integer>;

/// Number of occurrences of the block "10" reading the binary expansion
/// most significant digit first.
template <BinaryNat K>
unsigned nu(const K& k) {
    const unsigned len = bit_length(k);
    unsigned count = 0;
    for (unsigned q = len; q-- > 1;) {
        if (digit(k, q) == 1 && digit(k, q - 1) == 0) ++count;
    }
    return count;
}

/// The same count via nu(2n+1) = nu(n), nu(4n) = nu(2n), nu(4n+2) = nu(n) + 1.
inline unsigned nu_recursive(std::uint64_t k) {
    unsigned extra = 0;
    while (k > 0) {
        if (k & 1u) {
            k >>= 1;
        } else if ((k & 3u) == 0) {
            k >>= 1;
        } else {
            ++extra;
            k >>= 2;
        }
    }
    return extra;
}

/// v(n) = (-1)^{nu(n)} from v(2n+1) = v(n), v(2n) = (-1)^n v(n).
inline int v_sign(std::uint64_t n) {
    int s = 1;
    while (n > 0) {
        if ((n & 1u) == 0 && (n & 2u) != 0) s = -s;
        n >>= 1;
    }
    return s;
}

/// Parity of C(m, k) by Lucas: 1 iff every 1-digit of k is a 1-digit of m.
inline int lucas_binom2(std::uint64_t m, std::uint64_t k) { return (m & k) == k ? 1 : 0; }
inline int lucas_binom2(const Integer& m, const Integer& k) {
    if (sgn(m) < 0 || sgn(k) < 0) throw Error("negative BinaryNat");
    Integer both;
    mpz_and(both.get_mpz_t(), m.get_mpz_t(), k.get_mpz_t());
    return both == k ? 1 : 0;
}

/// k << m in the domination order.
template <BinaryNat K>
bool dominates(const K& k, const K& m) { return lucas_binom2(m, k) == 1; }

// ---------------------------------------------------------------------------
// Exponent sequence Lambda
// ---------------------------------------------------------------------------

/// The exponents lambda_n of the lacunary series. Growth lambda_{n+1} > 2 lambda_n
/// is checked each time a value is read.
class LambdaSpec {
public:
    using Rule = std::function<Exponent(std::size_t)>;

    static LambdaSpec mersenne() { return LambdaSpec(Mersenne{}); }
    static LambdaSpec list(std::vector<Exponent> values) { return LambdaSpec(Explicit{std::move(values)}); }
    static LambdaSpec closed_form(Rule rule, std::string label = "closed-form") {
        return LambdaSpec(ClosedForm{std::move(rule), std::move(label)});
    }

    /// lambda_n for n >= -1 (lambda_{-1} = 0).
    Exponent at(std::int64_t n) const {
        if (n < -1) throw Error("lambda range");
        if (n == -1) return 0;
        const Exponent cur = raw(static_cast<std::size_t>(n));
        const Exponent prev = n == 0 ? 0 : raw(static_cast<std::size_t>(n - 1));
        if (n == 0 && cur <= 0) throw Error("lambda must be positive");
        if (n > 0 && !(cur > 2 * prev)) {
            throw Error("lambda growth violated at index " + std::to_string(n));
        }
        return cur;
    }

    /// Number of accessible terms, or nothing when unbounded.
    std::optional<std::size_t> size() const {
        if (const auto* e = std::get_if<Explicit>(&rule_)) return e->values.size();
        if (std::holds_alternative<Mersenne>(rule_)) return std::size_t{62};
        return std::nullopt;
    }

    bool is_mersenne() const { return std::holds_alternative<Mersenne>(rule_); }

    std::string to_string() const {
        if (is_mersenne()) return "mersenne";
        if (const auto* e = std::get_if<Explicit>(&rule_)) {
            std::string s = "list:";
            for (std::size_t i = 0; i < e->values.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(e->values[i]);
            }
            return s;
        }
        return std::get<ClosedForm>(rule_).label;
    }

    /// Accepts "mersenne" or "list:1,3,7,15".
    static LambdaSpec parse(std::string_view text);

private:
    struct Mersenne {};
    struct Explicit { std::vector<Exponent> values; };
    struct ClosedForm { Rule rule; std::string label; };
    std::variant<Mersenne, Explicit, ClosedForm> rule_;

    template <typename V>
    explicit LambdaSpec(V v) : rule_(std::move(v)) {}

    Exponent raw(std::size_t n) const {
        if (std::holds_alternative<Mersenne>(rule_)) {
            if (n >= 62) throw Error("lambda range");
            return (Exponent{1} << (n + 1)) - 1;
        }
        if (const auto* e = std::get_if<Explicit>(&rule_)) {
            if (n >= e->values.size()) throw Error("lambda range");
            return e->values[n];
        }
        return std::get<ClosedForm>(rule_).rule(n);
    }
};

// ---------------------------------------------------------------------------
// Sign sequence epsilon
// ---------------------------------------------------------------------------

/// Eventually periodic 0/1 sequence; eps_n = 0 for n < 0.
class EpsilonSpec {
public:
    EpsilonSpec() : period_{0} {}
    EpsilonSpec(std::vector<int> preperiod, std::vector<int> period)
        : pre_(std::move(preperiod)), period_(std::move(period)) {
        if (period_.empty()) throw Error("epsilon period must be nonempty");
        for (int b : pre_) check(b);
        for (int b : period_) check(b);
    }

    static EpsilonSpec zero() { return {}; }

    int at(std::int64_t n) const {
        if (n < 0) return 0;
        const auto u = static_cast<std::size_t>(n);
        if (u < pre_.size()) return pre_[u];
        return period_[(u - pre_.size()) % period_.size()];
    }

    bool is_zero() const {
        for (int b : pre_) if (b) return false;
        for (int b : period_) if (b) return false;
        return true;
    }

    const std::vector<int>& preperiod() const { return pre_; }
    const std::vector<int>& period() const { return period_; }

    std::string to_string() const {
        auto join = [](const std::vector<int>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        return pre_.empty() ? "period:" + join(period_) : "pre:" + join(pre_) + "+period:" + join(period_);
    }

    /// Accepts "period:0" or "pre:1,0+period:0,1".
    static EpsilonSpec parse(std::string_view text);

private:
    std::vector<int> pre_;
    std::vector<int> period_;

    static void check(int b) {
        if (b != 0 && b != 1) throw Error("epsilon entries must be 0 or 1");
    }
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error("malformed number '" + std::string(s) + "'");
    }
    return v;
}

template <typename T>
std::vector<T> parse_list(std::string_view s) {
    std::vector<T> out;
    if (s.empty()) return out;
    for (auto part : split(s, ',')) out.push_back(parse_number<T>(part));
    return out;
}

}  // namespace detail

inline LambdaSpec LambdaSpec::parse(std::string_view text) {
    if (text == "mersenne") return mersenne();
    if (text.starts_with("list:")) {
        auto values = detail::parse_list<Exponent>(text.substr(5));
        if (values.empty()) throw Error("empty lambda list");
        LambdaSpec spec = list(values);
        for (std::size_t n = 0; n < values.size(); ++n) spec.at(static_cast<std::int64_t>(n));
        return spec;
    }
    throw Error("malformed lambda spec '" + std::string(text) + "'");
}

inline EpsilonSpec EpsilonSpec::parse(std::string_view text) {
    std::vector<int> pre;
    std::string_view rest = text;
    if (rest.starts_with("pre:")) {
        const auto plus = rest.find('+');
        if (plus == std::string_view::npos) throw Error("malformed epsilon spec '" + std::string(text) + "'");
        pre = detail::parse_list<int>(rest.substr(4, plus - 4));
        rest = rest.substr(plus + 1);
    }
    if (!rest.starts_with("period:")) throw Error("malformed epsilon spec '" + std::string(text) + "'");
    auto period = detail::parse_list<int>(rest.substr(7));
    if (period.empty()) throw Error("epsilon period must be nonempty");
    return EpsilonSpec(std::move(pre), std::move(period));
}

// ---------------------------------------------------------------------------
// Exponent and sign of the monomials of Q_n
// ---------------------------------------------------------------------------

/// mu(k, Lambda) = sum_q e_q(k) (lambda_q - lambda_{q-1}).
template <BinaryNat K>
Exponent mu(const K& k, const LambdaSpec& lam) {
    if (lam.is_mersenne()) {
        if (bit_length(k) > 62) throw Error("lambda range");
        if constexpr (std::same_as<K, Integer>) return k.get_si();
        else return static_cast<Exponent>(k);
    }
    Exponent total = 0;
    const unsigned len = bit_length(k);
    for (unsigned q = 0; q < len; ++q) {
        if (digit(k, q)) {
            const Exponent gap = lam.at(q) - lam.at(static_cast<std::int64_t>(q) - 1);
            if (__builtin_add_overflow(total, gap, &total)) throw Error("lambda range");
        }
    }
    return total;
}

/// Which epsilon pair weighs digit q in the sign exponent. `Shifted`
/// (eps_q - eps_{q-1}) is the reading that reproduces the continued
/// fraction; the others are kept so the mismatch stays checkable.
enum class SignIndexing { Shifted, Lagged, Literal };

/// Parity of sum_q e_q(k) (eps_q - eps_{q-1}).
template <BinaryNat K>
int mubar(const K& k, const EpsilonSpec& eps, SignIndexing indexing = SignIndexing::Shifted) {
    const unsigned len = bit_length(k);
    int parity = 0;
    std::int64_t literal_k = 0;
    if (indexing == SignIndexing::Literal) {
        if constexpr (std::same_as<K, Integer>) literal_k = to_int64(k);
        else literal_k = static_cast<std::int64_t>(k);
    }
    for (unsigned q = 0; q < len; ++q) {
        if (!digit(k, q)) continue;
        const auto iq = static_cast<std::int64_t>(q);
        switch (indexing) {
            case SignIndexing::Shifted: parity ^= eps.at(iq) ^ eps.at(iq - 1); break;
            case SignIndexing::Lagged: parity ^= eps.at(iq - 1) ^ eps.at(iq - 2); break;
            case SignIndexing::Literal: parity ^= eps.at(literal_k - 1) ^ eps.at(literal_k - 2); break;
        }
    }
    return parity;
}

/// sigma(k, eps) = (-1)^{nu(k) + mubar(k, eps)}.
template <BinaryNat K>
int sigma(const K& k, const EpsilonSpec& eps, SignIndexing indexing = SignIndexing::Shifted) {
    return ((nu(k) + static_cast<unsigned>(mubar(k, eps, indexing))) & 1u) ? -1 : 1;
}

}  // namespace lacunary
