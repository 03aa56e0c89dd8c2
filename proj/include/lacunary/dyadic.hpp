#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lacunary/bits.hpp"
#include "lacunary/period.hpp"

namespace lacunary {

enum class DyadicClass { Integer, RationalNonInteger, Unknown };

inline std::string_view to_string(DyadicClass c) {
    switch (c) {
        case DyadicClass::Integer: return "integer";
        case DyadicClass::RationalNonInteger: return "rational-non-integer";
        case DyadicClass::Unknown: return "irrational-or-unknown";
    }
    return "?";
}

using UltimatePeriod = Periodicity<std::uint8_t>;

/// A 2-adic integer omega = sum_j omega_j 2^j.
///
/// Three representations: an exact integer (digits of n, then 0^inf or the
/// two's complement 1^inf tail), a canonical eventually periodic digit
/// sequence (always a non-integer rational), or an opaque digit rule that is
/// only trusted below its declared depth.
class Dyadic {
public:
    using DigitRule = std::function<int(std::uint64_t)>;
    enum class Kind { Finite, EventuallyPeriodic, Stream };

    Dyadic() : Dyadic(Integer(0)) {}
    explicit Dyadic(Integer n) : rep_(Finite{std::move(n)}) { cache_low_word(); }
    explicit Dyadic(long n) : Dyadic(Integer(n)) {}

    static Dyadic integer(const Integer& n) { return Dyadic(n); }

    /// Eventually periodic digits; canonicalized (integers come back Finite).
    static Dyadic from_digits(std::vector<std::uint8_t> preperiod, std::vector<std::uint8_t> period) {
        if (period.empty()) throw Error("period must be nonempty");
        for (auto d : preperiod) if (d > 1) throw Error("digits must be 0 or 1");
        for (auto d : period) if (d > 1) throw Error("digits must be 0 or 1");
        return canonical(std::move(preperiod), std::move(period));
    }

    /// a/b with b odd.
    static Dyadic from_rational(Integer a, Integer b) {
        if (sgn(b) == 0) throw Error("not a 2-adic integer");
        if (sgn(b) < 0) {
            a = -a;
            b = -b;
        }
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g > 1) {
            a /= g;
            b /= g;
        }
        if (mpz_even_p(b.get_mpz_t())) throw Error("not a 2-adic integer");
        if (b == 1) return Dyadic(a);
        // omega = x/b; digit = x mod 2; next x = (x - digit*b)/2. The states x
        // stay bounded, so the sequence of states cycles.
        std::map<Integer, std::size_t> seen;
        std::vector<std::uint8_t> digits;
        Integer x = a;
        while (true) {
            auto [it, fresh] = seen.try_emplace(x, digits.size());
            if (!fresh) {
                const std::size_t start = it->second;
                std::vector<std::uint8_t> pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
                std::vector<std::uint8_t> per(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
                return canonical(std::move(pre), std::move(per));
            }
            const std::uint8_t d = mpz_odd_p(x.get_mpz_t()) ? 1 : 0;
            digits.push_back(d);
            if (d) x -= b;
            mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
        }
    }

    /// Opaque digit rule; reading digit j >= depth throws "stream exhausted".
    static Dyadic stream(DigitRule rule, std::uint64_t depth, std::string name) {
        Dyadic w;
        w.rep_ = Stream{std::make_shared<const DigitRule>(std::move(rule)), depth, std::move(name)};
        w.cache_low_word();
        return w;
    }

    /// Digits t_j = popcount(j) mod 2.
    static Dyadic thue_morse(std::uint64_t depth = std::uint64_t{1} << 20) {
        return stream([](std::uint64_t j) { return std::popcount(j) & 1; }, depth, "thue-morse");
    }

    /// Regular paperfolding digits: for n = j + 1 = 2^a (2b + 1), digit = 1 iff b is even.
    static Dyadic paperfolding(std::uint64_t depth = std::uint64_t{1} << 20) {
        return stream(
            [](std::uint64_t j) {
                const std::uint64_t n = j + 1;
                const std::uint64_t odd = n >> std::countr_zero(n);
                return (odd & 3u) == 1 ? 1 : 0;
            },
            depth, "paperfolding");
    }

    Kind kind() const { return static_cast<Kind>(rep_.index()); }
    bool is_finite() const { return kind() == Kind::Finite; }

    const Integer& value() const {
        if (!is_finite()) throw Error("not an integer");
        return std::get<Finite>(rep_).value;
    }

    /// Canonical preperiod/period; Finite values report their 0^inf or 1^inf tail.
    UltimatePeriod digits_period() const {
        if (const auto* p = std::get_if<Periodic>(&rep_)) return {p->pre, p->period};
        if (const auto* f = std::get_if<Finite>(&rep_)) {
            const bool negative = sgn(f->value) < 0;
            // Digits of n (or of -n-1 complemented) up to its bit length.
            Integer mag = negative ? Integer(-f->value - 1) : f->value;
            const unsigned len = bit_length(mag);
            std::vector<std::uint8_t> pre(len);
            for (unsigned q = 0; q < len; ++q) pre[q] = static_cast<std::uint8_t>(lacunary::digit(mag, q) ^ (negative ? 1 : 0));
            return {pre, {static_cast<std::uint8_t>(negative ? 1 : 0)}};
        }
        throw Error("opaque stream has no known period");
    }

    std::uint64_t safe_depth() const {
        if (const auto* s = std::get_if<Stream>(&rep_)) return s->depth;
        return UINT64_MAX;
    }

    /// omega_j.
    int digit(std::uint64_t j) const {
        switch (kind()) {
            case Kind::Finite: return mpz_tstbit(std::get<Finite>(rep_).value.get_mpz_t(), j);
            case Kind::EventuallyPeriodic: {
                const auto& p = std::get<Periodic>(rep_);
                if (j < p.pre.size()) return p.pre[j];
                return p.period[(j - p.pre.size()) % p.period.size()];
            }
            case Kind::Stream: {
                const auto& s = std::get<Stream>(rep_);
                if (j >= s.depth) throw Error("stream exhausted");
                return (*s.rule)(j) ? 1 : 0;
            }
        }
        return 0;
    }

    int parity() const { return digit(0); }

    /// omega mod 2^L as a nonnegative integer.
    Integer low_bits(std::uint64_t L) const {
        if (L <= 64) return Integer(std::to_string(low_word(static_cast<unsigned>(L))));
        if (const auto* f = std::get_if<Finite>(&rep_)) {
            Integer r;
            mpz_fdiv_r_2exp(r.get_mpz_t(), f->value.get_mpz_t(), L);
            return r;
        }
        require_depth(L);
        Integer r(0);
        for (std::uint64_t j = 0; j < L; ++j) {
            if (digit(j)) mpz_setbit(r.get_mpz_t(), j);
        }
        return r;
    }

    /// omega mod 2^L for L <= 64.
    std::uint64_t low_word(unsigned L) const {
        if (L > 64) throw Error("window wider than 64 digits");
        require_depth(L);
        if (L == 64) return low_word_;
        return low_word_ & ((std::uint64_t{1} << L) - 1);
    }

    /// T omega = (omega - omega_0) / 2.
    Dyadic shift() const {
        switch (kind()) {
            case Kind::Finite: {
                Integer r;
                mpz_fdiv_q_2exp(r.get_mpz_t(), std::get<Finite>(rep_).value.get_mpz_t(), 1);
                return Dyadic(r);
            }
            case Kind::EventuallyPeriodic: {
                auto p = std::get<Periodic>(rep_);
                if (!p.pre.empty()) {
                    p.pre.erase(p.pre.begin());
                } else {
                    std::rotate(p.period.begin(), p.period.begin() + 1, p.period.end());
                }
                return canonical(std::move(p.pre), std::move(p.period));
            }
            case Kind::Stream: {
                const auto& s = std::get<Stream>(rep_);
                auto rule = s.rule;
                return stream([rule](std::uint64_t j) { return (*rule)(j + 1); },
                              s.depth == 0 ? 0 : s.depth - 1, "T(" + s.name + ")");
            }
        }
        return *this;
    }

    /// omega + n with carry propagation (exact for Finite and periodic values).
    Dyadic add(const Integer& n) const {
        switch (kind()) {
            case Kind::Finite: return Dyadic(Integer(std::get<Finite>(rep_).value + n));
            case Kind::EventuallyPeriodic: return add_periodic(std::get<Periodic>(rep_), n);
            case Kind::Stream: break;
        }
        throw Error("unsupported on opaque stream");
    }
    Dyadic add(long n) const { return add(Integer(n)); }

    /// The same sum through a/b + n = (a + n b)/b.
    Dyadic add_via_rational(const Integer& n) const {
        if (kind() == Kind::Stream) throw Error("unsupported on opaque stream");
        auto [a, b] = to_rational();
        return from_rational(a + n * b, b);
    }

    /// (a, b) with b > 0 odd and gcd(a, b) = 1.
    std::pair<Integer, Integer> to_rational() const {
        switch (kind()) {
            case Kind::Finite: return {std::get<Finite>(rep_).value, Integer(1)};
            case Kind::EventuallyPeriodic: {
                const auto& p = std::get<Periodic>(rep_);
                Integer head(0), cycle(0);
                for (std::size_t i = 0; i < p.pre.size(); ++i) if (p.pre[i]) mpz_setbit(head.get_mpz_t(), i);
                for (std::size_t i = 0; i < p.period.size(); ++i) if (p.period[i]) mpz_setbit(cycle.get_mpz_t(), i);
                Integer den;
                mpz_ui_pow_ui(den.get_mpz_t(), 2, p.period.size());
                den -= 1;
                Integer scale;
                mpz_ui_pow_ui(scale.get_mpz_t(), 2, p.pre.size());
                // head + 2^L * cycle / (1 - 2^p)
                Integer num = head * den - scale * cycle;
                Integer g;
                mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                return {Integer(num / g), Integer(den / g)};
            }
            case Kind::Stream: break;
        }
        throw Error("to_rational requires a finite or eventually periodic value");
    }

    DyadicClass classify() const {
        switch (kind()) {
            case Kind::Finite: return DyadicClass::Integer;
            case Kind::EventuallyPeriodic: return DyadicClass::RationalNonInteger;
            case Kind::Stream: return DyadicClass::Unknown;
        }
        return DyadicClass::Unknown;
    }

    bool is_rational() const { return kind() != Kind::Stream; }

    /// Equality of canonical forms; streams compare by identity of their rule.
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        if (a.kind() != b.kind()) return false;
        switch (a.kind()) {
            case Kind::Finite: return std::get<Finite>(a.rep_).value == std::get<Finite>(b.rep_).value;
            case Kind::EventuallyPeriodic: {
                const auto& x = std::get<Periodic>(a.rep_);
                const auto& y = std::get<Periodic>(b.rep_);
                return x.pre == y.pre && x.period == y.period;
            }
            case Kind::Stream: {
                const auto& x = std::get<Stream>(a.rep_);
                const auto& y = std::get<Stream>(b.rep_);
                return x.rule == y.rule && x.depth == y.depth;
            }
        }
        return false;
    }

    /// Strict weak order on rational values (used as a map key).
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        if (a.kind() != b.kind()) return a.kind() < b.kind();
        if (a.is_finite()) return a.value() < b.value();
        if (a.kind() == Kind::EventuallyPeriodic) {
            const auto& x = std::get<Periodic>(a.rep_);
            const auto& y = std::get<Periodic>(b.rep_);
            return std::tie(x.pre, x.period) < std::tie(y.pre, y.period);
        }
        throw Error("streams are not ordered");
    }

    /// CLI syntax: "int:-5", "rat:1/3", "bits:pre=1,0;period=0,1", "stream:NAME".
    std::string to_string() const {
        switch (kind()) {
            case Kind::Finite: return "int:" + value().get_str();
            case Kind::EventuallyPeriodic: {
                auto [a, b] = to_rational();
                return "rat:" + a.get_str() + "/" + b.get_str();
            }
            case Kind::Stream: return "stream:" + std::get<Stream>(rep_).name;
        }
        return "?";
    }

    static Dyadic parse(std::string_view text);

private:
    struct Finite { Integer value; };
    struct Periodic {
        std::vector<std::uint8_t> pre;
        std::vector<std::uint8_t> period;
    };
    struct Stream {
        std::shared_ptr<const DigitRule> rule;
        std::uint64_t depth;
        std::string name;
    };
    std::variant<Finite, Periodic, Stream> rep_;
    std::uint64_t low_word_ = 0;

    void require_depth(std::uint64_t L) const {
        if (const auto* s = std::get_if<Stream>(&rep_); s && L > s->depth) throw Error("stream exhausted");
    }

    void cache_low_word() {
        low_word_ = 0;
        if (const auto* f = std::get_if<Finite>(&rep_)) {
            Integer r;
            mpz_fdiv_r_2exp(r.get_mpz_t(), f->value.get_mpz_t(), 64);
            low_word_ = static_cast<std::uint64_t>(mpz_getlimbn(r.get_mpz_t(), 0));
            return;
        }
        const std::uint64_t limit = std::min<std::uint64_t>(64, safe_depth());
        for (std::uint64_t j = 0; j < limit; ++j) {
            if (digit(j)) low_word_ |= std::uint64_t{1} << j;
        }
    }

    // Adds n to the first L digits (L past the preperiod and the width of n);
    // the carry out is -1, 0 or 1 and dies inside the next period, because a
    // non-constant period holds both a 0 and a 1.
    static Dyadic add_periodic(const Periodic& p, const Integer& n) {
        const std::size_t per = p.period.size();
        std::size_t L = std::max<std::size_t>(p.pre.size(), bit_length(Integer(abs(n))) + 1);
        auto digit_at = [&](std::size_t j) {
            return j < p.pre.size() ? p.pre[j] : p.period[(j - p.pre.size()) % per];
        };
        Integer low(0);
        for (std::size_t j = 0; j < L + per; ++j) {
            if (digit_at(j)) mpz_setbit(low.get_mpz_t(), j);
        }
        low += n;
        // low now holds L + per digits plus a carry of -1, 0 or +1 at L + per,
        // which the non-constant period absorbs before reaching that position.
        Integer window;
        mpz_fdiv_r_2exp(window.get_mpz_t(), low.get_mpz_t(), L + per);
        Integer carry;
        mpz_fdiv_q_2exp(carry.get_mpz_t(), low.get_mpz_t(), L + per);
        if (carry != 0) throw Error("internal: carry escaped the period");
        std::vector<std::uint8_t> pre(L + per), period(per);
        for (std::size_t j = 0; j < L + per; ++j) pre[j] = static_cast<std::uint8_t>(mpz_tstbit(window.get_mpz_t(), j));
        for (std::size_t j = 0; j < per; ++j) period[j] = digit_at(L + per + j);
        return canonical(std::move(pre), std::move(period));
    }

    static Dyadic canonical(std::vector<std::uint8_t> pre, std::vector<std::uint8_t> period) {
        // Shortest period.
        const std::size_t p = period.size();
        for (std::size_t d = 1; d < p; ++d) {
            if (p % d) continue;
            bool ok = true;
            for (std::size_t i = d; i < p && ok; ++i) ok = period[i] == period[i - d];
            if (ok) {
                period.resize(d);
                break;
            }
        }
        // Shortest preperiod: fold matching tail digits into the cycle.
        while (!pre.empty() && pre.back() == period.back()) {
            pre.pop_back();
            std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
        }
        if (period.size() == 1) {
            Integer n(0);
            for (std::size_t i = 0; i < pre.size(); ++i) if (pre[i]) mpz_setbit(n.get_mpz_t(), i);
            if (period[0] == 1) {
                Integer top;
                mpz_ui_pow_ui(top.get_mpz_t(), 2, pre.size());
                n -= top;
            }
            return Dyadic(n);
        }
        Dyadic w;
        w.rep_ = Periodic{std::move(pre), std::move(period)};
        w.cache_low_word();
        return w;
    }
};

inline Dyadic Dyadic::parse(std::string_view text) {
    auto fail = [&] { return Error("malformed omega '" + std::string(text) + "'"); };
    if (text.starts_with("int:")) {
        Integer n;
        if (n.set_str(std::string(text.substr(4)), 10) != 0) throw fail();
        return Dyadic(n);
    }
    if (text.starts_with("rat:")) {
        const auto body = text.substr(4);
        const auto slash = body.find('/');
        Integer a, b(1);
        if (a.set_str(std::string(body.substr(0, slash)), 10) != 0) throw fail();
        if (slash != std::string_view::npos && b.set_str(std::string(body.substr(slash + 1)), 10) != 0) throw fail();
        return from_rational(a, b);
    }
    if (text.starts_with("bits:")) {
        std::vector<std::uint8_t> pre, period;
        for (auto part : detail::split(text.substr(5), ';')) {
            auto to_bits = [&](std::string_view s) {
                std::vector<std::uint8_t> out;
                for (int v : detail::parse_list<int>(s)) {
                    if (v != 0 && v != 1) throw fail();
                    out.push_back(static_cast<std::uint8_t>(v));
                }
                return out;
            };
            if (part.starts_with("pre=")) pre = to_bits(part.substr(4));
            else if (part.starts_with("period=")) period = to_bits(part.substr(7));
            else throw fail();
        }
        if (period.empty()) throw fail();
        return from_digits(std::move(pre), std::move(period));
    }
    if (text == "stream:thue-morse") return thue_morse();
    if (text == "stream:paperfolding") return paperfolding();
    throw fail();
}

// ---------------------------------------------------------------------------
// Generalized binomial parities
// ---------------------------------------------------------------------------

/// binom(omega, k)_2 = prod_i binom(omega_i, k_i).
inline int binom2_dyadic(const Dyadic& w, std::uint64_t k) {
    const unsigned L = bit_length(k);
    return (w.low_word(L) & k) == k ? 1 : 0;
}

inline int binom2_dyadic(const Dyadic& w, const Integer& k) {
    const unsigned L = bit_length(k);
    if (L <= 64) return binom2_dyadic(w, static_cast<std::uint64_t>(mpz_getlimbn(k.get_mpz_t(), 0)));
    const Integer low = w.low_bits(L);
    return lucas_binom2(low, k);
}

/// binom(omega + offset, m)_2 from the low digits of omega only; carries
/// never move downward, so no stream digit beyond bit_length(m) is read.
inline int shifted_binom2(const Dyadic& w, std::uint64_t offset, std::uint64_t m) {
    const unsigned L = bit_length(m);
    if (L == 0) return 1;
    std::uint64_t x = w.low_word(L) + offset;
    if (L < 64) x &= (std::uint64_t{1} << L) - 1;
    return (x & m) == m ? 1 : 0;
}

inline int shifted_binom2(const Dyadic& w, const Integer& offset, const Integer& m) {
    const unsigned L = bit_length(m);
    if (L == 0) return 1;
    Integer x = w.low_bits(L) + offset;
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), L);
    return lucas_binom2(x, m);
}

inline int halfsum_binom_big(const Dyadic& w, const Integer& k) {
    return shifted_binom2(w, Integer(k + 1), Integer(2 * k + 1));
}

/// binom((omega + k)/2, k)_2, evaluated as binom(omega + k + 1, 2k + 1)_2.
inline int halfsum_binom(const Dyadic& w, std::uint64_t k) {
    if (k >= (std::uint64_t{1} << 62)) return halfsum_binom_big(w, Integer(std::to_string(k)));
    return shifted_binom2(w, k + 1, 2 * k + 1);
}

/// The same value through an explicit 2-adic sum: binom2(add(w, k+1), 2k+1).
inline int halfsum_binom_via_add(const Dyadic& w, std::uint64_t k) {
    return binom2_dyadic(w.add(Integer(std::to_string(k + 1))), Integer(std::to_string(2 * k + 1)));
}

/// Eventual periodicity of j -> omega_j + omega_{j+1} mod 2, the parity of
/// binom(omega + 2^j, 2^{j+1})_2.
inline std::optional<UltimatePeriod> digit_pair_period(const Dyadic& w, std::size_t max_j) {
    std::size_t len = max_j;
    std::size_t max_pre = max_j / 4;
    std::size_t max_period = max_j / 8;
    if (w.is_rational()) {
        const auto dp = w.digits_period();
        max_pre = dp.preperiod.size();
        max_period = dp.period.size();
        len = max_pre + 2 * max_period + 1;
    } else {
        len = static_cast<std::size_t>(std::min<std::uint64_t>(max_j, w.safe_depth() - 1));
        max_pre = len / 4;
        max_period = len / 8;
        if (max_period == 0) return std::nullopt;
    }
    std::vector<std::uint8_t> seq(len);
    for (std::size_t j = 0; j < len; ++j) seq[j] = static_cast<std::uint8_t>(w.digit(j) ^ w.digit(j + 1));
    return detect_ultimate_period(seq, max_period, max_pre);
}

// ---------------------------------------------------------------------------
// Digit decompositions used by the polynomiality and kernel arguments
// ---------------------------------------------------------------------------

/// omega = 2^l - 1 + 2^{l+1} rest, for omega != -1.
struct LeadingOnes {
    unsigned ell;
    Dyadic rest;
};

inline LeadingOnes split_leading_ones(const Dyadic& w, unsigned max_scan = 4096) {
    if (w.is_finite() && w.value() == -1) throw Error("omega = -1 has no zero digit");
    unsigned ell = 0;
    while (w.digit(ell) == 1) {
        if (++ell > max_scan) throw Error("no zero digit within scan bound");
    }
    Dyadic rest = w;
    for (unsigned i = 0; i <= ell; ++i) rest = rest.shift();
    return {ell, rest};
}

/// omega = 2^l - 1 + 2^{l+1} (2^j (2 rest + 1)): the first block "01"
/// after the leading ones.
struct FirstZeroOne {
    unsigned ell;
    unsigned j;
    Dyadic rest;
};

inline std::optional<FirstZeroOne> split_first_zero_one(const Dyadic& w, unsigned max_scan = 4096) {
    const auto lead = split_leading_ones(w, max_scan);
    Dyadic tail = lead.rest;
    unsigned j = 0;
    while (tail.digit(0) == 0) {
        if (tail.is_finite() && tail.value() == 0) return std::nullopt;
        if (++j > max_scan) return std::nullopt;
        tail = tail.shift();
    }
    return FirstZeroOne{lead.ell, j, tail.shift()};
}

}  // namespace lacunary
