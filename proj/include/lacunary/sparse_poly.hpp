#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "lacunary/ring.hpp"

namespace lacunary {

/// Degree reported for the zero polynomial. Distinct from every exponent a
/// Laurent series can carry.
inline constexpr Exponent kDegreeOfZero = std::numeric_limits<Exponent>::min();

/// Polynomial stored as (exponent, coefficient) pairs with strictly
/// increasing exponents and no zero coefficients.
template <CoefficientRing Ring>
class SparsePoly {
public:
    using value_type = typename Ring::value_type;
    using Term = std::pair<Exponent, value_type>;

    SparsePoly() = default;

    /// Accepts terms in any order; merges duplicates and drops zeros.
    explicit SparsePoly(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

    static SparsePoly monomial(Exponent e, value_type c) {
        if (e < 0) throw Error("negative exponent in polynomial");
        return SparsePoly(std::vector<Term>{{e, std::move(c)}});
    }
    static SparsePoly constant(value_type c) { return monomial(0, std::move(c)); }
    static SparsePoly one() { return constant(Ring::one()); }
    static SparsePoly x() { return monomial(1, Ring::one()); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    Exponent degree() const { return terms_.empty() ? kDegreeOfZero : terms_.back().first; }
    std::span<const Term> terms() const { return terms_; }

    value_type coefficient(Exponent e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, Exponent x) { return t.first < x; });
        if (it == terms_.end() || it->first != e) return Ring::zero();
        return it->second;
    }

    value_type leading_coefficient() const {
        return terms_.empty() ? Ring::zero() : terms_.back().second;
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        return merge(a, b, false);
    }
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        return merge(a, b, true);
    }
    SparsePoly operator-() const {
        SparsePoly r = *this;
        for (auto& t : r.terms_) t.second = Ring::neg(t.second);
        return r;
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        return multiply(a, b, std::numeric_limits<Exponent>::max());
    }

    /// Product with every exponent >= bound discarded.
    static SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, Exponent bound) {
        if (a.is_zero() || b.is_zero()) return {};
        const Exponent hi = std::min(a.degree() + b.degree(), bound - 1);
        const Exponent lo = a.terms_.front().first + b.terms_.front().first;
        if (hi < lo) return {};
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const auto pairs = static_cast<std::uint64_t>(a.terms_.size()) * b.terms_.size();
        SparsePoly out;
        if (a.terms_.size() == 1 || b.terms_.size() == 1) {
            const auto& [em, cm] = a.terms_.size() == 1 ? a.terms_.front() : b.terms_.front();
            const auto& other = a.terms_.size() == 1 ? b.terms_ : a.terms_;
            out.terms_.reserve(other.size());
            for (const auto& [e, c] : other) {
                if (e + em > hi) break;
                value_type v = Ring::mul(cm, c);
                if (!Ring::is_zero(v)) out.terms_.emplace_back(e + em, std::move(v));
            }
            return out;
        }
        if (span <= 4 * pairs) {
            std::vector<value_type> acc(span, Ring::zero());
            for (const auto& [ea, ca] : a.terms_) {
                if (ea + b.terms_.front().first > hi) break;
                for (const auto& [eb, cb] : b.terms_) {
                    const Exponent e = ea + eb;
                    if (e > hi) break;
                    Ring::add_to(acc[static_cast<std::size_t>(e - lo)], Ring::mul(ca, cb));
                }
            }
            for (std::size_t i = 0; i < acc.size(); ++i) {
                if (!Ring::is_zero(acc[i])) out.terms_.emplace_back(lo + static_cast<Exponent>(i), std::move(acc[i]));
            }
            return out;
        }
        std::map<Exponent, value_type> acc;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                const Exponent e = ea + eb;
                if (e > hi) break;
                auto [it, inserted] = acc.try_emplace(e, Ring::zero());
                Ring::add_to(it->second, Ring::mul(ca, cb));
            }
        }
        for (auto& [e, c] : acc) {
            if (!Ring::is_zero(c)) out.terms_.emplace_back(e, std::move(c));
        }
        return out;
    }

    /// Drops every term of exponent >= bound.
    SparsePoly truncated(Exponent bound) const {
        SparsePoly r;
        for (const auto& t : terms_) {
            if (t.first >= bound) break;
            r.terms_.push_back(t);
        }
        return r;
    }

    SparsePoly scaled(const value_type& c) const {
        std::vector<Term> t;
        t.reserve(terms_.size());
        for (const auto& [e, v] : terms_) t.emplace_back(e, Ring::mul(v, c));
        return SparsePoly(std::move(t));
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

    friend std::ostream& operator<<(std::ostream& os, const SparsePoly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (const auto& [e, c] : p.terms_) {
            if (!first) os << " + ";
            first = false;
            os << Ring::to_string(c);
            if (e != 0) os << "*X^" << e;
        }
        return os;
    }

private:
    std::vector<Term> terms_;

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (t.first < 0) throw Error("negative exponent in polynomial");
            if (!merged.empty() && merged.back().first == t.first) {
                Ring::add_to(merged.back().second, t.second);
            } else {
                merged.push_back(std::move(t));
            }
        }
        std::erase_if(merged, [](const Term& t) { return Ring::is_zero(t.second); });
        terms_ = std::move(merged);
    }

    static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool subtract) {
        SparsePoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                const auto& [e, c] = b.terms_[j++];
                r.terms_.emplace_back(e, subtract ? Ring::neg(c) : c);
            } else {
                auto c = subtract ? Ring::sub(a.terms_[i].second, b.terms_[j].second)
                                  : Ring::add(a.terms_[i].second, b.terms_[j].second);
                if (!Ring::is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }
};

using QPoly = SparsePoly<RationalField>;
using GF2Poly = SparsePoly<GF2>;

/// Coefficientwise reduction of an integer-valued polynomial modulo 2.
inline GF2Poly reduce_mod2(const QPoly& p) {
    std::vector<GF2Poly::Term> out;
    for (const auto& [e, c] : p.terms()) {
        if (c.get_den() != 1) throw Error("not reducible");
        if (mpz_odd_p(c.get_num_mpz_t())) out.emplace_back(e, 1);
    }
    return GF2Poly(std::move(out));
}

/// True when every coefficient has denominator 1.
inline bool is_integral(const QPoly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto& t) { return t.second.get_den() == 1; });
}

}  // namespace lacunary
