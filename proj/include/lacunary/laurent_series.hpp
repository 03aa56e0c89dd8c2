#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "lacunary/sparse_poly.hpp"

namespace lacunary {

/// Truncated Laurent series in X^{-1}.
///
/// Coefficients are known for every exponent in [low, top]. Below `low` the
/// series is either exactly zero (`exact()`), or unknown. An optional
/// extender supplies exact coefficients below the cutoff on demand; it must
/// agree with every coefficient already stored.
template <CoefficientRing Ring>
class LaurentSeries {
public:
    using value_type = typename Ring::value_type;
    using Extender = std::function<value_type(Exponent)>;
    static constexpr Exponent kUnbounded = std::numeric_limits<Exponent>::min() / 4;

    LaurentSeries() : top_(0), low_(1), exact_(true) {}

    /// Builds a series known on [low, top] from sparse terms; terms outside
    /// the window are rejected.
    static LaurentSeries from_terms(const std::vector<std::pair<Exponent, value_type>>& terms,
                                    Exponent top, Exponent low, bool exact,
                                    Extender extender = {}) {
        if (low > top + 1) throw Error("empty coefficient window");
        LaurentSeries s;
        s.top_ = top;
        s.low_ = low;
        s.exact_ = exact;
        s.coeffs_.assign(static_cast<std::size_t>(top - low + 1), Ring::zero());
        for (const auto& [e, c] : terms) {
            if (e > top || e < low) throw Error("term outside coefficient window");
            Ring::add_to(s.coeffs_[s.index(e)], c);
        }
        s.extender_ = std::move(extender);
        s.trim();
        return s;
    }

    static LaurentSeries from_poly(const SparsePoly<Ring>& p) {
        if (p.is_zero()) return {};
        std::vector<std::pair<Exponent, value_type>> t(p.terms().begin(), p.terms().end());
        return from_terms(t, p.degree(), p.terms().front().first, true);
    }

    static LaurentSeries monomial(Exponent e, value_type c) {
        return from_terms({{e, std::move(c)}}, e, e, true);
    }

    bool exact() const { return exact_; }
    bool has_extender() const { return static_cast<bool>(extender_); }
    Exponent top() const { return top_; }
    /// Lowest exponent whose coefficient is certified.
    Exponent low() const { return exact_ ? kUnbounded : low_; }
    /// The cutoff N, i.e. coefficients are known down to X^{-N}.
    Exponent precision() const { return -low(); }

    value_type coefficient(Exponent e) const {
        if (e > top_) return Ring::zero();
        if (e >= low_) return coeffs_[index(e)];
        if (exact_) return Ring::zero();
        if (extender_) return extender_(e);
        throw Error("precision");
    }

    /// Exponent of the leading nonzero term, if one is visible in the window.
    std::optional<Exponent> valuation() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!Ring::is_zero(coeffs_[i])) return top_ - static_cast<Exponent>(i);
        }
        return std::nullopt;
    }

    /// True only when the series is certainly zero.
    bool is_zero() const { return exact_ && !valuation(); }

    /// Nonzero stored terms, highest exponent first.
    std::vector<std::pair<Exponent, value_type>> nonzero_terms() const {
        std::vector<std::pair<Exponent, value_type>> out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!Ring::is_zero(coeffs_[i])) out.emplace_back(top_ - static_cast<Exponent>(i), coeffs_[i]);
        }
        return out;
    }

    /// Raises the cutoff to `new_low` using the extender.
    LaurentSeries extended(Exponent new_low) const {
        if (exact_ || new_low >= low_) return *this;
        if (!extender_) throw Error("precision");
        LaurentSeries s = *this;
        s.coeffs_.reserve(static_cast<std::size_t>(top_ - new_low + 1));
        for (Exponent e = low_ - 1; e >= new_low; --e) s.coeffs_.push_back(extender_(e));
        s.low_ = new_low;
        return s;
    }

    /// Terms of nonnegative exponent.
    SparsePoly<Ring> polynomial_part() const {
        if (!exact_ && low_ > 0) throw Error("precision");
        std::vector<typename SparsePoly<Ring>::Term> t;
        for (Exponent e = std::max<Exponent>(0, low_); e <= top_; ++e) {
            const auto& c = coeffs_[index(e)];
            if (!Ring::is_zero(c)) t.emplace_back(e, c);
        }
        return SparsePoly<Ring>(std::move(t));
    }

    /// Terms of negative exponent.
    LaurentSeries fractional_part() const {
        LaurentSeries s = *this;
        for (Exponent e = std::max<Exponent>(0, low_); e <= top_; ++e) s.coeffs_[index(e)] = Ring::zero();
        if (s.extender_) {
            auto ext = s.extender_;
            s.extender_ = [ext](Exponent e) { return e >= 0 ? Ring::zero() : ext(e); };
        }
        s.trim();
        return s;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        return combine(a, b, false);
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return combine(a, b, true);
    }

    /// Product; the certified window shrinks to what both truncations support.
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.is_zero() || b.is_zero()) return {};
        const auto va = a.valuation();
        const auto vb = b.valuation();
        if (!va || !vb) throw Error("precision");
        Exponent low;
        if (a.exact_ && b.exact_) {
            low = a.low_ + b.low_;
        } else {
            low = std::numeric_limits<Exponent>::min();
            if (!a.exact_) low = std::max(low, a.low_ + *vb);
            if (!b.exact_) low = std::max(low, b.low_ + *va);
        }
        const Exponent top = *va + *vb;
        LaurentSeries r;
        r.top_ = top;
        r.low_ = std::min(low, top + 1);
        r.exact_ = a.exact_ && b.exact_;
        const LaurentSeries& sparse = a.nonzero_count() <= b.nonzero_count() ? a : b;
        const LaurentSeries& dense = &sparse == &a ? b : a;
        if (sparse.nonzero_count() == 1) {
            // Monomial times series: a shifted, scaled copy.
            const Exponent ea = *sparse.valuation();
            const value_type& ca = sparse.coeffs_[sparse.index(ea)];
            const bool unit = ca == Ring::one();
            r.coeffs_.reserve(static_cast<std::size_t>(r.top_ - r.low_ + 1));
            for (Exponent e = r.top_; e >= r.low_; --e) {
                const Exponent eb = e - ea;
                if (eb > dense.top_ || eb < dense.low_) {
                    r.coeffs_.push_back(Ring::zero());
                } else {
                    const auto& cb = dense.coeffs_[dense.index(eb)];
                    r.coeffs_.push_back(unit ? cb : Ring::mul(ca, cb));
                }
            }
            r.trim();
            return r;
        }
        r.coeffs_.assign(static_cast<std::size_t>(r.top_ - r.low_ + 1), Ring::zero());
        for (std::size_t i = 0; i < sparse.coeffs_.size(); ++i) {
            const auto& ca = sparse.coeffs_[i];
            if (Ring::is_zero(ca)) continue;
            const Exponent ea = sparse.top_ - static_cast<Exponent>(i);
            for (Exponent eb = dense.top_; eb >= dense.low_; --eb) {
                const Exponent e = ea + eb;
                if (e > r.top_) continue;
                if (e < r.low_) break;
                const auto& cb = dense.coeffs_[dense.index(eb)];
                if (!Ring::is_zero(cb)) Ring::add_to(r.coeffs_[r.index(e)], Ring::mul(ca, cb));
            }
        }
        r.trim();
        return r;
    }

    /// Multiplicative inverse. An inexact series keeps as many terms as it
    /// carried after its leading term; an exact non-monomial series needs an
    /// explicit cutoff for the result.
    LaurentSeries inverse(std::optional<Exponent> result_low = std::nullopt) const {
        const auto v = valuation();
        if (!v) throw Error("zero series");
        const value_type lead = coefficient(*v);
        const value_type inv_lead = Ring::div(Ring::one(), lead);
        const bool monomial = exact_ && nonzero_count() == 1;
        if (monomial) return LaurentSeries::monomial(-*v, inv_lead);
        Exponent low;
        if (exact_) {
            if (!result_low) throw Error("precision");
            low = *result_low;
        } else {
            low = low_ - 2 * *v;
            if (result_low) low = std::max(low, *result_low);
        }
        const Exponent top = -*v;
        if (low > top) throw Error("precision");
        LaurentSeries r;
        r.top_ = top;
        r.low_ = low;
        r.exact_ = false;
        const auto width = static_cast<std::size_t>(top - low + 1);
        r.coeffs_.assign(width, Ring::zero());
        // Relative coefficients: a = lead X^v (1 + sum_{i>=1} rel_a[i] X^{-i}).
        std::vector<value_type> rel_a(width, Ring::zero());
        for (std::size_t i = 1; i < width; ++i) rel_a[i] = coefficient(*v - static_cast<Exponent>(i));
        r.coeffs_[0] = inv_lead;
        for (std::size_t m = 1; m < width; ++m) {
            value_type acc = Ring::zero();
            for (std::size_t i = 1; i <= m; ++i) {
                if (!Ring::is_zero(rel_a[i])) Ring::add_to(acc, Ring::mul(rel_a[i], r.coeffs_[m - i]));
            }
            r.coeffs_[m] = Ring::neg(Ring::mul(acc, inv_lead));
        }
        r.trim();
        return r;
    }

    /// Coefficientwise equality on the common certified window.
    bool agrees_with(const LaurentSeries& o) const {
        const Exponent lo = std::max(low(), o.low());
        const Exponent hi = std::max(top_, o.top_);
        if (lo == kUnbounded) {
            return nonzero_terms() == o.nonzero_terms();
        }
        for (Exponent e = hi; e >= lo; --e) {
            if (coefficient(e) != o.coefficient(e)) return false;
        }
        return true;
    }

private:
    Exponent top_;
    Exponent low_;
    bool exact_;
    std::vector<value_type> coeffs_;
    Extender extender_;

    std::size_t index(Exponent e) const { return static_cast<std::size_t>(top_ - e); }

    std::size_t nonzero_count() const {
        return static_cast<std::size_t>(
            std::count_if(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return !Ring::is_zero(c); }));
    }

    // Exact series drop leading and trailing zeros; inexact series only
    // leading ones (trailing zeros are still information).
    void trim() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && Ring::is_zero(coeffs_[lead])) ++lead;
        if (lead == coeffs_.size()) {
            if (exact_) {
                coeffs_.clear();
                top_ = 0;
                low_ = 1;
            }
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            top_ -= static_cast<Exponent>(lead);
        }
        if (exact_) {
            while (!coeffs_.empty() && Ring::is_zero(coeffs_.back())) {
                coeffs_.pop_back();
                ++low_;
            }
        }
    }

    static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
        LaurentSeries r;
        r.exact_ = a.exact_ && b.exact_;
        r.top_ = std::max(a.top_, b.top_);
        if (r.exact_) {
            r.low_ = std::min(a.low_, b.low_);
        } else {
            r.low_ = a.exact_ ? b.low_ : (b.exact_ ? a.low_ : std::max(a.low_, b.low_));
        }
        if (r.low_ > r.top_ + 1) r.low_ = r.top_ + 1;
        r.coeffs_.reserve(static_cast<std::size_t>(r.top_ - r.low_ + 1));
        for (Exponent e = r.top_; e >= r.low_; --e) {
            const bool in_a = e <= a.top_ && e >= a.low_;
            const bool in_b = e <= b.top_ && e >= b.low_;
            if (in_a && in_b) {
                r.coeffs_.push_back(subtract ? Ring::sub(a.coeffs_[a.index(e)], b.coeffs_[b.index(e)])
                                             : Ring::add(a.coeffs_[a.index(e)], b.coeffs_[b.index(e)]));
            } else if (in_a && (e > b.top_ || b.exact_)) {
                r.coeffs_.push_back(a.coeffs_[a.index(e)]);
            } else if (in_b && (e > a.top_ || a.exact_)) {
                r.coeffs_.push_back(subtract ? Ring::neg(b.coeffs_[b.index(e)]) : b.coeffs_[b.index(e)]);
            } else {
                r.coeffs_.push_back(subtract ? Ring::sub(a.coefficient(e), b.coefficient(e))
                                             : Ring::add(a.coefficient(e), b.coefficient(e)));
            }
        }
        if (!r.exact_ && (a.extender_ || a.exact_) && (b.extender_ || b.exact_)) {
            r.extender_ = [a, b, subtract](Exponent e) {
                return subtract ? Ring::sub(a.coefficient(e), b.coefficient(e))
                                : Ring::add(a.coefficient(e), b.coefficient(e));
            };
        }
        r.trim();
        return r;
    }
};

using QSeries = LaurentSeries<RationalField>;

}  // namespace lacunary
