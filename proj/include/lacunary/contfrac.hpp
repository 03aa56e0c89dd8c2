#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lacunary/bits.hpp"
#include "lacunary/laurent_series.hpp"

namespace lacunary {

/// F(X) = sum_n (-1)^{eps_n} X^{-lambda_n}, known down to X^{-N}.
///
/// An explicit list certifies F past its last entry up to 2 * lambda_last,
/// since the next exponent must exceed that; beyond it "lambda range".
inline QSeries build_F(const LambdaSpec& lam, const EpsilonSpec& eps, Exponent N) {
    if (N < lam.at(0)) throw Error("precision below lambda_0");
    std::vector<std::pair<Exponent, Rational>> terms;
    for (std::int64_t n = 0;; ++n) {
        Exponent l;
        try {
            l = lam.at(n);
        } catch (const Error& e) {
            if (std::string_view(e.what()) != "lambda range") throw;
            if (N > 2 * lam.at(n - 1)) throw;
            break;
        }
        if (l > N) break;
        terms.emplace_back(-l, Rational(eps.at(n) ? -1 : 1));
    }
    auto extender = [lam, eps](Exponent e) -> Rational {
        if (e >= 0) return Rational(0);
        for (std::int64_t n = 0;; ++n) {
            const Exponent l = lam.at(n);
            if (l == -e) return Rational(eps.at(n) ? -1 : 1);
            if (l > -e) return Rational(0);
        }
    };
    return QSeries::from_terms(terms, -lam.at(0), -N, false, extender);
}

enum class CfStop { QuotientBound, ExactRemainder, Precision };

struct ContinuedFraction {
    std::vector<QPoly> quotients;   // A_0, A_1, ...
    std::vector<bool> certified;    // per quotient
    Exponent precision = 0;         // N, or kUnbounded-based for exact input
    CfStop stop = CfStop::QuotientBound;

    std::size_t certified_count() const {
        std::size_t c = 0;
        while (c < certified.size() && certified[c]) ++c;
        return c;
    }
    bool integral() const {
        for (std::size_t i = 0; i < quotients.size(); ++i) {
            if (certified[i] && !is_integral(quotients[i])) return false;
        }
        return true;
    }
};

struct Convergents {
    std::vector<QPoly> P;
    std::vector<QPoly> Q;
};

/// P_n, Q_n from P_{-1} = 1, Q_{-1} = 0, P_0 = A_0, Q_0 = 1.
inline Convergents convergents(const std::vector<QPoly>& A) {
    Convergents c;
    QPoly p_prev = QPoly::one(), q_prev;
    QPoly p = A.empty() ? QPoly() : A[0], q = QPoly::one();
    for (std::size_t n = 0; n < A.size(); ++n) {
        if (n > 0) {
            QPoly p_next = A[n] * p + p_prev;
            QPoly q_next = A[n] * q + q_prev;
            p_prev = std::move(p);
            q_prev = std::move(q);
            p = std::move(p_next);
            q = std::move(q_next);
        }
        c.P.push_back(p);
        c.Q.push_back(q);
    }
    return c;
}

inline Convergents convergents(const ContinuedFraction& cf) { return convergents(cf.quotients); }

namespace detail {

/// Coefficients of s on [lo, hi] as an inexact series; "precision" if the
/// window reaches below what s certifies.
inline QSeries window(const QSeries& s, Exponent hi, Exponent lo) {
    if (lo < s.low()) throw Error("precision");
    std::vector<std::pair<Exponent, Rational>> t;
    for (Exponent e = hi; e >= lo; --e) {
        Rational c = s.coefficient(e);
        if (c != 0) t.emplace_back(e, std::move(c));
    }
    return QSeries::from_terms(t, hi, lo, false);
}

/// Polynomial part of -num/den, reading only the coefficients it depends on:
/// num down to X^{v_den} and den down to X^{2 v_den - v_num}.
inline QPoly leading_quotient(const QSeries& num, const QSeries& den, Exponent v_num, Exponent v_den) {
    const Exponent d = v_num - v_den;
    if (d < 0) return {};
    const QSeries n = window(num, v_num, v_den);
    const QSeries inv = window(den, v_den, v_den - d).inverse(-v_num);
    return (QSeries() - n * inv).polynomial_part();
}

/// Continued fraction of a Laurent series in X^{-1}, over exact rationals.
///
/// Works on the residuals theta_n = Q_n f - P_n: theta_{-1} = -1,
/// theta_0 = f - A_0, A_{n+1} = polynomial part of -theta_{n-1}/theta_n and
/// theta_{n+1} = A_{n+1} theta_n + theta_{n-1}. The precision of theta_n
/// shrinks by deg Q_n, so a quotient is produced only while it is fully
/// determined by the known coefficients of f.
inline ContinuedFraction cf_expand_rational(const QSeries& f, std::size_t max_quotients) {
    if (f.is_zero() && f.exact()) {
        ContinuedFraction cf;
        cf.quotients.push_back(QPoly());
        cf.certified.push_back(true);
        cf.stop = CfStop::ExactRemainder;
        return cf;
    }
    ContinuedFraction cf;
    cf.precision = f.exact() ? -QSeries::kUnbounded : f.precision();
    const QPoly a0 = f.polynomial_part();
    Exponent deg_q = 0;      // deg Q_n
    auto certify = [&](Exponent deg) { return f.exact() || 2 * deg + 1 <= cf.precision; };
    cf.quotients.push_back(a0);
    cf.certified.push_back(certify(0));

    QSeries theta_prev = QSeries::monomial(0, Rational(-1));
    QSeries theta = f - QSeries::from_poly(a0);
    while (cf.quotients.size() < max_quotients) {
        if (theta.is_zero()) {
            cf.stop = CfStop::ExactRemainder;
            break;
        }
        const auto v = theta.valuation();
        const auto v_prev = theta_prev.valuation();
        if (!v || !v_prev) {
            // Nothing visible in the window: either f is rational to this
            // precision or the precision ran out.
            if (cf.quotients.size() == 1) throw Error("precision");
            cf.stop = f.exact() ? CfStop::ExactRemainder : CfStop::Precision;
            break;
        }
        QPoly a;
        try {
            a = leading_quotient(theta_prev, theta, *v_prev, *v);
        } catch (const Error& e) {
            if (std::string_view(e.what()) != "precision") throw;
            if (cf.quotients.size() == 1) throw;
            cf.stop = CfStop::Precision;
            break;
        }
        if (a.degree() < 1) {
            // Only possible when the leading coefficients were not yet certain.
            if (cf.quotients.size() == 1) throw Error("precision");
            cf.stop = CfStop::Precision;
            break;
        }
        deg_q += a.degree();
        cf.quotients.push_back(a);
        cf.certified.push_back(certify(deg_q));
        QSeries next = QSeries::from_poly(a) * theta + theta_prev;
        theta_prev = std::move(theta);
        theta = std::move(next);
    }
    return cf;
}


/// Same recurrence with the residuals held as int64 coefficients on
/// [-N, 0]. Returns nothing if f is not integral, a quotient is not
/// integral, or a coefficient overflows.
inline std::optional<ContinuedFraction> cf_expand_int64(const QSeries& f, std::size_t max_quotients) {
    if (f.exact() || f.precision() < 1) return std::nullopt;
    const Exponent N = f.precision();
    const auto width = static_cast<std::size_t>(N + 1);
    struct Residual {
        std::vector<std::int64_t> c;  // c[i] is the coefficient of X^{-i}
        Exponent low;                 // certified down to X^low
    };
    auto to_int = [](const Rational& q, std::int64_t& out) {
        if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return false;
        out = q.get_num().get_si();
        return true;
    };

    ContinuedFraction cf;
    cf.precision = N;
    const QPoly a0 = f.polynomial_part();
    cf.quotients.push_back(a0);
    cf.certified.push_back(2 * 0 + 1 <= N);

    Residual prev{std::vector<std::int64_t>(width, 0), -N};
    prev.c[0] = -1;
    Residual cur{std::vector<std::int64_t>(width, 0), -N};
    for (Exponent e = -1; e >= -N; --e) {
        if (!to_int(f.coefficient(e), cur.c[static_cast<std::size_t>(-e)])) return std::nullopt;
    }

    auto valuation = [](const Residual& r) -> std::optional<Exponent> {
        for (Exponent e = 0; e >= r.low; --e) {
            if (r.c[static_cast<std::size_t>(-e)]) return e;
        }
        return std::nullopt;
    };
    auto window = [](const Residual& r, Exponent hi, Exponent lo) {
        if (lo < r.low) throw Error("precision");
        std::vector<std::pair<Exponent, Rational>> t;
        for (Exponent e = hi; e >= lo; --e) {
            if (const auto x = r.c[static_cast<std::size_t>(-e)]) t.emplace_back(e, Rational(x));
        }
        return QSeries::from_terms(t, hi, lo, false);
    };

    Exponent deg_q = 0;
    while (cf.quotients.size() < max_quotients) {
        const auto v = valuation(cur);
        const auto v_prev = valuation(prev);
        if (!v || !v_prev) {
            if (cf.quotients.size() == 1) throw Error("precision");
            cf.stop = CfStop::Precision;
            break;
        }
        QPoly a;
        try {
            const Exponent d = *v_prev - *v;
            if (d >= 0) {
                const QSeries inv = window(cur, *v, *v - d).inverse(-*v_prev);
                a = (QSeries() - window(prev, *v_prev, *v) * inv).polynomial_part();
            }
        } catch (const Error& e) {
            if (std::string_view(e.what()) != "precision") throw;
            if (cf.quotients.size() == 1) throw;
            cf.stop = CfStop::Precision;
            break;
        }
        if (a.degree() < 1) {
            if (cf.quotients.size() == 1) throw Error("precision");
            cf.stop = CfStop::Precision;
            break;
        }
        std::vector<std::pair<Exponent, std::int64_t>> at;
        for (const auto& [e, q] : a.terms()) {
            std::int64_t x;
            if (!to_int(q, x)) return std::nullopt;
            at.emplace_back(e, x);
        }
        deg_q += a.degree();
        cf.quotients.push_back(a);
        cf.certified.push_back(2 * deg_q + 1 <= N);

        // prev <- a * cur + prev, then swap roles
        const Exponent low = std::max(cur.low + a.degree(), prev.low);
        for (Exponent e = 0; e >= low; --e) {
            auto& out = prev.c[static_cast<std::size_t>(-e)];
            for (const auto& [ea, ca] : at) {
                const Exponent src = e - ea;
                std::int64_t prod;
                if (__builtin_mul_overflow(ca, cur.c[static_cast<std::size_t>(-src)], &prod) ||
                    __builtin_add_overflow(out, prod, &out)) {
                    return std::nullopt;
                }
            }
        }
        for (Exponent e = low - 1; e >= -N; --e) prev.c[static_cast<std::size_t>(-e)] = 0;
        prev.low = low;
        std::swap(prev, cur);
    }
    return cf;
}

}  // namespace detail

/// Continued fraction of a Laurent series in X^{-1}. Integral input runs on
/// machine words; anything else, or an overflow, on exact rationals.
inline ContinuedFraction cf_expand(const QSeries& f, std::size_t max_quotients) {
    if (auto cf = detail::cf_expand_int64(f, max_quotients)) return std::move(*cf);
    return detail::cf_expand_rational(f, max_quotients);
}

/// Convergents of Phi = [0, X, X, ...]: kappa_n = X kappa_{n-1} + kappa_{n-2}.
inline Convergents phi_oracle(std::size_t n) {
    if (n < 1) throw Error("phi_oracle needs n >= 1");
    std::vector<QPoly> A{QPoly()};
    for (std::size_t i = 1; i <= n; ++i) A.push_back(QPoly::x());
    return convergents(A);
}

}  // namespace lacunary
