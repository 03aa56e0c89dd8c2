#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lacunary/bits.hpp"
#include "lacunary/dyadic.hpp"
#include "lacunary/sparse_poly.hpp"

namespace lacunary {

enum class Tag { f, g, h };

inline char tag_char(Tag t) { return t == Tag::f ? 'f' : (t == Tag::g ? 'g' : 'h'); }
inline Tag parse_tag(std::string_view s) {
    if (s == "f") return Tag::f;
    if (s == "g") return Tag::g;
    if (s == "h") return Tag::h;
    throw Error("malformed tag '" + std::string(s) + "'");
}

/// f = binom(w+k+1, 2k+1)_2, g = binom(w+k, 2k)_2, h = binom(w+k, 2k+1)_2.
inline int fgh(const Dyadic& w, std::uint64_t k, Tag which) {
    if (k >= (std::uint64_t{1} << 62)) {
        const Integer K(std::to_string(k));
        switch (which) {
            case Tag::f: return shifted_binom2(w, Integer(K + 1), Integer(2 * K + 1));
            case Tag::g: return shifted_binom2(w, K, Integer(2 * K));
            case Tag::h: return shifted_binom2(w, K, Integer(2 * K + 1));
        }
    }
    switch (which) {
        case Tag::f: return shifted_binom2(w, k + 1, 2 * k + 1);
        case Tag::g: return shifted_binom2(w, k, 2 * k);
        case Tag::h: return shifted_binom2(w, k, 2 * k + 1);
    }
    return 0;
}

/// Q_omega(X) = sum_k sigma(k, eps) binom((omega + k)/2, k)_2 X^{mu(k, Lambda)}.
struct QSeriesHandle {
    Dyadic omega;
    LambdaSpec lambda = LambdaSpec::mersenne();
    EpsilonSpec eps;

    /// Coefficient of X^{mu(k)}: sigma(k) f_omega(k) in {-1, 0, 1}.
    int coefficient_at(std::uint64_t k) const {
        if (!halfsum_binom(omega, k)) return 0;
        return sigma(k, eps);
    }

    /// Largest k for which the term can be nonzero when omega is an integer.
    std::optional<std::uint64_t> integer_cutoff() const {
        if (!omega.is_finite()) return std::nullopt;
        const Integer& n = omega.value();
        if (n >= 0) return static_cast<std::uint64_t>(to_int64(n));
        if (n == -1) return std::nullopt;  // no terms at all
        return static_cast<std::uint64_t>(to_int64(Integer(-n - 2)));
    }

    bool is_zero_integer() const { return omega.is_finite() && omega.value() == -1; }
};

struct QTerm {
    std::uint64_t k;
    Exponent exponent;
    int coefficient;
    friend bool operator==(const QTerm&, const QTerm&) = default;
};

/// Nonzero terms for k <= K, in increasing k (and increasing exponent).
inline std::vector<QTerm> q_omega_window(const QSeriesHandle& h, std::uint64_t K) {
    std::vector<QTerm> out;
    if (h.is_zero_integer()) return out;
    if (!h.omega.is_finite() && bit_length(K) + 1 > h.omega.safe_depth()) throw Error("stream exhausted");
    std::uint64_t hi = K;
    if (auto cut = h.integer_cutoff()) hi = std::min(hi, *cut);
    // Only k of the parity of omega can contribute.
    for (std::uint64_t k = static_cast<std::uint64_t>(h.omega.parity()); k <= hi; k += 2) {
        const int c = h.coefficient_at(k);
        if (c) out.push_back({k, mu(k, h.lambda), c});
        if (k + 2 < k) break;
    }
    return out;
}

/// Coefficient stream k -> sigma(k) f_omega(k) for k < count (Mersenne indexing).
inline std::vector<int> q_omega_coefficients(const QSeriesHandle& h, std::uint64_t count) {
    std::vector<int> out(count, 0);
    if (count == 0) return out;
    for (const auto& t : q_omega_window(h, count - 1)) out[t.k] = t.coefficient;
    return out;
}

inline QPoly window_poly(const std::vector<QTerm>& terms) {
    std::vector<QPoly::Term> t;
    t.reserve(terms.size());
    for (const auto& x : terms) t.emplace_back(x.exponent, Rational(x.coefficient));
    return QPoly(std::move(t));
}

/// Q_n for n in Z through the 2-adic path; Q_{-1} = 0.
inline QPoly q_poly(std::int64_t n, const LambdaSpec& lam, const EpsilonSpec& eps) {
    QSeriesHandle h{Dyadic(Integer(static_cast<long>(n))), lam, eps};
    if (h.is_zero_integer()) return {};
    return window_poly(q_omega_window(h, *h.integer_cutoff()));
}

inline QPoly q_poly(std::int64_t n) { return q_poly(n, LambdaSpec::mersenne(), EpsilonSpec::zero()); }

// ---------------------------------------------------------------------------
// Polynomiality
// ---------------------------------------------------------------------------

enum class Polynomiality { Yes, No, Unknown };

struct PolynomialityReport {
    Polynomiality verdict;
    std::optional<Exponent> degree;              // Yes: mu of the last surviving k
    std::optional<std::uint64_t> last_nonzero_k;  // Yes, or the empirical scan
};

inline PolynomialityReport is_polynomial(const QSeriesHandle& h, std::uint64_t scan_bound = 0) {
    switch (h.omega.classify()) {
        case DyadicClass::Integer: {
            if (h.is_zero_integer()) return {Polynomiality::Yes, kDegreeOfZero, std::nullopt};
            for (std::uint64_t k = *h.integer_cutoff() + 1; k-- > 0;) {
                if (halfsum_binom(h.omega, k)) return {Polynomiality::Yes, mu(k, h.lambda), k};
            }
            return {Polynomiality::Yes, kDegreeOfZero, std::nullopt};
        }
        case DyadicClass::RationalNonInteger: return {Polynomiality::No, std::nullopt, std::nullopt};
        case DyadicClass::Unknown: break;
    }
    PolynomialityReport r{Polynomiality::Unknown, std::nullopt, std::nullopt};
    if (scan_bound > 0) {
        const std::uint64_t depth_ok = h.omega.safe_depth() >= 64 ? UINT64_MAX
                                                                  : (std::uint64_t{1} << (h.omega.safe_depth() - 1)) - 1;
        const auto terms = q_omega_window(h, std::min(scan_bound, depth_ok));
        if (!terms.empty()) r.last_nonzero_k = terms.back().k;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Mod-2 identities
// ---------------------------------------------------------------------------

/// Terms of Q_omega mod 2 with exponent <= K.
inline GF2Poly q_mod2_truncated(const Dyadic& w, const LambdaSpec& lam, Exponent K) {
    std::vector<GF2Poly::Term> t;
    QSeriesHandle h{w, lam, EpsilonSpec::zero()};
    if (h.is_zero_integer()) return {};
    std::uint64_t hi = UINT64_MAX;
    if (auto cut = h.integer_cutoff()) hi = *cut;
    for (std::uint64_t k = static_cast<std::uint64_t>(w.parity()); k <= hi; k += 2) {
        const Exponent e = mu(k, lam);
        if (e > K) break;
        if (halfsum_binom(w, k)) t.emplace_back(e, 1);
    }
    return GF2Poly(std::move(t));
}

/// Q_w^2 - Q_{w+1} Q_{w-1} == 1 mod (2, X^{K+1}).
inline bool pell_check_mod2(const Dyadic& w, Exponent K, const LambdaSpec& lam = LambdaSpec::mersenne()) {
    const GF2Poly a = q_mod2_truncated(w, lam, K);
    const GF2Poly b = q_mod2_truncated(w.add(1), lam, K);
    const GF2Poly c = q_mod2_truncated(w.add(-1), lam, K);
    const GF2Poly lhs = GF2Poly::multiply(a, a, K + 1) + GF2Poly::multiply(b, c, K + 1);
    return lhs == GF2Poly::one();
}

// ---------------------------------------------------------------------------
// Comparison polynomials
// ---------------------------------------------------------------------------

/// U_0(X/2), ..., U_{n_max}(X/2) from U_{n+1} = X U_n - U_{n-1}.
inline std::vector<QPoly> chebyshev_U_scaled_table(std::size_t n_max) {
    std::vector<QPoly> u;
    u.reserve(n_max + 1);
    u.push_back(QPoly::one());
    if (n_max >= 1) u.push_back(QPoly::x());
    for (std::size_t n = 2; n <= n_max; ++n) u.push_back(QPoly::x() * u[n - 1] - u[n - 2]);
    return u;
}

inline QPoly chebyshev_U_scaled(std::size_t n) { return chebyshev_U_scaled_table(n).back(); }
inline GF2Poly chebyshev_U_scaled_mod2(std::size_t n) { return reduce_mod2(chebyshev_U_scaled(n)); }

inline Integer binomial(std::uint64_t n, std::uint64_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// U_n(X/2) = sum_k (-1)^k binom(n-k, k) X^{n-2k}.
inline QPoly chebyshev_U_scaled_explicit(std::uint64_t n) {
    std::vector<QPoly::Term> t;
    for (std::uint64_t k = 0; 2 * k <= n; ++k) {
        Integer c = binomial(n - k, k);
        if (k & 1) c = -c;
        t.emplace_back(static_cast<Exponent>(n - 2 * k), Rational(c));
    }
    return QPoly(std::move(t));
}

/// Fibonacci polynomial F_n (F_0 = 0, F_1 = 1) from F_{n+1} = sum_{2j <= n} binom(n-j, j) X^{n-2j}.
inline QPoly fibonacci_poly(std::uint64_t n) {
    if (n == 0) return {};
    const std::uint64_t m = n - 1;
    std::vector<QPoly::Term> t;
    for (std::uint64_t j = 0; 2 * j <= m; ++j) t.emplace_back(static_cast<Exponent>(m - 2 * j), Rational(binomial(m - j, j)));
    return QPoly(std::move(t));
}

enum class MorganVoyceKind { b, B };

/// b_n = sum_k binom(n+k, n-k) X^k, B_n = sum_k binom(n+k+1, n-k) X^k.
inline QPoly morgan_voyce(std::uint64_t n, MorganVoyceKind kind) {
    std::vector<QPoly::Term> t;
    for (std::uint64_t k = 0; k <= n; ++k) {
        const std::uint64_t top = kind == MorganVoyceKind::b ? n + k : n + k + 1;
        t.emplace_back(static_cast<Exponent>(k), Rational(binomial(top, n - k)));
    }
    return QPoly(std::move(t));
}

// ---------------------------------------------------------------------------
// The numbers A(eps, omega, g)
// ---------------------------------------------------------------------------

/// floor(|q| * 10^digits) rendered with a decimal point and sign.
inline std::string to_decimal(const Rational& q, unsigned digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Integer num = abs(q.get_num()) * scale;
    Integer whole;
    mpz_fdiv_q(whole.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    std::string s = whole.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    return (sgn(q) < 0 ? "-" : "") + s;
}

struct ANumber {
    Rational partial_sum;
    Rational error_bound;  // 2 g^{-K}
    std::string decimal(unsigned digits) const { return to_decimal(partial_sum, digits); }
};

/// sum_{k <= K} sigma(k, eps) binom((w+k)/2, k)_2 g^{-k}.
inline ANumber a_number(const EpsilonSpec& eps, const Dyadic& w, unsigned long g, std::uint64_t K) {
    if (g < 2) throw Error("base g must be at least 2");
    Integer gk;
    mpz_ui_pow_ui(gk.get_mpz_t(), g, K);
    // Horner-free: accumulate sum c_k g^{K-k} / g^K.
    Integer acc = 0, weight = gk;
    for (std::uint64_t k = 0; k <= K; ++k) {
        if (halfsum_binom(w, k)) {
            if (sigma(k, eps) > 0) acc += weight;
            else acc -= weight;
        }
        if (k < K) mpz_divexact_ui(weight.get_mpz_t(), weight.get_mpz_t(), g);
    }
    ANumber a;
    a.partial_sum = Rational(acc, gk);
    a.partial_sum.canonicalize();
    a.error_bound = Rational(Integer(2), gk);
    a.error_bound.canonicalize();
    return a;
}

}  // namespace lacunary
