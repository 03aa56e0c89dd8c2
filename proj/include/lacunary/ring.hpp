#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "lacunary/error.hpp"

namespace lacunary {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponent = std::int64_t;

/// Exact rationals. mpq_class keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
struct RationalField {
    using value_type = Rational;
    static constexpr std::string_view name = "Q";

    static value_type zero() { return value_type(0); }
    static value_type one() { return value_type(1); }
    static bool is_zero(const value_type& v) { return sgn(v) == 0; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type neg(const value_type& a) { return -a; }
    static value_type div(const value_type& a, const value_type& b) {
        if (is_zero(b)) throw Error("division by zero");
        return a / b;
    }
    static void add_to(value_type& acc, const value_type& v) { acc += v; }
    static std::string to_string(const value_type& v) { return v.get_str(); }
    static value_type from_string(const std::string& s) {
        value_type v;
        if (v.set_str(s, 10) != 0) throw Error("malformed rational '" + s + "'");
        if (sgn(v.get_den()) == 0) throw Error("malformed rational '" + s + "'");
        v.canonicalize();
        return v;
    }
};

/// The field with two elements; addition is XOR.
struct GF2 {
    using value_type = std::uint8_t;
    static constexpr std::string_view name = "GF2";

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static bool is_zero(value_type v) { return v == 0; }
    static value_type add(value_type a, value_type b) { return a ^ b; }
    static value_type sub(value_type a, value_type b) { return a ^ b; }
    static value_type mul(value_type a, value_type b) { return a & b; }
    static value_type neg(value_type a) { return a; }
    static value_type div(value_type a, value_type b) {
        if (b == 0) throw Error("division by zero");
        return a;
    }
    static void add_to(value_type& acc, value_type v) { acc ^= v; }
    static std::string to_string(value_type v) { return v ? "1" : "0"; }
    static value_type from_string(const std::string& s) {
        if (s == "0") return 0;
        if (s == "1") return 1;
        throw Error("malformed GF2 element '" + s + "'");
    }
};

template <typename R>
concept CoefficientRing = requires(typename R::value_type a, typename R::value_type b) {
    { R::zero() } -> std::convertible_to<typename R::value_type>;
    { R::one() } -> std::convertible_to<typename R::value_type>;
    { R::is_zero(a) } -> std::convertible_to<bool>;
    { R::add(a, b) } -> std::convertible_to<typename R::value_type>;
    { R::mul(a, b) } -> std::convertible_to<typename R::value_type>;
    { R::div(a, b) } -> std::convertible_to<typename R::value_type>;
};

inline std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw Error("integer out of 64-bit range");
    return z.get_si();
}

}  // namespace lacunary
