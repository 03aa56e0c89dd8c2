#include <gtest/gtest.h>

#include <cctype>
#include <random>
#include <set>

#include "lacunary/automaton.hpp"
#include "lacunary/qseries.hpp"

using namespace lacunary;

namespace {

std::vector<Dyadic> test_set() {
    return {Dyadic::from_rational(1, 3), Dyadic::from_rational(-1, 3), Dyadic::from_rational(1, 5),
            Dyadic::from_rational(3, 7), Dyadic::from_rational(-5, 9), Dyadic::from_rational(11, 15),
            Dyadic(7L),  Dyadic(-6L), Dyadic(0L), Dyadic(-1L)};
}

// sum_i c_i S^{2^i} mod X^N with plain byte vectors
bool relation_holds(const std::vector<std::uint8_t>& s, const AlgebraicRelation& r) {
    const std::size_t N = r.truncation;
    std::vector<std::uint8_t> total(N, 0), power(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(N));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        if (i > 0) {
            std::vector<std::uint8_t> sq(N, 0);
            for (std::size_t k = 0; 2 * k < N; ++k) sq[2 * k] = power[k];
            power = std::move(sq);
        }
        for (const auto& [e, one] : r.c[i].terms()) {
            for (std::size_t k = 0; k + static_cast<std::size_t>(e) < N; ++k) total[k + static_cast<std::size_t>(e)] ^= power[k];
        }
    }
    return std::all_of(total.begin(), total.end(), [](std::uint8_t b) { return b == 0; });
}

// Recursive-descent checker for the DOT subset:
//   graph := "digraph" id "{" stmt* "}"
//   stmt  := id ("->" id)? attrs? ";" | id "=" id ";"
//   attrs := "[" (id "=" id ("," | ";")?)* "]"
class DotChecker {
public:
    explicit DotChecker(std::string s) : s_(std::move(s)) {}

    bool ok() {
        try {
            keyword("digraph");
            id();
            expect('{');
            while (peek() != '}') stmt();
            expect('}');
            ws();
            return pos_ == s_.size();
        } catch (const std::runtime_error&) {
            return false;
        }
    }
    std::size_t nodes = 0, edges = 0;
    std::vector<std::pair<std::string, std::string>> edge_list;

private:
    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        ws();
        if (pos_ >= s_.size()) throw std::runtime_error("eof");
        return s_[pos_];
    }
    void expect(char c) {
        if (peek() != c) throw std::runtime_error(std::string("expected ") + c);
        ++pos_;
    }
    void keyword(const std::string& k) {
        ws();
        if (s_.compare(pos_, k.size(), k) != 0) throw std::runtime_error("keyword");
        pos_ += k.size();
    }
    std::string id() {
        const char c = peek();
        std::string out;
        if (c == '"') {
            ++pos_;
            while (true) {
                if (pos_ >= s_.size()) throw std::runtime_error("unterminated");
                const char d = s_[pos_++];
                if (d == '"') break;
                if (d == '\\') {
                    if (pos_ >= s_.size()) throw std::runtime_error("escape");
                    out += s_[pos_++];
                } else {
                    out += d;
                }
            }
            return out;
        }
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '.')) {
            out += s_[pos_++];
        }
        if (out.empty()) throw std::runtime_error("id");
        return out;
    }
    void attrs() {
        expect('[');
        while (peek() != ']') {
            id();
            expect('=');
            id();
            if (peek() == ',' || peek() == ';') ++pos_;
        }
        expect(']');
    }
    void stmt() {
        const std::string a = id();
        if (peek() == '=') {
            ++pos_;
            id();
        } else if (peek() == '-') {
            ++pos_;
            expect('>');
            const std::string b = id();
            ++edges;
            edge_list.emplace_back(a, b);
            if (peek() == '[') attrs();
        } else {
            ++nodes;
            if (peek() == '[') attrs();
        }
        expect(';');
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

TEST(Orbit, Examples) {
    const Orbit m = orbit(Dyadic(-1L));
    EXPECT_EQ(m.cycle_length(), 1u);
    EXPECT_EQ(m.preperiod_length(), 0u);

    const Orbit t = orbit(Dyadic::from_rational(1, 3));
    EXPECT_EQ(t.preperiod_length(), 1u);
    EXPECT_EQ(t.cycle_length(), 2u);

    const Orbit s = orbit(Dyadic(6L));
    ASSERT_EQ(s.size(), 4u);
    const long want[] = {6, 3, 1, 0};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s.elements[i], Dyadic(want[i]));
    EXPECT_EQ(s.cycle_start, 3u);

    EXPECT_THROW(orbit(Dyadic::thue_morse()), Error);
}

TEST(Orbit, ShiftMatchesArithmetic) {
    // T w = (w - w_0) / 2 checked on the rational value a/b
    for (long a = -40; a <= 40; ++a) {
        for (long b : {1L, 3L, 5L, 7L, 9L}) {
            const Dyadic w = Dyadic::from_rational(a, b);
            const long a2 = (a - (w.parity() ? b : 0)) / 2;
            EXPECT_EQ(w.shift(), Dyadic::from_rational(a2, b));
        }
    }
}

TEST(Dfao, MatchesFghOnTestSet) {
    for (const auto& w : test_set()) {
        for (Tag t : {Tag::f, Tag::g, Tag::h}) {
            const Dfao d = build_dfao(w, t);
            EXPECT_LE(d.size(), 3 * orbit(w).size() + 1);
            for (std::uint64_t k = 0; k < (1u << 16); ++k) {
                ASSERT_EQ(d.evaluate(k), fgh(w, k, t)) << w.to_string() << " " << tag_char(t) << " " << k;
            }
        }
    }
}

TEST(Dfao, BaseCase) {
    for (const auto& w : test_set()) {
        const int p = w.digit(0);
        EXPECT_EQ(build_dfao(w, Tag::f).evaluate(std::uint64_t{0}), 1 - p);
        EXPECT_EQ(build_dfao(w, Tag::g).evaluate(std::uint64_t{0}), 1);
        EXPECT_EQ(build_dfao(w, Tag::h).evaluate(std::uint64_t{0}), p);
    }
}

TEST(Dfao, TrailingZerosDoNotMatter) {
    std::mt19937_64 rng(51);
    for (const auto& w : test_set()) {
        const Dfao d = build_dfao(w, Tag::f);
        for (int i = 0; i < 200; ++i) {
            const std::uint64_t k = rng() & 0xffffu;
            std::vector<int> digits;
            for (std::uint64_t x = k; x; x >>= 1) digits.push_back(static_cast<int>(x & 1u));
            const int base = d.evaluate(k);
            for (int pad = 0; pad < 5; ++pad) {
                ASSERT_EQ(d.evaluate_digits(digits), base);
                digits.push_back(0);
            }
        }
        // the output of every state equals its value at 0
        for (std::size_t s = 0; s < d.size(); ++s) {
            EXPECT_EQ(d.output[s], d.output[d.delta[s][0]]);
        }
    }
}

TEST(Dfao, KernelClosure) {
    const std::size_t L = 1u << 10;
    for (const auto& w : {Dyadic::from_rational(1, 3), Dyadic::from_rational(3, 7), Dyadic(-6L)}) {
        const Dfao d = build_dfao(w, Tag::f);
        std::set<std::vector<int>> realized;
        std::vector<std::vector<int>> seq(d.size());
        for (std::size_t s = 0; s < d.size(); ++s) {
            for (std::uint64_t k = 0; k < L; ++k) seq[s].push_back(d.evaluate_from(static_cast<Dfao::State>(s), k));
            realized.insert(std::vector<int>(seq[s].begin(), seq[s].begin() + L / 2));
        }
        for (std::size_t s = 0; s < d.size(); ++s) {
            for (std::uint64_t b = 0; b < 2; ++b) {
                std::vector<int> sub;
                for (std::uint64_t k = 0; k < L / 2; ++k) sub.push_back(seq[s][2 * k + b]);
                EXPECT_TRUE(realized.count(sub)) << w.to_string() << " state " << s << " b " << b;
            }
        }
    }
}

TEST(SignedDfao, SmallInteger) {
    const Dfao d = signed_dfao(Dyadic(2L), EpsilonSpec::zero());
    for (std::uint64_t k = 0; k <= 8; ++k) {
        EXPECT_EQ(d.evaluate(k), k == 0 ? 1 : (k == 2 ? -1 : 0)) << k;
    }
}

TEST(SignedDfao, MatchesWindow) {
    for (const auto& eps : {EpsilonSpec::zero(), EpsilonSpec({}, {1, 0}), EpsilonSpec({1}, {0}), EpsilonSpec({0, 1}, {1, 1, 0})}) {
        for (const auto& w : {Dyadic::from_rational(1, 3), Dyadic::from_rational(-5, 9), Dyadic(13L)}) {
            const Dfao d = signed_dfao(w, eps);
            const auto coeffs = q_omega_coefficients({w, LambdaSpec::mersenne(), eps}, 1u << 14);
            for (std::uint64_t k = 0; k < coeffs.size(); ++k) {
                ASSERT_EQ(d.evaluate(k), coeffs[k]) << eps.to_string() << " " << w.to_string() << " " << k;
            }
        }
    }
}

TEST(SignedDfao, SupportAgreesWithF) {
    std::mt19937_64 rng(52);
    const Dyadic w = Dyadic::from_rational(7, 11);
    const Dfao s = signed_dfao(w, EpsilonSpec({1}, {0, 1}));
    const Dfao f = build_dfao(w, Tag::f);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t k = rng() >> 20;
        ASSERT_EQ(s.evaluate(k) != 0, f.evaluate(k) != 0) << k;
    }
}

TEST(Minimize, PreservesBehaviour) {
    for (const auto& w : test_set()) {
        const Dfao d = build_dfao(w, Tag::h);
        const Dfao m = minimize(d);
        EXPECT_LE(m.size(), d.size());
        EXPECT_EQ(minimize(m).size(), m.size());
        for (std::uint64_t k = 0; k < (1u << 12); ++k) ASSERT_EQ(m.evaluate(k), d.evaluate(k));
    }
    // g for -1 collapses to very few states
    const Dfao g = minimize(build_dfao(Dyadic(-1L), Tag::g));
    for (std::uint64_t k = 0; k < (1u << 12); ++k) ASSERT_EQ(g.evaluate(k), fgh(Dyadic(-1L), k, Tag::g));
}

TEST(Export, JsonRoundTrip) {
    std::mt19937_64 rng(53);
    const Dfao d = signed_dfao(Dyadic::from_rational(1, 3), EpsilonSpec({}, {1, 0}));
    const Dfao back = load_json(export_json(d));
    ASSERT_EQ(back.size(), d.size());
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t k = rng();
        ASSERT_EQ(back.evaluate(k), d.evaluate(k));
    }
    EXPECT_EQ(export_json(back), export_json(d));
    EXPECT_THROW(load_json("{\"input\": \"msb-first\", \"initial\": 0, \"states\": []}"), Error);
    EXPECT_THROW(load_json("not json"), Error);
    EXPECT_THROW(load_json(R"({"input":"lsb-first","initial":0,"states":[{"id":0,"label":"x","output":0,"next":[0,3]}]})"), Error);
}

TEST(Export, DotParses) {
    const Dfao d = build_dfao(Dyadic::from_rational(1, 3), Tag::f);
    DotChecker c(export_dot(d, "Q_{1/3} \"f\""));
    ASSERT_TRUE(c.ok());
    EXPECT_EQ(c.edges, 2 * d.size() + 1);
    EXPECT_FALSE(DotChecker("digraph x { a -> ; }").ok());
    EXPECT_FALSE(DotChecker("digraph x { a [label=\"b] ; }").ok());
}

TEST(Export, SingleStateDot) {
    Dfao one;
    one.delta = {{0, 0}};
    one.output = {1};
    one.labels = {"one"};
    DotChecker c(export_dot(one));
    ASSERT_TRUE(c.ok());
    std::size_t loops = 0;
    std::set<std::string> states;
    for (const auto& [a, b] : c.edge_list) {
        if (a == "start") continue;
        states.insert(a);
        loops += a == b;
    }
    EXPECT_EQ(states.size(), 1u);
    EXPECT_EQ(loops, 2u);
}

TEST(AlgebraicRelation, OneThird) {
    const auto s = q_mod2_prefix(Dyadic::from_rational(1, 3), 1u << 12);
    const auto r = find_algebraic_relation(s, 4, 64, 1u << 12);
    ASSERT_TRUE(r);
    EXPECT_FALSE(r->polynomial_input);
    EXPECT_LE(r->degree(), 4u);
    EXPECT_LE(r->height(), 64);
    EXPECT_TRUE(relation_holds(s, *r));
    EXPECT_TRUE(verify_relation(s, *r));
}

TEST(AlgebraicRelation, OtherRationals) {
    for (const auto& w : {Dyadic::from_rational(-1, 3), Dyadic::from_rational(1, 5)}) {
        const auto s = q_mod2_prefix(w, 1u << 12);
        const auto r = find_algebraic_relation(s, 4, 64, 1u << 12);
        ASSERT_TRUE(r) << w.to_string();
        EXPECT_TRUE(relation_holds(s, *r)) << w.to_string();
    }
    // 3/7 and 1/7 need degree 6: nothing within (4, 64), found after escalation
    for (const auto& w : {Dyadic::from_rational(3, 7), Dyadic::from_rational(1, 7)}) {
        EXPECT_FALSE(find_algebraic_relation(q_mod2_prefix(w, 1u << 12), 4, 64, 1u << 12)) << w.to_string();
        const auto s = q_mod2_prefix(w, 1u << 15);
        auto r = find_algebraic_relation(s, 6, 128, 1u << 14);
        ASSERT_TRUE(r) << w.to_string();
        r->truncation = 1u << 15;  // the relation keeps holding past the fitted window
        EXPECT_TRUE(relation_holds(s, *r)) << w.to_string();
    }
}

TEST(AlgebraicRelation, SquaresHaveNone) {
    std::vector<std::uint8_t> sq(1u << 12, 0);
    for (std::size_t i = 0; i * i < sq.size(); ++i) sq[i * i] = 1;
    EXPECT_FALSE(find_algebraic_relation(sq, 4, 64, 1u << 12));
}

TEST(AlgebraicRelation, PolynomialInputFlagged) {
    const auto s = q_mod2_prefix(Dyadic(5L), 1u << 12);
    const auto r = find_algebraic_relation(s, 4, 64, 1u << 12);
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->polynomial_input);
    EXPECT_TRUE(relation_holds(s, *r));
    EXPECT_THROW(find_algebraic_relation(s, 4, 64, 1u << 13), Error);
}

TEST(AlgebraicRelation, TamperedRelationRejected) {
    const auto s = q_mod2_prefix(Dyadic::from_rational(1, 3), 1u << 12);
    auto r = *find_algebraic_relation(s, 4, 64, 1u << 12);
    r.c[0] = r.c[0] + GF2Poly::one();
    EXPECT_FALSE(relation_holds(s, r));
    EXPECT_FALSE(verify_relation(s, r));
}
