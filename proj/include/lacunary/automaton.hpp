#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lacunary/bits.hpp"
#include "lacunary/dyadic.hpp"
#include "lacunary/period.hpp"
#include "lacunary/qseries.hpp"

namespace lacunary {

// ---------------------------------------------------------------------------
// Orbit of T on a rational 2-adic integer
// ---------------------------------------------------------------------------

/// Distinct values w, Tw, T^2w, ...; the cycle starts at `cycle_start`.
struct Orbit {
    std::vector<Dyadic> elements;
    std::size_t cycle_start = 0;

    std::size_t size() const { return elements.size(); }
    std::size_t preperiod_length() const { return cycle_start; }
    std::size_t cycle_length() const { return elements.size() - cycle_start; }
    /// Index of T^{j+1} w given the index of T^j w.
    std::size_t next(std::size_t j) const { return j + 1 < elements.size() ? j + 1 : cycle_start; }
};

inline Orbit orbit(const Dyadic& w) {
    if (!w.is_rational()) throw Error("orbit requires rational");
    Orbit o;
    std::map<Dyadic, std::size_t> seen;
    Dyadic cur = w;
    while (true) {
        auto [it, fresh] = seen.try_emplace(cur, o.elements.size());
        if (!fresh) {
            o.cycle_start = it->second;
            return o;
        }
        o.elements.push_back(cur);
        cur = cur.shift();
    }
}

// ---------------------------------------------------------------------------
// Deterministic finite automaton with output
// ---------------------------------------------------------------------------

/// Reads the binary digits of k least significant first; the output of the
/// state reached is the value at k. Trailing (high) zero digits never change
/// the output.
struct Dfao {
    using State = std::uint32_t;
    std::vector<std::array<State, 2>> delta;
    std::vector<int> output;
    std::vector<std::string> labels;
    State initial = 0;

    std::size_t size() const { return delta.size(); }

    State run(State s, std::uint64_t k) const {
        for (; k; k >>= 1) s = delta[s][k & 1u];
        return s;
    }
    int evaluate_from(State s, std::uint64_t k) const { return output[run(s, k)]; }
    int evaluate(std::uint64_t k) const { return evaluate_from(initial, k); }

    int evaluate(const Integer& k) const {
        if (sgn(k) < 0) throw Error("negative BinaryNat");
        State s = initial;
        const unsigned len = bit_length(k);
        for (unsigned q = 0; q < len; ++q) s = delta[s][digit(k, q)];
        return output[s];
    }

    /// Evaluates an explicit LSB-first digit word (may carry extra zeros).
    int evaluate_digits(const std::vector<int>& digits) const {
        State s = initial;
        for (int b : digits) s = delta[s][b ? 1 : 0];
        return output[s];
    }
};

namespace detail {

/// One step of the kernel recurrences: tag_w(2k + b) = next_tag_{Tw}(k),
/// where p = w_0. Dead entries are identically zero.
enum class KTag : std::uint8_t { f, g, h, dead };

inline KTag kernel_step(KTag tag, int p, int b) {
    static constexpr KTag table[3][2][2] = {
        // [tag][p][b]
        {{KTag::g, KTag::dead}, {KTag::dead, KTag::f}},  // f
        {{KTag::g, KTag::h}, {KTag::g, KTag::f}},        // g
        {{KTag::dead, KTag::h}, {KTag::g, KTag::dead}},  // h
    };
    if (tag == KTag::dead) return KTag::dead;
    return table[static_cast<int>(tag)][p][b];
}

/// f_w(0) = 1 - w_0, g_w(0) = 1, h_w(0) = w_0.
inline int kernel_output(KTag tag, int p) {
    switch (tag) {
        case KTag::f: return 1 - p;
        case KTag::g: return 1;
        case KTag::h: return p;
        case KTag::dead: return 0;
    }
    return 0;
}

inline KTag to_ktag(Tag t) { return static_cast<KTag>(static_cast<int>(t)); }

}  // namespace detail

/// Automaton for k -> tag_w(k) over the states (tag, T^j w) plus a dead state.
/// Only reachable states are kept.
inline Dfao build_dfao(const Dyadic& w, Tag which) {
    using detail::KTag;
    const Orbit o = orbit(w);
    std::vector<int> parity(o.size());
    for (std::size_t j = 0; j < o.size(); ++j) parity[j] = o.elements[j].parity();

    // Raw id: tag * |orbit| + j; dead = 3 |orbit|.
    const std::size_t n = o.size();
    const std::size_t dead_raw = 3 * n;
    auto raw_id = [&](KTag t, std::size_t j) { return t == KTag::dead ? dead_raw : static_cast<std::size_t>(t) * n + j; };

    Dfao d;
    std::map<std::size_t, Dfao::State> index;
    std::queue<std::size_t> todo;
    auto intern = [&](std::size_t raw) {
        auto [it, fresh] = index.try_emplace(raw, static_cast<Dfao::State>(d.delta.size()));
        if (fresh) {
            d.delta.push_back({0, 0});
            if (raw == dead_raw) {
                d.output.push_back(0);
                d.labels.push_back("dead");
            } else {
                const auto t = static_cast<KTag>(raw / n);
                const std::size_t j = raw % n;
                d.output.push_back(detail::kernel_output(t, parity[j]));
                d.labels.push_back(std::string("(") + "fgh"[static_cast<int>(t)] + ", T^" + std::to_string(j) + "w)");
            }
            todo.push(raw);
        }
        return it->second;
    };
    d.initial = intern(raw_id(detail::to_ktag(which), 0));
    while (!todo.empty()) {
        const std::size_t raw = todo.front();
        todo.pop();
        const Dfao::State s = index.at(raw);
        for (int b = 0; b < 2; ++b) {
            std::size_t target = dead_raw;
            if (raw != dead_raw) {
                const auto t = static_cast<KTag>(raw / n);
                const std::size_t j = raw % n;
                target = raw_id(detail::kernel_step(t, parity[j], b), o.next(j));
            }
            const Dfao::State next = intern(target);
            d.delta[s][static_cast<std::size_t>(b)] = next;
        }
    }
    return d;
}

/// Automaton for k -> sigma(k, eps) f_w(k) (Mersenne exponents, so the
/// coefficient of X^k in Q_w). Product of the f-automaton with the sign of
/// (-1)^{nu(k)} (a 1 read right after a 0 closes a block "10") and the
/// position in the eventually periodic sequence eps_q - eps_{q-1} mod 2.
inline Dfao signed_dfao(const Dyadic& w, const EpsilonSpec& eps) {
    const Dfao f = build_dfao(w, Tag::f);
    const std::size_t pre = eps.preperiod().size() + 1;
    const std::size_t positions = pre + eps.period().size();
    std::vector<int> d(positions);
    for (std::size_t q = 0; q < positions; ++q) {
        const auto iq = static_cast<std::int64_t>(q);
        d[q] = eps.at(iq) ^ eps.at(iq - 1);
    }
    auto next_pos = [&](std::size_t q) { return q + 1 < positions ? q + 1 : pre; };

    struct Key {
        Dfao::State s;
        int sign;
        int prev_zero;
        std::size_t pos;
        auto operator<=>(const Key&) const = default;
    };
    Dfao out;
    std::map<Key, Dfao::State> index;
    std::queue<Key> todo;
    std::optional<Dfao::State> dead;
    auto is_dead = [&](Dfao::State s) { return f.labels[s] == "dead"; };
    auto intern = [&](const Key& key) -> Dfao::State {
        if (is_dead(key.s)) {
            if (!dead) {
                dead = static_cast<Dfao::State>(out.delta.size());
                out.delta.push_back({*dead, *dead});
                out.output.push_back(0);
                out.labels.push_back("dead");
            }
            return *dead;
        }
        auto [it, fresh] = index.try_emplace(key, static_cast<Dfao::State>(out.delta.size()));
        if (fresh) {
            out.delta.push_back({0, 0});
            out.output.push_back(f.output[key.s] * (key.sign ? -1 : 1));
            out.labels.push_back(f.labels[key.s] + (key.sign ? "-" : "+") + (key.prev_zero ? "z" : "") + "@" +
                                 std::to_string(key.pos));
            todo.push(key);
        }
        return it->second;
    };
    out.initial = intern({f.initial, 0, 0, 0});
    while (!todo.empty()) {
        const Key key = todo.front();
        todo.pop();
        const Dfao::State s = index.at(key);
        for (int b = 0; b < 2; ++b) {
            Key nk;
            nk.s = f.delta[key.s][static_cast<std::size_t>(b)];
            nk.sign = key.sign ^ (b & key.prev_zero) ^ (b & d[key.pos]);
            nk.prev_zero = b == 0;
            nk.pos = next_pos(key.pos);
            const Dfao::State t = intern(nk);
            out.delta[s][static_cast<std::size_t>(b)] = t;
        }
    }
    return out;
}

/// Moore-machine minimization by partition refinement; labels of merged
/// states are joined with '|'.
inline Dfao minimize(const Dfao& d) {
    const std::size_t n = d.size();
    std::vector<std::size_t> cls(n);
    {
        std::map<int, std::size_t> by_output;
        for (std::size_t s = 0; s < n; ++s) cls[s] = by_output.try_emplace(d.output[s], by_output.size()).first->second;
    }
    while (true) {
        std::map<std::array<std::size_t, 3>, std::size_t> sig;
        std::vector<std::size_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            const std::array<std::size_t, 3> key{cls[s], cls[d.delta[s][0]], cls[d.delta[s][1]]};
            next[s] = sig.try_emplace(key, sig.size()).first->second;
        }
        const std::size_t before = *std::max_element(cls.begin(), cls.end()) + 1;
        cls = std::move(next);
        if (sig.size() == before) break;
    }
    const std::size_t m = *std::max_element(cls.begin(), cls.end()) + 1;
    Dfao r;
    r.delta.assign(m, {0, 0});
    r.output.assign(m, 0);
    r.labels.assign(m, "");
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t c = cls[s];
        r.delta[c] = {static_cast<Dfao::State>(cls[d.delta[s][0]]), static_cast<Dfao::State>(cls[d.delta[s][1]])};
        r.output[c] = d.output[s];
        r.labels[c] += (r.labels[c].empty() ? "" : "|") + d.labels[s];
    }
    r.initial = static_cast<Dfao::State>(cls[d.initial]);
    return r;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

inline std::string export_dot(const Dfao& d, const std::string& name = "dfao") {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n";
    os << "  rankdir=LR;\n";
    os << "  start [shape=point];\n";
    for (std::size_t s = 0; s < d.size(); ++s) {
        os << "  s" << s << " [label=" << quote(d.labels[s] + " / " + std::to_string(d.output[s])) << "];\n";
    }
    os << "  start -> s" << d.initial << ";\n";
    for (std::size_t s = 0; s < d.size(); ++s) {
        for (int b = 0; b < 2; ++b) {
            os << "  s" << s << " -> s" << d.delta[s][static_cast<std::size_t>(b)] << " [label=\"" << b << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

inline nlohmann::json to_json(const Dfao& d) {
    nlohmann::json states = nlohmann::json::array();
    for (std::size_t s = 0; s < d.size(); ++s) {
        states.push_back({{"id", s}, {"label", d.labels[s]}, {"output", d.output[s]},
                          {"next", {d.delta[s][0], d.delta[s][1]}}});
    }
    return {{"input", "lsb-first"}, {"initial", d.initial}, {"states", states}};
}

inline std::string export_json(const Dfao& d) { return to_json(d).dump(2); }

inline Dfao load_json(const std::string& text) {
    Dfao d;
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.at("input").get<std::string>() != "lsb-first") throw Error("unsupported input convention");
        const auto& states = j.at("states");
        d.delta.resize(states.size());
        d.output.resize(states.size());
        d.labels.resize(states.size());
        for (const auto& st : states) {
            const auto id = st.at("id").get<std::size_t>();
            if (id >= states.size()) throw Error("state id out of range");
            const auto next = st.at("next").get<std::array<Dfao::State, 2>>();
            for (auto t : next) if (t >= states.size()) throw Error("transition out of range");
            d.delta[id] = next;
            d.output[id] = st.at("output").get<int>();
            d.labels[id] = st.at("label").get<std::string>();
        }
        d.initial = j.at("initial").get<Dfao::State>();
        if (d.initial >= states.size()) throw Error("initial state out of range");
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed automaton json: ") + e.what());
    }
    return d;
}

// ---------------------------------------------------------------------------
// Algebraic relations over GF(2)(X)
// ---------------------------------------------------------------------------

/// sum_{i <= D} c_i(X) S(X)^{2^i} = 0 mod X^N.
struct AlgebraicRelation {
    std::vector<GF2Poly> c;
    std::size_t truncation = 0;
    bool polynomial_input = false;

    std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
    Exponent height() const {
        Exponent h = 0;
        for (const auto& p : c) if (!p.is_zero()) h = std::max(h, p.degree());
        return h;
    }
};

namespace detail {

class BitRow {
public:
    explicit BitRow(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void xor_with(const BitRow& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    }
    std::optional<std::size_t> lowest() const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
        }
        return std::nullopt;
    }

private:
    std::vector<std::uint64_t> words_;
};

}  // namespace detail

/// Searches for a Frobenius-linear relation among S, S^2, ..., S^{2^D} with
/// coefficients of degree <= H, holding to order X^N. Columns are tried in
/// order of increasing coefficient degree, so the first dependency found is
/// of low height. A prefix with no terms beyond X^H is treated as a
/// polynomial and gets the relation S * S + 1 * S^2 = 0.
inline std::optional<AlgebraicRelation> find_algebraic_relation(const std::vector<std::uint8_t>& coeffs,
                                                                std::size_t D, std::size_t H, std::size_t N) {
    if (coeffs.size() < N) throw Error("insufficient data");
    if (N < (D + 1) * (H + 1) * 4) throw Error("insufficient data");
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < N; ++k) if (coeffs[k]) support.push_back(k);

    if (support.empty() || support.back() <= H) {
        AlgebraicRelation r;
        r.truncation = N;
        r.polynomial_input = true;
        std::vector<GF2Poly::Term> t;
        for (auto k : support) t.emplace_back(static_cast<Exponent>(k), 1);
        if (support.empty()) {
            r.c = {GF2Poly::one()};
        } else {
            r.c = {GF2Poly(std::move(t)), GF2Poly::one()};
        }
        return r;
    }

    // Column (i, h) is X^h S^{2^i} mod X^N; S^{2^i} = sum_k s_k X^{k 2^i}.
    struct Reduced {
        detail::BitRow row;
        detail::BitRow combo;  // which original columns were added
        std::size_t pivot;
    };
    std::vector<Reduced> basis;
    std::vector<std::optional<std::size_t>> pivot_owner(N);
    const std::size_t columns = (D + 1) * (H + 1);
    std::vector<std::pair<std::size_t, std::size_t>> column_label;  // (i, h)
    for (std::size_t h = 0; h <= H; ++h) {
        for (std::size_t i = 0; i <= D; ++i) {
            const std::size_t col = column_label.size();
            column_label.emplace_back(i, h);
            detail::BitRow row(N);
            for (std::size_t k : support) {
                const std::size_t e = (k << i) + h;
                if ((k << i) >> i != k || e >= N) break;
                row.set(e);
            }
            detail::BitRow combo(columns);
            combo.set(col);
            while (auto low = row.lowest()) {
                const auto owner = pivot_owner[*low];
                if (!owner) break;
                row.xor_with(basis[*owner].row);
                combo.xor_with(basis[*owner].combo);
            }
            if (auto low = row.lowest()) {
                pivot_owner[*low] = basis.size();
                basis.push_back({std::move(row), std::move(combo), *low});
                continue;
            }
            // Dependency: the columns in `combo` sum to zero mod X^N.
            AlgebraicRelation r;
            r.truncation = N;
            std::vector<std::vector<GF2Poly::Term>> terms(D + 1);
            for (std::size_t c = 0; c <= col; ++c) {
                if (combo.test(c)) terms[column_label[c].first].emplace_back(static_cast<Exponent>(column_label[c].second), 1);
            }
            for (auto& t : terms) r.c.push_back(GF2Poly(std::move(t)));
            while (r.c.size() > 1 && r.c.back().is_zero()) r.c.pop_back();
            return r;
        }
    }
    return std::nullopt;
}

/// Recomputes sum_i c_i S^{2^i} mod X^N by repeated truncated squaring.
inline bool verify_relation(const std::vector<std::uint8_t>& coeffs, const AlgebraicRelation& r) {
    const auto N = static_cast<Exponent>(r.truncation);
    if (coeffs.size() < r.truncation) throw Error("insufficient data");
    bool nontrivial = false;
    for (const auto& c : r.c) nontrivial = nontrivial || !c.is_zero();
    if (!nontrivial) return false;
    std::vector<GF2Poly::Term> t;
    for (std::size_t k = 0; k < r.truncation; ++k) if (coeffs[k]) t.emplace_back(static_cast<Exponent>(k), 1);
    GF2Poly power(std::move(t));
    GF2Poly total;
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        if (i > 0) power = GF2Poly::multiply(power, power, N);
        total = total + GF2Poly::multiply(r.c[i], power, N);
    }
    return total.is_zero();
}

/// Coefficients of Q_w mod 2 for k < count (Mersenne exponents).
inline std::vector<std::uint8_t> q_mod2_prefix(const Dyadic& w, std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = static_cast<std::uint8_t>(halfsum_binom(w, k));
    return out;
}

}  // namespace lacunary
