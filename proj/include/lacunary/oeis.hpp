#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lacunary/qseries.hpp"
#include "lacunary/stern.hpp"

namespace lacunary {

/// Lines "n a(n)"; '#' comments and blank lines are skipped.
struct BFile {
    std::vector<std::pair<std::int64_t, Integer>> entries;
};

inline BFile parse_bfile(std::istream& in) {
    BFile b;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::string idx, val, extra;
        if (!(fields >> idx >> val) || (fields >> extra)) {
            throw Error("malformed b-file line " + std::to_string(line_no));
        }
        Integer v;
        std::int64_t n;
        try {
            n = detail::parse_number<std::int64_t>(idx);
        } catch (const Error&) {
            throw Error("malformed b-file line " + std::to_string(line_no));
        }
        if (v.set_str(val, 10) != 0) throw Error("malformed b-file line " + std::to_string(line_no));
        if (!b.entries.empty() && n <= b.entries.back().first) {
            throw Error("b-file indices not increasing at line " + std::to_string(line_no));
        }
        b.entries.emplace_back(n, v);
    }
    return b;
}

inline BFile load_bfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("missing fixture file '" + path + "'");
    return parse_bfile(in);
}

enum class OeisKind { Sequence, TriangleMod2 };

/// Sequence: ours(n) = A(n + shift) for n >= 0.
/// TriangleMod2: entries read by rows, ours_tri(n, k) = A(T(n, k)) mod 2.
struct OeisRelation {
    std::string id;
    std::string relation;
    OeisKind kind;
    std::int64_t shift = 0;
    std::function<Integer(std::int64_t)> ours;
    std::function<int(std::int64_t, std::int64_t)> ours_tri;
};

struct OeisReport {
    std::string id;
    std::size_t compared = 0;
    std::optional<std::int64_t> first_mismatch;  // b-file index
    Integer expected, got;
    bool ok() const { return compared > 0 && !first_mismatch; }
};

inline const std::vector<OeisRelation>& oeis_registry() {
    static const std::vector<OeisRelation> registry = [] {
        std::vector<OeisRelation> r;
        r.push_back({"A002487", "u(n) = A002487(n+1)", OeisKind::Sequence, 1, [](std::int64_t n) { return stern_u(n); }, {}});
        r.push_back({"A049347", "gamma(n) = A049347(n)", OeisKind::Sequence, 0, [](std::int64_t n) { return gamma_rec(n); }, {}});
        r.push_back({"A005590", "alpha(n) = A005590(n+1)", OeisKind::Sequence, 1, [](std::int64_t n) { return alpha_rec(n); }, {}});
        r.push_back({"A177219", "beta(n) = A177219(n+1)", OeisKind::Sequence, 1, [](std::int64_t n) { return beta_rec(n); }, {}});
        r.push_back({"A168561", "f_n(k) = T(n,k) mod 2", OeisKind::TriangleMod2, 0, {},
                     [](std::int64_t n, std::int64_t k) { return fgh(Dyadic(Integer(static_cast<long>(n))), static_cast<std::uint64_t>(k), Tag::f); }});
        r.push_back({"A085478", "g_n(k) = T(n,k) mod 2", OeisKind::TriangleMod2, 0, {},
                     [](std::int64_t n, std::int64_t k) { return fgh(Dyadic(Integer(static_cast<long>(n))), static_cast<std::uint64_t>(k), Tag::g); }});
        r.push_back({"A078812", "h_{n+1}(k) = T(n,k) mod 2", OeisKind::TriangleMod2, 0, {},
                     [](std::int64_t n, std::int64_t k) { return fgh(Dyadic(Integer(static_cast<long>(n + 1))), static_cast<std::uint64_t>(k), Tag::h); }});
        return r;
    }();
    return registry;
}

inline const OeisRelation& find_oeis(const std::string& id) {
    for (const auto& r : oeis_registry()) if (r.id == id) return r;
    throw Error("unknown sequence id '" + id + "'");
}

/// Compares over the b-file entries whose index maps into [0, max_n).
inline OeisReport oeis_check(const OeisRelation& rel, const BFile& b, std::int64_t max_n = INT64_MAX) {
    OeisReport rep;
    rep.id = rel.id;
    for (const auto& [m, a] : b.entries) {
        Integer expected, got;
        if (rel.kind == OeisKind::Sequence) {
            const std::int64_t n = m - rel.shift;
            if (n < 0 || n >= max_n) continue;
            expected = a;
            got = rel.ours(n);
        } else {
            if (m < 0) continue;
            // m = n(n+1)/2 + k with 0 <= k <= n.
            std::int64_t n = 0;
            while ((n + 1) * (n + 2) / 2 <= m) ++n;
            const std::int64_t k = m - n * (n + 1) / 2;
            if (n >= max_n) continue;
            expected = mpz_odd_p(a.get_mpz_t()) ? 1 : 0;
            got = rel.ours_tri(n, k);
        }
        ++rep.compared;
        if (expected != got) {
            rep.first_mismatch = m;
            rep.expected = expected;
            rep.got = got;
            return rep;
        }
    }
    if (rep.compared == 0) throw Error("empty overlap");
    return rep;
}

}  // namespace lacunary
