#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lacunary/error.hpp"

namespace lacunary {

/// An eventually periodic sequence written as preperiod followed by period^inf.
template <typename T>
struct Periodicity {
    std::vector<T> preperiod;
    std::vector<T> period;
    friend bool operator==(const Periodicity&, const Periodicity&) = default;
};

/// Smallest (preperiod, period) describing the whole prefix, with the
/// repeating tail covering at least two full periods. Preperiod is minimized
/// first, then period.
template <typename T>
std::optional<Periodicity<T>> detect_ultimate_period(const std::vector<T>& seq, std::size_t max_period,
                                                     std::size_t max_preperiod) {
    if (seq.size() < max_preperiod + 2 * max_period) throw Error("insufficient data");
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t p = 1; p <= max_period && p <= seq.size(); ++p) {
        // Last index i with seq[i] != seq[i + p]; everything after it repeats.
        std::size_t pre = 0;
        for (std::size_t i = seq.size() - p; i-- > 0;) {
            if (seq[i] != seq[i + p]) {
                pre = i + 1;
                break;
            }
        }
        if (pre > max_preperiod || seq.size() - pre < 2 * p) continue;
        if (!best || pre < best->first) best = {pre, p};
    }
    if (!best) return std::nullopt;
    const auto pre = static_cast<std::ptrdiff_t>(best->first);
    const auto per = static_cast<std::ptrdiff_t>(best->second);
    return Periodicity<T>{{seq.begin(), seq.begin() + pre}, {seq.begin() + pre, seq.begin() + pre + per}};
}

}  // namespace lacunary
