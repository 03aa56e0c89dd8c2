#pragma once

#include <stdexcept>
#include <string>

namespace lacunary {

/// Raised for every domain failure (precision loss, exhausted streams,
/// malformed input). The message is the stable, user-visible reason.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lacunary
