#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qps {

// All contract violations surface as Error with a machine-readable kind
// ("PoleError", "TooLarge", ...). The CLI maps kind into its JSON error
// document; tests match on kind.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& detail) {
    throw Error(std::move(kind), detail);
}

inline void require(bool cond, const char* kind, const std::string& detail) {
    if (!cond)
        fail(kind, detail);
}

} // namespace qps
