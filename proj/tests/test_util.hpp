#pragma once

#include <optional>
#include <utility>

#include "error.hpp"

namespace dmimo_test {

// Runs fn and reports the ErrorCode it threw, if any.
template <typename Fn>
std::optional<dmimo::ErrorCode> thrown_code(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const dmimo::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace dmimo_test
