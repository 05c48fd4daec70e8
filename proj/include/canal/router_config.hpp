#pragma once

#include <cstdint>

namespace canal {

struct RouterConfig {
    int max_rows = 1;  // track rows 1..max_rows
    // Declared by the original routine but never consulted by it.
    int min_row = 1;
    int min_column = 0;
    std::uint64_t seed = 0;
    bool dogleg_enabled = false;

    friend bool operator==(const RouterConfig&, const RouterConfig&) = default;
};

}  // namespace canal
