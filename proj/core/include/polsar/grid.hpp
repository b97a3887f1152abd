#pragma once

#include <cstddef>
#include <vector>

#include "polsar/error.hpp"

namespace polsar {

/// Row-major grid of per-pixel records.
template <class T>
struct Grid {
    int rows = 0;
    int cols = 0;
    std::vector<T> data;

    Grid() = default;
    Grid(int r, int c, const T& fill = T{}) : rows(r), cols(c) {
        if (r < 0 || c < 0) {
            throw Error(ErrorCode::InvalidParams, "grid dimensions must be nonnegative");
        }
        data.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill);
    }

    std::size_t size() const noexcept { return data.size(); }
    std::size_t index(int r, int c) const noexcept {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c);
    }
    T& at(int r, int c) { return data[index(r, c)]; }
    const T& at(int r, int c) const { return data[index(r, c)]; }
};

}  // namespace polsar
