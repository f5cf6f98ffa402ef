#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "genericlab/point.hpp"

namespace genericlab {

// Finite list of orbit segments (initial point, length >= 1).
struct Specification {
    std::vector<std::pair<Point, std::uint64_t>> segments;

    std::size_t rank() const { return segments.size(); }
    std::uint64_t total_length() const {
        std::uint64_t sum = 0;
        for (const auto& [p, n] : segments) sum += n;
        return sum;
    }
    void validate() const;
};

} // namespace genericlab
