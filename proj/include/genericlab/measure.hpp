#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "genericlab/point.hpp"
#include "genericlab/rational.hpp"
#include "genericlab/specification.hpp"

namespace genericlab {

// Finitely supported probability measure with exact weights. Support points
// are pairwise distinct at the horizon used to build the measure; two points
// agreeing through that horizon merge with summed weight.
struct DiscreteMeasure {
    std::vector<Point> support;
    std::vector<Rat> weights;
    std::uint64_t horizon = 0;

    std::size_t size() const { return support.size(); }
    void validate() const;
};

DiscreteMeasure make_measure(std::vector<std::pair<Point, Rat>> atoms, std::uint64_t horizon);
DiscreteMeasure dirac(const Point& x, std::uint64_t horizon);

// Uniform measure on the first n shifts of x, merged at the horizon.
DiscreteMeasure emp_measure(const Point& x, std::uint64_t n, std::uint64_t horizon);

// Uniform measure on a finite list of points.
DiscreteMeasure emp_of_points(std::span<const Point> points, std::uint64_t horizon);

// Empirical measure of the concatenated orbit segments: the n_j/sum-weighted
// average of the per-segment empirical measures.
DiscreteMeasure emp_of_specification(const Specification& xi, std::uint64_t horizon);

DiscreteMeasure convex_combine(std::span<const Rat> coeffs,
                               std::span<const DiscreteMeasure> measures,
                               std::uint64_t horizon);

// Orbit measure of a purely periodic point.
DiscreteMeasure orbit_measure(const Point& periodic_point, std::uint64_t horizon);

} // namespace genericlab
