#pragma once

#include "sptk/field.hpp"
#include "sptk/maximal.hpp"

namespace sptk {

struct NamedWeight {
    std::string name;
    WeightField w;
};

// Five A1-type weights on the grid box (bounded ratio, power decay,
// Coifman-Rochberg output, smooth oscillation, two-valued step).
std::vector<NamedWeight> a1_weight_fixtures(const Grid& g);

// Two weights that fail the A1 condition at resolution: a half-space of
// zeros and a tall one-node spike.
std::vector<NamedWeight> non_a1_weight_fixtures(const Grid& g);

// One-node spike of the given value at the node nearest the box center,
// on a baseline of 1. The divergence family scales `value` with refinement.
WeightField spike_weight(const Grid& g, double value);

// Grid whose nodes contain every point of E (anchored at E[0]); throws when
// some point of E misses the lattice.
Grid aligned_grid(const PointSet& E, const Cube& box, int nodes_per_axis);

inline PointSet points1d(const std::vector<double>& xs) {
    std::vector<Vec> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.push_back(Vec{x});
    return PointSet(std::move(pts));
}

inline PointSet make_points(std::vector<Vec> pts) { return PointSet(std::move(pts)); }

}  // namespace sptk
