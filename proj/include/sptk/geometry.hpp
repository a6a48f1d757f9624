#pragma once

#include <optional>
#include <vector>

#include "sptk/common.hpp"

namespace sptk {

// Axis-parallel closed cube Q(center, half_side). diam(Q) = 2*half_side in
// the uniform norm.
struct Cube {
    Vec center;
    double half_side = 0.0;

    Cube() = default;
    Cube(Vec c, double r);

    int dim() const { return (int)center.size(); }
    double diam() const { return 2.0 * half_side; }

    Cube dilate(double lambda) const { return Cube(center, half_side * lambda); }

    bool contains(const Vec& x, double tol = kGeomTol) const;
    bool intersects(const Cube& o, double tol = kGeomTol) const;
    bool contains_cube(const Cube& o, double tol = kGeomTol) const;

    // dist(Q, x) in the uniform norm (0 when x in Q).
    double dist_point(const Vec& x) const;
};

// Finite closed set E: distinct points.
struct PointSet {
    std::vector<Vec> points;

    PointSet() = default;
    explicit PointSet(std::vector<Vec> pts);

    int dim() const { return points.empty() ? 0 : (int)points[0].size(); }
    std::size_t size() const { return points.size(); }

    // Axis-aligned bounding cube of the points, inflated by `factor` about
    // the hull center (factor 10 is the standard truncation box).
    Cube bounding_cube(double factor = 1.0) const;
};

struct DistResult {
    double dist;
    Vec attained;  // lexicographically smallest attaining point
};

// min over e in E of ||x - e||_inf with deterministic tie-break.
DistResult dist_point_set(const Vec& x, const PointSet& E);

// dist(Q, E) in the uniform norm plus the attaining point of E.
DistResult dist_cube_set(const Cube& Q, const PointSet& E);

// Regular sampling lattice: nodes at origin + spacing * (i_1,...,i_n).
struct Grid {
    Vec origin;
    double spacing = 0.0;
    std::vector<int> extents;

    Grid() = default;
    Grid(Vec org, double sp, std::vector<int> ext);

    // Square grid with `nodes_per_axis` nodes per axis covering `box` (node
    // cells tile the box exactly: spacing = side / nodes).
    static Grid cover(const Cube& box, int nodes_per_axis);

    int dim() const { return (int)extents.size(); }
    std::size_t node_count() const;

    Vec node(std::size_t linear) const;
    std::vector<int> node_multi(std::size_t linear) const;
    std::size_t linear(const std::vector<int>& idx) const;
    std::size_t nearest_node(const Vec& x) const;

    // The sampled box: union of the node cells (each node owns a cell of
    // side `spacing` centered at it).
    Cube box() const;

    // Per-axis closed index range of nodes inside Q intersected with the
    // grid; empty optional when no node lies in Q.
    std::optional<std::pair<std::vector<int>, std::vector<int>>> index_range(const Cube& Q) const;
};

// Whitney covering of box \ E by non-overlapping dyadic cubes satisfying
// diam Q <= dist(Q, E) <= 4 diam Q. Sub-resolution cubes adjacent to E are
// recorded separately as the collar.
struct WhitneyDecomposition {
    std::vector<Cube> cubes;
    std::vector<Cube> collar;
    PointSet source_set;
    Cube truncation_box;
    int max_depth = 0;
};

WhitneyDecomposition whitney_decompose(const PointSet& E, const Cube& box, int max_depth);

// T(K): all cubes of W intersecting K (K must be a member).
std::vector<std::size_t> touching_family(std::size_t k_index, const WhitneyDecomposition& W);

// Nearest point of E to Q, lexicographic tie-break; checks a_Q in 9Q.
Vec nearest_anchor(const Cube& Q, const PointSet& E);

// Exact covering multiplicity of a finite axis-parallel family (sampled at
// all coordinate-arrangement vertices plus centers).
int covering_multiplicity(const std::vector<Cube>& cubes);

// Partition into pairwise disjoint subfamilies. Greedy coloring on the
// intersection graph (largest cube first), with a DSATUR retry and an exact
// backtracking fallback so the subfamily count meets the
// 2^(n-1)(M-1)+1 bound whenever a coloring of that size exists.
std::vector<std::vector<std::size_t>> partition_disjoint(const std::vector<Cube>& cubes);

}  // namespace sptk
