#pragma once

#include <optional>
#include <vector>

#include "sptk/common.hpp"
#include "sptk/geometry.hpp"

namespace sptk {

// Real samples on a regular grid. values[i] belongs to grid.node(i).
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    ScalarField(Grid g, std::vector<double> v);
    explicit ScalarField(Grid g) : ScalarField(std::move(g), {}) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    // Sample a callable at every node.
    template <typename F>
    static ScalarField sample(const Grid& g, F&& f) {
        std::vector<double> v(g.node_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.node(i));
        return ScalarField(g, std::move(v));
    }

    ScalarField map(const std::function<double(double)>& f) const;
    double max_abs() const;
};

// Nonnegative, not identically zero field.
struct WeightField {
    ScalarField field;

    WeightField() = default;
    explicit WeightField(ScalarField f);

    const Grid& grid() const { return field.grid; }
    double operator[](std::size_t i) const { return field.values[i]; }

    // node-wise power w^a (a may be fractional; zero nodes stay zero)
    WeightField pow(double a) const;
};

// n-dimensional summed-area table: sums of a field over index boxes in
// O(2^n). Node counts over the same boxes come for free.
class PrefixSums {
  public:
    PrefixSums() = default;
    explicit PrefixSums(const ScalarField& f);

    // Sum / node count over nodes in Q intersected with the grid.
    double sum(const Cube& Q) const;
    long long count(const Cube& Q) const;
    // Mean over nodes in Q; throws when Q misses the grid.
    double average(const Cube& Q) const;
    std::optional<double> try_average(const Cube& Q) const;

    double sum_range(const std::vector<int>& lo, const std::vector<int>& hi) const;

    const Grid& grid() const { return grid_; }

  private:
    Grid grid_;
    std::vector<int> ext1_;  // extents + 1
    std::vector<double> table_;
    std::size_t lin1(const std::vector<int>& idx) const;
};

// Mean of f over grid nodes inside Q (midpoint rule over node cells).
double cube_average(const ScalarField& f, const Cube& Q);

// The candidate cube family shared by every sup/inf over cubes in this
// library: cubes centered at grid nodes with half-sides from the ladder
//   {s/2} U {s 2^j} U {3 s 2^j},  s = grid spacing,
// capped once the cube covers the whole sampled box from any center.
// Sup/max over the family is a lower bound for the continuum sup; both
// sides of every two-sided inequality are evaluated against the same
// family so the paper constants remain exactly checkable.
std::vector<double> radius_ladder(const Grid& grid);

// Smallest ladder radius >= r (the cap radius covers the whole box).
double ladder_round_up(const std::vector<double>& ladder, double r);

}  // namespace sptk
