#include "sptk/fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace sptk {

std::vector<NamedWeight> a1_weight_fixtures(const Grid& g) {
    std::vector<NamedWeight> out;
    double s = g.spacing;
    out.push_back({"const_one", WeightField(ScalarField::sample(g, [](const Vec&) { return 1.0; }))});
    out.push_back({"inv_sqrt", WeightField(ScalarField::sample(g, [s](const Vec& x) {
                       return std::pow(std::max(norm_inf(x), 0.5 * s), -0.5);
                   }))});
    {
        // Coifman-Rochberg weight from a one-node point mass
        std::vector<double> v(g.node_count(), 0.0);
        Vec c = g.box().center;
        v[g.nearest_node(c)] = 1.0;
        out.push_back({"cr_half", coifman_rochberg(ScalarField(g, std::move(v)), 0.5)});
    }
    out.push_back({"smooth_cos", WeightField(ScalarField::sample(g, [](const Vec& x) {
                       return 1.5 + 0.5 * std::cos(3.14159265358979 * x[0]);
                   }))});
    out.push_back({"two_valued", WeightField(ScalarField::sample(g, [](const Vec& x) {
                       return x[0] > 0.0 ? 2.0 : 1.0;
                   }))});
    return out;
}

std::vector<NamedWeight> non_a1_weight_fixtures(const Grid& g) {
    std::vector<NamedWeight> out;
    out.push_back({"zero_half", WeightField(ScalarField::sample(g, [](const Vec& x) {
                       return x[0] > 0.0 ? 1.0 : 0.0;
                   }))});
    out.push_back({"spike", spike_weight(g, 1e6)});
    return out;
}

WeightField spike_weight(const Grid& g, double value) {
    std::vector<double> v(g.node_count(), 1.0);
    v[g.nearest_node(g.box().center)] = value;
    return WeightField(ScalarField(g, std::move(v)));
}

Grid aligned_grid(const PointSet& E, const Cube& box, int nodes_per_axis) {
    int n = box.dim();
    const Vec& anchor = E.points[0];

    // lattice unit: a spacing dividing every coordinate offset of E
    double unit = 0.0;
    for (const auto& e : E.points)
        for (int i = 0; i < n; ++i) {
            double off = std::abs(e[i] - anchor[i]);
            if (off > 1e-12 && (unit == 0.0 || off < unit)) unit = off;
        }
    if (unit == 0.0) unit = box.half_side;  // singleton E
    for (int halvings = 0; halvings < 48; ++halvings) {
        bool divides = true;
        for (const auto& e : E.points)
            for (int i = 0; i < n; ++i) {
                double ratio = (e[i] - anchor[i]) / unit;
                if (std::abs(ratio - std::round(ratio)) > 1e-9) divides = false;
            }
        if (divides) break;
        unit *= 0.5;
        if (halvings == 47)
            throw std::invalid_argument("E offsets do not share a dyadic lattice unit");
    }

    // refine the unit until the spacing meets the requested resolution
    double s = unit;
    double target = box.diam() / nodes_per_axis;
    while (s > target * (1.0 + 1e-12)) s *= 0.5;

    Vec origin(n);
    std::vector<int> ext(n);
    for (int i = 0; i < n; ++i) {
        double lo = box.center[i] - box.half_side;
        double hi = box.center[i] + box.half_side;
        long k = (long)std::ceil((anchor[i] - lo) / s - 1e-9);
        origin[i] = anchor[i] - k * s;
        ext[i] = (int)std::floor((hi - origin[i]) / s + 1e-9) + 1;
    }
    int ext_min = *std::min_element(ext.begin(), ext.end());
    Grid g(origin, s, std::vector<int>(n, ext_min));
    for (const auto& e : E.points) {
        Vec nn = g.node(g.nearest_node(e));
        if (dist_inf(nn, e) > 1e-9 * std::max(1.0, s))
            throw std::invalid_argument("E point does not lie on the grid lattice");
    }
    return g;
}

}  // namespace sptk
