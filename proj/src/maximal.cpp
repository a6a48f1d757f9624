#include "sptk/maximal.hpp"

#include <deque>

namespace sptk {

namespace {

// two-sided sliding extreme over [i-k, i+k] clamped to the line
void sliding_extreme(std::vector<double>& line, int k, bool want_max) {
    int N = (int)line.size();
    std::vector<double> out(N);
    std::deque<int> dq;
    int added = 0;
    for (int i = 0; i < N; ++i) {
        int hi = std::min(N - 1, i + k);
        while (added <= hi) {
            while (!dq.empty() &&
                   (want_max ? line[added] >= line[dq.back()] : line[added] <= line[dq.back()]))
                dq.pop_back();
            dq.push_back(added++);
        }
        while (dq.front() < i - k) dq.pop_front();
        out[i] = line[dq.front()];
    }
    line.swap(out);
}

// apply the 1-D filter along one axis of the row-major array
void axis_filter(const Grid& g, std::vector<double>& data, int axis, int k, bool want_max) {
    int n = g.dim();
    int len = g.extents[axis];
    std::vector<std::size_t> stride(n);
    stride[n - 1] = 1;
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * g.extents[i + 1];

    std::size_t lines = g.node_count() / len;
    std::vector<double> line(len);
    for (std::size_t li = 0; li < lines; ++li) {
        // decode line index into a base node with idx[axis] = 0
        std::size_t rem = li, base = 0;
        for (int i = n - 1; i >= 0; --i) {
            if (i == axis) continue;
            std::size_t d = rem % g.extents[i];
            rem /= g.extents[i];
            base += d * stride[i];
        }
        for (int j = 0; j < len; ++j) line[j] = data[base + j * stride[axis]];
        sliding_extreme(line, k, want_max);
        for (int j = 0; j < len; ++j) data[base + j * stride[axis]] = line[j];
    }
}

}  // namespace

ScalarField hl_maximal(const ScalarField& g) {
    const Grid& grid = g.grid;
    ScalarField absg = g.map([](double v) { return std::abs(v); });
    PrefixSums ps(absg);
    auto ladder = radius_ladder(grid);

    std::vector<double> result(grid.node_count(), 0.0);
    std::vector<double> level(grid.node_count());
    for (double r : ladder) {
        int k = (int)std::floor(r / grid.spacing + 1e-9);
        for (std::size_t c = 0; c < grid.node_count(); ++c)
            level[c] = ps.average(Cube(grid.node(c), r));
        for (int axis = 0; axis < grid.dim(); ++axis) axis_filter(grid, level, axis, k, true);
        for (std::size_t i = 0; i < result.size(); ++i) result[i] = std::max(result[i], level[i]);
    }
    return ScalarField(grid, std::move(result));
}

A1Report a1_norm(const WeightField& w) {
    const Grid& grid = w.grid();
    PrefixSums ps(w.field);
    auto ladder = radius_ladder(grid);

    A1Report rep;
    rep.norm_estimate = 1.0;
    rep.worst_cube = Cube(grid.node(0), ladder.front());
    rep.cube_count = ladder.size() * grid.node_count();

    std::vector<double> mins(grid.node_count());
    for (double r : ladder) {
        int k = (int)std::floor(r / grid.spacing + 1e-9);
        mins = w.field.values;
        for (int axis = 0; axis < grid.dim(); ++axis) axis_filter(grid, mins, axis, k, false);
        for (std::size_t c = 0; c < grid.node_count(); ++c) {
            double avg = ps.average(Cube(grid.node(c), r));
            double ratio;
            if (mins[c] <= 0.0) {
                if (avg <= 0.0) continue;  // cube of zeros contributes nothing
                ratio = kInf;
            } else {
                ratio = avg / mins[c];
            }
            if (ratio > rep.norm_estimate) {
                rep.norm_estimate = ratio;
                rep.worst_cube = Cube(grid.node(c), r);
            }
        }
    }
    rep.finite_at_resolution = std::isfinite(rep.norm_estimate);
    return rep;
}

bool monotone_cube_bound_check(const WeightField& w, const Cube& Q, const Cube& K, double a1) {
    if (!K.contains_cube(Q)) throw std::invalid_argument("Q must be contained in K");
    if (a1 < 0.0) a1 = a1_norm(w).norm_estimate;
    if (!std::isfinite(a1)) return true;
    double avg_k = cube_average(w.field, K);
    double avg_q = cube_average(w.field, Q);
    return avg_k <= a1 * avg_q + 1e-12 * (1.0 + std::abs(avg_k));
}

WeightField coifman_rochberg(const ScalarField& g, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
    ScalarField m = hl_maximal(g);
    return WeightField(m).pow(theta);
}

}  // namespace sptk
