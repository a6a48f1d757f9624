#include "sptk/field.hpp"

#include <algorithm>

namespace sptk {

ScalarField::ScalarField(Grid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.empty()) values.assign(grid.node_count(), 0.0);
    if (values.size() != grid.node_count())
        throw std::invalid_argument("value count must equal node count");
    for (double x : values)
        if (!std::isfinite(x)) throw std::invalid_argument("field values must be finite");
}

ScalarField ScalarField::map(const std::function<double(double)>& f) const {
    std::vector<double> v(values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(values[i]);
    return ScalarField(grid, std::move(v));
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

WeightField::WeightField(ScalarField f) : field(std::move(f)) {
    bool nonzero = false;
    for (double v : field.values) {
        if (v < 0.0) throw std::invalid_argument("weight values must be nonnegative");
        if (v > 0.0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("weight must not be identically zero");
}

WeightField WeightField::pow(double a) const {
    return WeightField(field.map([a](double v) { return v == 0.0 ? 0.0 : std::pow(v, a); }));
}

PrefixSums::PrefixSums(const ScalarField& f) : grid_(f.grid) {
    int n = grid_.dim();
    ext1_.resize(n);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        ext1_[i] = grid_.extents[i] + 1;
        total *= (std::size_t)ext1_[i];
    }
    table_.assign(total, 0.0);
    // table[i+1...] = sum over nodes with index < i+1 per axis
    std::vector<int> idx(n, 0);
    for (std::size_t lin = 0; lin < grid_.node_count(); ++lin) {
        auto mi = grid_.node_multi(lin);
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = mi[i] + 1;
        table_[lin1(p)] = f.values[lin];
    }
    // prefix along each axis in turn
    for (int axis = 0; axis < n; ++axis) {
        std::vector<int> it(n, 0);
        // iterate all positions; add predecessor along axis
        std::size_t total_pos = total;
        for (std::size_t l = 0; l < total_pos; ++l) {
            std::size_t rem = l;
            for (int i = n - 1; i >= 0; --i) {
                it[i] = (int)(rem % ext1_[i]);
                rem /= ext1_[i];
            }
            if (it[axis] == 0) continue;
            std::vector<int> prev = it;
            prev[axis] -= 1;
            table_[lin1(it)] += table_[lin1(prev)];
        }
    }
}

std::size_t PrefixSums::lin1(const std::vector<int>& idx) const {
    std::size_t l = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) l = l * ext1_[i] + idx[i];
    return l;
}

double PrefixSums::sum_range(const std::vector<int>& lo, const std::vector<int>& hi) const {
    int n = grid_.dim();
    // inclusion-exclusion over the 2^n corners of [lo, hi]
    double s = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> corner(n);
        int sign = 1;
        for (int i = 0; i < n; ++i) {
            if (mask & (1 << i)) {
                corner[i] = hi[i] + 1;
            } else {
                corner[i] = lo[i];
                sign = -sign;
            }
        }
        s += sign * table_[lin1(corner)];
    }
    return s;
}

double PrefixSums::sum(const Cube& Q) const {
    auto rng = grid_.index_range(Q);
    if (!rng) return 0.0;
    return sum_range(rng->first, rng->second);
}

long long PrefixSums::count(const Cube& Q) const {
    auto rng = grid_.index_range(Q);
    if (!rng) return 0;
    long long c = 1;
    for (std::size_t i = 0; i < rng->first.size(); ++i)
        c *= (long long)(rng->second[i] - rng->first[i] + 1);
    return c;
}

std::optional<double> PrefixSums::try_average(const Cube& Q) const {
    auto rng = grid_.index_range(Q);
    if (!rng) return std::nullopt;
    long long c = 1;
    for (std::size_t i = 0; i < rng->first.size(); ++i)
        c *= (long long)(rng->second[i] - rng->first[i] + 1);
    return sum_range(rng->first, rng->second) / (double)c;
}

double PrefixSums::average(const Cube& Q) const {
    auto a = try_average(Q);
    if (!a) throw std::invalid_argument("empty cube sample");
    return *a;
}

double cube_average(const ScalarField& f, const Cube& Q) {
    auto rng = f.grid.index_range(Q);
    if (!rng) throw std::invalid_argument("empty cube sample");
    const auto& lo = rng->first;
    const auto& hi = rng->second;
    int n = f.grid.dim();
    std::vector<int> it = lo;
    double s = 0.0;
    long long c = 0;
    while (true) {
        s += f.values[f.grid.linear(it)];
        ++c;
        int axis = n - 1;
        while (axis >= 0) {
            if (++it[axis] <= hi[axis]) break;
            it[axis] = lo[axis];
            --axis;
        }
        if (axis < 0) break;
    }
    return s / (double)c;
}

std::vector<double> radius_ladder(const Grid& grid) {
    double s = grid.spacing;
    int max_extent = *std::max_element(grid.extents.begin(), grid.extents.end());
    double cap = s * max_extent;  // covers the box from any interior center
    std::vector<double> out{0.5 * s};
    for (double base : {1.0, 3.0}) {
        double r = base * s;
        while (r < 2.0 * cap) {
            out.push_back(r);
            r *= 2.0;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // drop radii beyond the first that covers the box
    std::size_t keep = out.size();
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] >= cap) {
            keep = i + 1;
            break;
        }
    out.resize(keep);
    return out;
}

double ladder_round_up(const std::vector<double>& ladder, double r) {
    for (double v : ladder)
        if (v >= r - kGeomTol) return v;
    return ladder.back();
}

}  // namespace sptk
