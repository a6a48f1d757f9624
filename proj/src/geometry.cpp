#include "sptk/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sptk {

Cube::Cube(Vec c, double r) : center(std::move(c)), half_side(r) {
    if (!(half_side > 0.0)) throw std::invalid_argument("cube half_side must be positive");
}

bool Cube::contains(const Vec& x, double tol) const {
    if (x.size() != center.size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i] - center[i]) > half_side + tol) return false;
    return true;
}

bool Cube::intersects(const Cube& o, double tol) const {
    for (std::size_t i = 0; i < center.size(); ++i)
        if (std::abs(center[i] - o.center[i]) > half_side + o.half_side + tol) return false;
    return true;
}

bool Cube::contains_cube(const Cube& o, double tol) const {
    for (std::size_t i = 0; i < center.size(); ++i)
        if (std::abs(center[i] - o.center[i]) + o.half_side > half_side + tol) return false;
    return true;
}

double Cube::dist_point(const Vec& x) const {
    double d = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i)
        d = std::max(d, std::abs(x[i] - center[i]) - half_side);
    return std::max(0.0, d);
}

PointSet::PointSet(std::vector<Vec> pts) : points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("empty set");
    for (const auto& p : points)
        if (p.size() != points[0].size()) throw std::invalid_argument("dimension mismatch");
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("points must be distinct");
}

Cube PointSet::bounding_cube(double factor) const {
    int n = dim();
    Vec lo = points[0], hi = points[0];
    for (const auto& p : points)
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    Vec c(n);
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        c[i] = 0.5 * (lo[i] + hi[i]);
        r = std::max(r, 0.5 * (hi[i] - lo[i]));
    }
    if (r == 0.0) r = 1.0;  // singleton E
    return Cube(c, r * factor);
}

namespace {

DistResult pick_nearest(const PointSet& E, const std::function<double(const Vec&)>& dist_fn) {
    if (E.points.empty()) throw std::invalid_argument("empty set");
    double best = kInf;
    const Vec* arg = nullptr;
    for (const auto& e : E.points) {
        double d = dist_fn(e);
        if (!arg || d < best) {
            best = d;
            arg = &e;
        } else if (std::abs(d - best) <= kGeomTol && lex_less(e, *arg)) {
            arg = &e;
        }
    }
    return {best, *arg};
}

}  // namespace

DistResult dist_point_set(const Vec& x, const PointSet& E) {
    return pick_nearest(E, [&x](const Vec& e) { return dist_inf(x, e); });
}

DistResult dist_cube_set(const Cube& Q, const PointSet& E) {
    return pick_nearest(E, [&Q](const Vec& e) { return Q.dist_point(e); });
}

Grid::Grid(Vec org, double sp, std::vector<int> ext)
    : origin(std::move(org)), spacing(sp), extents(std::move(ext)) {
    if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
    if (origin.size() != extents.size()) throw std::invalid_argument("dimension mismatch");
    for (int e : extents)
        if (e <= 0) throw std::invalid_argument("grid extents must be positive");
}

Grid Grid::cover(const Cube& box, int nodes_per_axis) {
    int n = box.dim();
    double s = box.diam() / nodes_per_axis;
    Vec org(n);
    for (int i = 0; i < n; ++i) org[i] = box.center[i] - box.half_side + 0.5 * s;
    return Grid(org, s, std::vector<int>(n, nodes_per_axis));
}

std::size_t Grid::node_count() const {
    std::size_t c = 1;
    for (int e : extents) c *= (std::size_t)e;
    return c;
}

std::vector<int> Grid::node_multi(std::size_t linear) const {
    std::vector<int> idx(extents.size());
    for (int i = (int)extents.size() - 1; i >= 0; --i) {
        idx[i] = (int)(linear % extents[i]);
        linear /= extents[i];
    }
    return idx;
}

std::size_t Grid::linear(const std::vector<int>& idx) const {
    std::size_t l = 0;
    for (std::size_t i = 0; i < extents.size(); ++i) l = l * extents[i] + idx[i];
    return l;
}

Vec Grid::node(std::size_t lin) const {
    auto idx = node_multi(lin);
    Vec p(extents.size());
    for (std::size_t i = 0; i < extents.size(); ++i) p[i] = origin[i] + spacing * idx[i];
    return p;
}

std::size_t Grid::nearest_node(const Vec& x) const {
    std::vector<int> idx(extents.size());
    for (std::size_t i = 0; i < extents.size(); ++i) {
        int k = (int)std::lround((x[i] - origin[i]) / spacing);
        idx[i] = std::clamp(k, 0, extents[i] - 1);
    }
    return linear(idx);
}

Cube Grid::box() const {
    int n = dim();
    for (int i = 1; i < n; ++i)
        if (extents[i] != extents[0])
            throw std::logic_error("box() requires a square grid");
    Vec c(n);
    for (int i = 0; i < n; ++i) c[i] = origin[i] + 0.5 * spacing * (extents[i] - 1);
    return Cube(c, 0.5 * spacing * extents[0]);
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> Grid::index_range(
    const Cube& Q) const {
    int n = dim();
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        double a = (Q.center[i] - Q.half_side - origin[i]) / spacing;
        double b = (Q.center[i] + Q.half_side - origin[i]) / spacing;
        lo[i] = std::max(0, (int)std::ceil(a - 1e-9));
        hi[i] = std::min(extents[i] - 1, (int)std::floor(b + 1e-9));
        if (lo[i] > hi[i]) return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

namespace {

bool whitney_predicate(const Cube& Q, const PointSet& E) {
    double d = dist_cube_set(Q, E).dist;
    return Q.diam() <= d + kGeomTol && d <= 4.0 * Q.diam() + kGeomTol;
}

void whitney_rec(const Cube& Q, const PointSet& E, int depth, int max_depth,
                 WhitneyDecomposition& out) {
    double d = dist_cube_set(Q, E).dist;
    if (Q.diam() <= d + kGeomTol) {
        out.cubes.push_back(Q);
        return;
    }
    if (depth >= max_depth) {
        out.collar.push_back(Q);
        return;
    }
    int n = Q.dim();
    double r = 0.5 * Q.half_side;
    // fixed child ordering: binary corner index, axis 0 most significant
    for (int corner = 0; corner < (1 << n); ++corner) {
        Vec c(Q.center);
        for (int i = 0; i < n; ++i)
            c[i] += ((corner >> (n - 1 - i)) & 1) ? r : -r;
        whitney_rec(Cube(c, r), E, depth + 1, max_depth, out);
    }
}

}  // namespace

WhitneyDecomposition whitney_decompose(const PointSet& E, const Cube& box, int max_depth) {
    WhitneyDecomposition W;
    W.source_set = E;
    W.truncation_box = box;
    W.max_depth = max_depth;
    if (whitney_predicate(box, E)) {
        W.cubes.push_back(box);  // box itself is a valid Whitney cube
        return W;
    }
    for (const auto& e : E.points)
        if (!box.contains(e)) throw std::invalid_argument("E not inside box");
    whitney_rec(box, E, 0, max_depth, W);
    return W;
}

std::vector<std::size_t> touching_family(std::size_t k_index, const WhitneyDecomposition& W) {
    if (k_index >= W.cubes.size()) throw std::invalid_argument("cube not in decomposition");
    const Cube& K = W.cubes[k_index];
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < W.cubes.size(); ++i)
        if (W.cubes[i].intersects(K)) out.push_back(i);
    return out;
}

Vec nearest_anchor(const Cube& Q, const PointSet& E) {
    auto res = dist_cube_set(Q, E);
    if (Q.dilate(9.0).dist_point(res.attained) > kGeomTol)
        throw std::logic_error("anchor outside 9Q: cube does not satisfy the Whitney bounds");
    return res.attained;
}

int covering_multiplicity(const std::vector<Cube>& cubes) {
    if (cubes.empty()) return 0;
    int n = cubes[0].dim();
    std::vector<std::vector<double>> coords(n);
    for (const auto& q : cubes)
        for (int i = 0; i < n; ++i) {
            coords[i].push_back(q.center[i] - q.half_side);
            coords[i].push_back(q.center[i] + q.half_side);
            coords[i].push_back(q.center[i]);
        }
    for (auto& c : coords) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    // all arrangement vertices (product over axes)
    int best = 0;
    std::vector<std::size_t> it(n, 0);
    while (true) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = coords[i][it[i]];
        int m = 0;
        for (const auto& q : cubes)
            if (q.contains(x)) ++m;
        best = std::max(best, m);
        int axis = n - 1;
        while (axis >= 0) {
            if (++it[axis] < coords[axis].size()) break;
            it[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return best;
}

namespace {

// exact k-colorability by backtracking (small instances only)
bool color_backtrack(const std::vector<std::vector<int>>& adj, int k,
                     std::vector<int>& color, std::size_t v, long& budget) {
    if (v == adj.size()) return true;
    if (--budget < 0) return false;
    int used_max = 0;
    for (std::size_t u = 0; u < v; ++u) used_max = std::max(used_max, color[u] + 1);
    for (int c = 0; c < std::min(k, used_max + 1); ++c) {
        bool ok = true;
        for (int u : adj[v])
            if ((std::size_t)u < v && color[u] == c) {
                ok = false;
                break;
            }
        if (!ok) continue;
        color[v] = c;
        if (color_backtrack(adj, k, color, v + 1, budget)) return true;
        color[v] = -1;
    }
    return false;
}

std::vector<int> greedy_color(const std::vector<std::vector<int>>& adj,
                              const std::vector<int>& order) {
    std::vector<int> color(adj.size(), -1);
    for (int v : order) {
        std::set<int> used;
        for (int u : adj[v])
            if (color[u] >= 0) used.insert(color[u]);
        int c = 0;
        while (used.count(c)) ++c;
        color[v] = c;
    }
    return color;
}

std::vector<int> dsatur_color(const std::vector<std::vector<int>>& adj) {
    std::size_t n = adj.size();
    std::vector<int> color(n, -1);
    std::vector<std::set<int>> sat(n);
    for (std::size_t step = 0; step < n; ++step) {
        int best = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            if (best < 0 || sat[v].size() > sat[best].size() ||
                (sat[v].size() == sat[best].size() && adj[v].size() > adj[best].size()))
                best = (int)v;
        }
        int c = 0;
        while (sat[best].count(c)) ++c;
        color[best] = c;
        for (int u : adj[best]) sat[u].insert(c);
    }
    return color;
}

}  // namespace

std::vector<std::vector<std::size_t>> partition_disjoint(const std::vector<Cube>& cubes) {
    if (cubes.empty()) return {};
    std::size_t n = cubes.size();
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cubes[i].intersects(cubes[j])) {
                adj[i].push_back((int)j);
                adj[j].push_back((int)i);
            }

    int dim = cubes[0].dim();
    int M = covering_multiplicity(cubes);
    int target = (1 << std::max(0, dim - 1)) * (M - 1) + 1;

    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (cubes[a].half_side != cubes[b].half_side)
            return cubes[a].half_side > cubes[b].half_side;
        return lex_less(cubes[a].center, cubes[b].center);
    });

    std::vector<int> color = greedy_color(adj, order);
    int used = *std::max_element(color.begin(), color.end()) + 1;
    if (used > target) {
        auto alt = dsatur_color(adj);
        int alt_used = *std::max_element(alt.begin(), alt.end()) + 1;
        if (alt_used < used) {
            color = alt;
            used = alt_used;
        }
    }
    if (used > target && n <= 64) {
        std::vector<int> exact(n, -1);
        long budget = 4000000;
        if (color_backtrack(adj, target, exact, 0, budget)) {
            color = exact;
            used = target;
        }
    }

    std::vector<std::vector<std::size_t>> families(used);
    for (std::size_t i = 0; i < n; ++i) families[color[i]].push_back(i);
    return families;
}

}  // namespace sptk
