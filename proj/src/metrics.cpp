#include "sptk/metrics.hpp"

#include <queue>

namespace sptk {

QuasiMetricSpec::QuasiMetricSpec(WeightField h, double q)
    : h_(std::move(h)), q_(q), wq_(h_.pow(q).field), ps_(wq_) {
    if (q_ < h_.grid().dim())
        throw std::invalid_argument("q must be at least the dimension n");
}

DeltaResult QuasiMetricSpec::delta_full(const Vec& x, const Vec& y) const {
    double r = dist_inf(x, y);
    if (r == 0.0) return {0.0, false};
    Cube qxy(x, r);
    const Cube box = grid().box();
    bool trunc = !box.contains_cube(qxy);
    auto avg = ps_.try_average(qxy);
    if (!avg) throw std::invalid_argument("Q_xy misses the grid");
    return {r * std::pow(*avg, 1.0 / q_), trunc};
}

double QuasiMetricSpec::delta_sym(const Vec& x, const Vec& y) const {
    return std::max(delta(x, y), delta(y, x));
}

double QuasiMetricSpec::delta_nodes(std::size_t i, std::size_t j) const {
    return delta(grid().node(i), grid().node(j));
}

double QuasiMetricSpec::delta_sym_nodes(std::size_t i, std::size_t j) const {
    return delta_sym(grid().node(i), grid().node(j));
}

SupForm::SupForm(WeightField w, double q)
    : w_(std::move(w)), q_(q), ps_(w_.field), ladder_(radius_ladder(w_.grid())) {
    if (!(q_ > 0.0)) throw std::invalid_argument("q must be positive");
}

double SupForm::phi(const Vec& x, const Vec& y) const {
    double dxy = dist_inf(x, y);
    if (dxy == 0.0) return 0.0;
    const Grid& g = grid();
    int n = g.dim();
    double sup_avg = 0.0;
    for (double r : ladder_) {
        // centers c with |c - x| <= r and |c - y| <= r per axis
        std::vector<int> lo(n), hi(n);
        bool empty = false;
        for (int i = 0; i < n; ++i) {
            double a = (std::max(x[i], y[i]) - r - g.origin[i]) / g.spacing;
            double b = (std::min(x[i], y[i]) + r - g.origin[i]) / g.spacing;
            lo[i] = std::max(0, (int)std::ceil(a - 1e-9));
            hi[i] = std::min(g.extents[i] - 1, (int)std::floor(b + 1e-9));
            if (lo[i] > hi[i]) {
                empty = true;
                break;
            }
        }
        if (empty) continue;
        std::vector<int> it = lo;
        while (true) {
            Vec c(n);
            for (int i = 0; i < n; ++i) c[i] = g.origin[i] + g.spacing * it[i];
            auto avg = ps_.try_average(Cube(c, r));
            if (avg && *avg > sup_avg) sup_avg = *avg;
            int axis = n - 1;
            while (axis >= 0) {
                if (++it[axis] <= hi[axis]) break;
                it[axis] = lo[axis];
                --axis;
            }
            if (axis < 0) break;
        }
    }
    // the two query cubes, present so that phi dominates delta exactly
    for (const Vec* c : {&x, &y}) {
        auto avg = ps_.try_average(Cube(*c, dxy));
        if (avg && *avg > sup_avg) sup_avg = *avg;
    }
    return dxy * std::pow(sup_avg, 1.0 / q_);
}

double phi_q(const WeightField& w, double q, const Vec& x, const Vec& y) {
    return SupForm(w, q).phi(x, y);
}

ChainCheck chain_inequality_check(const SupForm& sf, const std::vector<Vec>& chain) {
    if (chain.size() < 2) throw std::invalid_argument("chain needs at least two points");
    ChainCheck res;
    res.lhs = sf.phi(chain.front(), chain.back());
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        res.rhs_sum += sf.phi(chain[i], chain[i + 1]);
    res.ok = res.lhs <= 16.0 * res.rhs_sum + 1e-12 * (1.0 + res.lhs);
    return res;
}

ChainCheck chain_inequality_check(const WeightField& w, double q, const std::vector<Vec>& chain) {
    SupForm sf(w, q);
    return chain_inequality_check(sf, chain);
}

GeodesicMetric::GeodesicMetric(const QuasiMetricSpec& spec, int hop_radius)
    : spec_(spec), hop_radius_(hop_radius) {
    if (hop_radius_ < 1) throw std::invalid_argument("hop radius must be >= 1");
    const Grid& g = spec.grid();
    int n = g.dim();
    std::vector<std::vector<int>> offsets;
    std::vector<int> off(n, -hop_radius_);
    while (true) {
        bool zero = true;
        for (int v : off)
            if (v != 0) zero = false;
        if (!zero) offsets.push_back(off);
        int axis = n - 1;
        while (axis >= 0) {
            if (++off[axis] <= hop_radius_) break;
            off[axis] = -hop_radius_;
            --axis;
        }
        if (axis < 0) break;
    }

    std::size_t N = g.node_count();
    std::vector<Vec> pts(N);
    for (std::size_t i = 0; i < N; ++i) pts[i] = g.node(i);
    row_.assign(N + 1, 0);
    std::vector<int> mv(n);
    for (std::size_t u = 0; u < N; ++u) {
        auto mu = g.node_multi(u);
        for (const auto& o : offsets) {
            bool inside = true;
            for (int i = 0; i < n; ++i) {
                mv[i] = mu[i] + o[i];
                if (mv[i] < 0 || mv[i] >= g.extents[i]) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            std::size_t v = g.linear(mv);
            col_.push_back(v);
            wgt_.push_back(std::max(spec_.delta(pts[u], pts[v]), spec_.delta(pts[v], pts[u])));
        }
        row_[u + 1] = col_.size();
    }
}

std::vector<double> GeodesicMetric::distances_from(std::size_t source) const {
    std::size_t N = row_.size() - 1;
    std::vector<double> dist(N, kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) continue;
        for (std::size_t e = row_[u]; e < row_[u + 1]; ++e) {
            std::size_t v = col_[e];
            double cand = du + wgt_[e];
            if (cand < dist[v]) {
                dist[v] = cand;
                heap.push({cand, v});
            }
        }
    }
    return dist;
}

double GeodesicMetric::distance(std::size_t a, std::size_t b) const {
    auto d = distances_from(a);
    if (!std::isfinite(d[b])) throw std::runtime_error("geodesic graph is disconnected");
    return d[b];
}

double GeodesicMetric::distance(const Vec& x, const Vec& y) const {
    const Grid& g = spec_.grid();
    return distance(g.nearest_node(x), g.nearest_node(y));
}

double geodesic_dq(const QuasiMetricSpec& spec, const Vec& x, const Vec& y, int hop_radius) {
    return GeodesicMetric(spec, hop_radius).distance(x, y);
}

std::pair<double, double> exponent_comparison(const WeightField& h, double q, double s,
                                              const Vec& x, const Vec& y) {
    if (s > q) throw std::invalid_argument("s must not exceed q");
    if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
    double r = dist_inf(x, y);
    if (r == 0.0) return {0.0, 0.0};
    Cube qxy(x, r);
    double avg_s = cube_average(h.pow(s).field, qxy);
    double avg_q = cube_average(h.pow(q).field, qxy);
    return {r * std::pow(avg_s, 1.0 / s), r * std::pow(avg_q, 1.0 / q)};
}

double inf_cube_distance(const WeightField& h, double q, double s, const Vec& x, const Vec& y) {
    if (!(s >= h.grid().dim() && s <= q))
        throw std::invalid_argument("need n <= s <= q");
    const Grid& g = h.grid();
    int n = g.dim();
    PrefixSums ps(h.pow(s).field);
    auto ladder = radius_ladder(g);
    double best = kInf;
    double dxy = dist_inf(x, y);
    for (double r : ladder) {
        std::vector<int> lo(n), hi(n);
        bool empty = false;
        for (int i = 0; i < n; ++i) {
            double a = (std::max(x[i], y[i]) - r - g.origin[i]) / g.spacing;
            double b = (std::min(x[i], y[i]) + r - g.origin[i]) / g.spacing;
            lo[i] = std::max(0, (int)std::ceil(a - 1e-9));
            hi[i] = std::min(g.extents[i] - 1, (int)std::floor(b + 1e-9));
            if (lo[i] > hi[i]) {
                empty = true;
                break;
            }
        }
        if (empty) continue;
        std::vector<int> it = lo;
        while (true) {
            Vec c(n);
            for (int i = 0; i < n; ++i) c[i] = g.origin[i] + g.spacing * it[i];
            auto avg = ps.try_average(Cube(c, r));
            if (avg) best = std::min(best, 2.0 * r * std::pow(*avg, 1.0 / s));
            int axis = n - 1;
            while (axis >= 0) {
                if (++it[axis] <= hi[axis]) break;
                it[axis] = lo[axis];
                --axis;
            }
            if (axis < 0) break;
        }
    }
    if (dxy > 0.0) {
        for (const Vec* c : {&x, &y}) {
            auto avg = ps.try_average(Cube(*c, dxy));
            if (avg) best = std::min(best, 2.0 * dxy * std::pow(*avg, 1.0 / s));
        }
    }
    return best;
}

ConcaveProfile metric_profile(const QuasiMetricSpec& spec, const Vec& x, double eta) {
    const Grid& g = spec.grid();
    ConcaveProfile prof;
    prof.anchor = x;
    if (eta < 0.0) eta = a1_norm(spec.weight().pow(spec.q())).norm_estimate;
    prof.eta = eta;
    const Cube box = g.box();
    for (double r : radius_ladder(g)) {
        Cube qr(x, r);
        auto avg = spec.power_sums().try_average(qr);
        if (!avg) continue;
        prof.t.push_back(r);
        prof.v.push_back(r * std::pow(*avg, 1.0 / spec.q()));
        prof.truncatedtag.push_back(!box.contains_cube(qr));
    }
    prof.monotone = true;
    for (std::size_t i = 0; i + 1 < prof.v.size(); ++i)
        if (prof.v[i + 1] < prof.v[i] - 1e-12 * (1.0 + prof.v[i])) prof.monotone = false;
    prof.doubling_checked = std::isfinite(eta);
    if (prof.doubling_checked) {
        prof.doubling_ok = true;
        for (std::size_t i = 0; i < prof.t.size(); ++i)
            for (std::size_t j = i + 1; j < prof.t.size(); ++j) {
                double lhs = prof.v[j] / prof.t[j];
                double rhs = eta * prof.v[i] / prof.t[i];
                if (lhs > rhs + 1e-12 * (1.0 + lhs)) prof.doubling_ok = false;
            }
    }
    // least concave majorant: upper hull of {(0,0)} plus the knots
    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    for (std::size_t i = 0; i < prof.t.size(); ++i) pts.push_back({prof.t[i], prof.v[i]});
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            double cross = (b.first - a.first) * (p.second - a.second) -
                           (b.second - a.second) * (p.first - a.first);
            if (cross >= 0.0)
                hull.pop_back();  // b below chord a-p: not a hull vertex
            else
                break;
        }
        hull.push_back(p);
    }
    auto hull_at = [&hull](double t) {
        if (t <= hull.front().first) return hull.front().second;
        for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
            if (t <= hull[i + 1].first + 1e-15) {
                double t0 = hull[i].first, t1 = hull[i + 1].first;
                double v0 = hull[i].second, v1 = hull[i + 1].second;
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
            }
        }
        return hull.back().second;
    };
    for (double tk : prof.t) prof.omega.push_back(hull_at(tk));
    return prof;
}

double pseudoconvexity_check(const DistanceOracle& d, const Grid& grid, const Vec& x,
                             const Vec& y, const Vec& z) {
    Vec zs = grid.node(grid.nearest_node(z));
    double dxy = d(x, y);
    if (dxy == 0.0) {
        if (dist_inf(x, y) > 0.0) throw std::runtime_error("degenerate metric");
        return 0.0;
    }
    return (d(x, zs) + d(zs, y)) / dxy;
}

}  // namespace sptk
