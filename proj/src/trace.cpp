#include "sptk/trace.hpp"

#include <algorithm>
#include <numeric>

namespace sptk {

double sharp_max_function(const std::vector<double>& f, const PointSet& E, const Vec& x) {
    if (f.size() != E.points.size()) throw std::invalid_argument("one value per point required");
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            double num = std::abs(f[i] - f[j]);
            if (num == 0.0) continue;
            double den = dist_inf(x, E.points[i]) + dist_inf(x, E.points[j]);
            best = std::max(best, num / den);
        }
    return best;
}

namespace {

// bound on the integral of (num / (2 dist(x,E)^pow))^p outside the box
double sharp_tail_bound(double num, int pow_exp, double p, const PointSet& E, const Cube& box) {
    if (num == 0.0) return 0.0;
    int n = box.dim();
    Cube hull = E.bounding_cube(1.0);
    // largest cube around the hull center inside the box
    double rho = kInf;
    for (int i = 0; i < n; ++i)
        rho = std::min(rho, box.half_side - std::abs(hull.center[i] - box.center[i]));
    double D = hull.half_side;
    if (!(rho > D)) return kInf;
    double expo = pow_exp * p;  // decay exponent of the integrand
    if (!(expo > n)) return kInf;
    double lead = std::pow(num / 2.0, p) * n * std::pow(2.0, n);
    double shape = std::pow(rho / (rho - D), n - 1);
    return lead * shape * std::pow(rho - D, n - expo) / (expo - n);
}

double lp_of_field(const ScalarField& f, double p) {
    double s = 0.0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * std::pow(f.grid.spacing, f.grid.dim()), 1.0 / p);
}

}  // namespace

TraceReport trace_norm_L1p(const std::vector<double>& f, const PointSet& E, double p,
                           const Grid& grid) {
    int n = grid.dim();
    if (!(p > n)) throw std::invalid_argument("p must exceed the dimension n");
    TraceReport rep;
    rep.p = p;
    rep.truncation_box = grid.box();
    rep.sharp_field = ScalarField::sample(
        grid, [&](const Vec& x) { return sharp_max_function(f, E, x); });
    rep.functional_value = lp_of_field(rep.sharp_field, p);
    double osc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) osc = std::max(osc, std::abs(f[i] - f[j]));
    rep.tail_bound = sharp_tail_bound(osc, 1, p, E, rep.truncation_box);
    return rep;
}

namespace {

struct JetPairData {
    // numerators per beta and ordered pair (y,z)
    std::vector<MultiIndex> betas;
    std::vector<std::vector<double>> num;  // [beta][pair]
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

JetPairData jet_pair_numerators(const JetField& J) {
    JetPairData d;
    int n = J.E.dim();
    d.betas = multi_indices_up_to(n, J.m - 1);
    for (std::size_t y = 0; y < J.E.points.size(); ++y)
        for (std::size_t z = 0; z < J.E.points.size(); ++z)
            if (y != z) d.pairs.push_back({y, z});
    d.num.resize(d.betas.size(), std::vector<double>(d.pairs.size()));
    for (std::size_t b = 0; b < d.betas.size(); ++b)
        for (std::size_t k = 0; k < d.pairs.size(); ++k) {
            auto [y, z] = d.pairs[k];
            const Vec& py = J.E.points[y];
            d.num[b][k] = std::abs(J.polys[y].eval_derivative(d.betas[b], py) -
                                   J.polys[z].eval_derivative(d.betas[b], py));
        }
    return d;
}

double jet_sharp_from_data(const JetPairData& d, const JetField& J, const Vec& x) {
    double total = 0.0;
    for (std::size_t b = 0; b < d.betas.size(); ++b) {
        int pw = J.m - mi_order(d.betas[b]);
        double best = 0.0;
        for (std::size_t k = 0; k < d.pairs.size(); ++k) {
            double num = d.num[b][k];
            if (num == 0.0) continue;
            auto [y, z] = d.pairs[k];
            double den = std::pow(dist_inf(x, J.E.points[y]), pw) +
                         std::pow(dist_inf(x, J.E.points[z]), pw);
            if (den > 0.0) best = std::max(best, num / den);
        }
        total += best;
    }
    return total;
}

}  // namespace

double jet_sharp_max(const JetField& J, const Vec& x) {
    auto d = jet_pair_numerators(J);
    return jet_sharp_from_data(d, J, x);
}

TraceReport jet_trace_norm(const JetField& J, double p, const Grid& grid) {
    int n = grid.dim();
    if (!(p > n)) throw std::invalid_argument("p must exceed the dimension n");
    auto data = jet_pair_numerators(J);
    TraceReport rep;
    rep.p = p;
    rep.truncation_box = grid.box();

    std::vector<double> sharp(grid.node_count(), 0.0);
    double sum_norms = 0.0;
    double tail = 0.0;
    for (std::size_t b = 0; b < data.betas.size(); ++b) {
        int pw = J.m - mi_order(data.betas[b]);
        std::vector<double> g(grid.node_count());
        double max_num = 0.0;
        for (double v : data.num[b]) max_num = std::max(max_num, v);
        for (std::size_t node = 0; node < g.size(); ++node) {
            Vec x = grid.node(node);
            double best = 0.0;
            for (std::size_t k = 0; k < data.pairs.size(); ++k) {
                double num = data.num[b][k];
                if (num == 0.0) continue;
                auto [y, z] = data.pairs[k];
                double den = std::pow(dist_inf(x, J.E.points[y]), pw) +
                             std::pow(dist_inf(x, J.E.points[z]), pw);
                if (den > 0.0) best = std::max(best, num / den);
            }
            g[node] = best;
            sharp[node] += best;
        }
        sum_norms += lp_of_field(ScalarField(grid, g), p);
        tail += sharp_tail_bound(max_num, pw, p, J.E, rep.truncation_box);
    }
    rep.sharp_field = ScalarField(grid, std::move(sharp));
    rep.functional_value = sum_norms;
    rep.alt_value = lp_of_field(rep.sharp_field, p);
    rep.tail_bound = tail;
    return rep;
}

double variational_sum(const JetField& J, const std::vector<Cube>& cubes,
                       const std::vector<std::pair<Vec, Vec>>& pairs, const MultiIndex& beta,
                       double p) {
    if (cubes.size() != pairs.size()) throw std::invalid_argument("one pair per cube required");
    if (mi_order(beta) > J.m - 1) throw std::invalid_argument("|beta| must be <= m-1");
    int n = J.E.dim();
    for (std::size_t i = 0; i < cubes.size(); ++i)
        for (std::size_t j = i + 1; j < cubes.size(); ++j)
            if (cubes[i].intersects(cubes[j], -kGeomTol))
                throw std::invalid_argument("cubes must be pairwise disjoint");

    auto find_e = [&J](const Vec& x) -> std::size_t {
        for (std::size_t i = 0; i < J.E.points.size(); ++i)
            if (dist_inf(J.E.points[i], x) <= kGeomTol) return i;
        throw std::invalid_argument("pair point not in E");
    };

    double total = 0.0;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        Cube gq = cubes[i].dilate(kVariationalGamma);
        if (!gq.contains(pairs[i].first) || !gq.contains(pairs[i].second))
            throw std::invalid_argument("pair outside gamma Q_i");
        std::size_t xi = find_e(pairs[i].first);
        std::size_t yi = find_e(pairs[i].second);
        const Vec& px = J.E.points[xi];
        double num = std::abs(J.polys[xi].eval_derivative(beta, px) -
                              J.polys[yi].eval_derivative(beta, px));
        double expo = (J.m - mi_order(beta)) * p - n;
        total += std::pow(num, p) / std::pow(cubes[i].diam(), expo);
    }
    return total;
}

double variational_search(const JetField& J, const MultiIndex& beta, double p, const Cube& box,
                          Rng& rng, int trials) {
    int n = box.dim();
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        int k = uniform_int(rng, 1, 6);
        std::vector<Cube> cubes;
        for (int c = 0; c < k; ++c) {
            Vec ctr(n);
            for (int i = 0; i < n; ++i)
                ctr[i] = uniform(rng, box.center[i] - box.half_side, box.center[i] + box.half_side);
            double r = box.half_side * std::pow(2.0, uniform(rng, -9.0, -1.0));
            Cube cand(ctr, r);
            bool ok = true;
            for (const auto& q : cubes)
                if (q.intersects(cand)) {
                    ok = false;
                    break;
                }
            if (ok) cubes.push_back(cand);
        }
        if (cubes.empty()) continue;
        std::vector<std::pair<Vec, Vec>> pairs;
        std::vector<Cube> used;
        for (const auto& q : cubes) {
            Cube gq = q.dilate(kVariationalGamma);
            // best pair of E points inside gamma Q for this cube
            double bestterm = -1.0;
            std::pair<Vec, Vec> bp;
            for (std::size_t a = 0; a < J.E.points.size(); ++a) {
                if (!gq.contains(J.E.points[a])) continue;
                for (std::size_t b = 0; b < J.E.points.size(); ++b) {
                    if (a == b || !gq.contains(J.E.points[b])) continue;
                    double num = std::abs(
                        J.polys[a].eval_derivative(beta, J.E.points[a]) -
                        J.polys[b].eval_derivative(beta, J.E.points[a]));
                    if (num > bestterm) {
                        bestterm = num;
                        bp = {J.E.points[a], J.E.points[b]};
                    }
                }
            }
            if (bestterm >= 0.0) {
                pairs.push_back(bp);
                used.push_back(q);
            }
        }
        if (used.empty()) continue;
        best = std::max(best, variational_sum(J, used, pairs, beta, p));
    }
    return best;
}

double brudnyi_sum(const ScalarField& G, const std::vector<Cube>& cubes,
                   const std::vector<std::pair<Vec, Vec>>& pairs, double p) {
    if (cubes.size() != pairs.size()) throw std::invalid_argument("one pair per cube required");
    if (cubes.empty()) return 0.0;
    int n = G.grid.dim();
    if (!(p > n)) throw std::invalid_argument("p must exceed the dimension n");
    double r0 = cubes[0].half_side;
    for (const auto& q : cubes)
        if (std::abs(q.half_side - r0) > kGeomTol)
            throw std::invalid_argument("criterion requires equal cubes");
    for (std::size_t i = 0; i < cubes.size(); ++i)
        for (std::size_t j = i + 1; j < cubes.size(); ++j)
            if (cubes[i].intersects(cubes[j], -kGeomTol))
                throw std::invalid_argument("cubes must be pairwise disjoint");
    double total = 0.0;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        if (!cubes[i].contains(pairs[i].first) || !cubes[i].contains(pairs[i].second))
            throw std::invalid_argument("pair outside its cube");
        double gx = G.values[G.grid.nearest_node(pairs[i].first)];
        double gy = G.values[G.grid.nearest_node(pairs[i].second)];
        total += std::pow(std::abs(gx - gy), p) / std::pow(cubes[i].diam(), p - n);
    }
    return total;
}

double brudnyi_search(const ScalarField& G, double p, Rng& rng, int trials) {
    const Grid& g = G.grid;
    int n = g.dim();
    Cube box = g.box();
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        double r = box.half_side * std::pow(2.0, uniform(rng, -7.0, -2.0));
        int k = uniform_int(rng, 1, 8);
        std::vector<Cube> cubes;
        for (int c = 0; c < k && (int)cubes.size() < k; ++c) {
            Vec ctr(n);
            for (int i = 0; i < n; ++i)
                ctr[i] = uniform(rng, box.center[i] - box.half_side + r,
                                 box.center[i] + box.half_side - r);
            Cube cand(ctr, r);
            bool ok = true;
            for (const auto& q : cubes)
                if (q.intersects(cand)) {
                    ok = false;
                    break;
                }
            if (ok) cubes.push_back(cand);
        }
        if (cubes.empty()) continue;
        std::vector<std::pair<Vec, Vec>> pairs;
        std::vector<Cube> used;
        for (const auto& q : cubes) {
            auto rng_idx = g.index_range(q);
            if (!rng_idx) continue;
            // extreme values of G inside the cube give the best pair
            double lo = kInf, hi = -kInf;
            Vec alo, ahi;
            std::vector<int> it = rng_idx->first;
            while (true) {
                std::size_t node = g.linear(it);
                double v = G.values[node];
                if (v < lo) {
                    lo = v;
                    alo = g.node(node);
                }
                if (v > hi) {
                    hi = v;
                    ahi = g.node(node);
                }
                int axis = n - 1;
                while (axis >= 0) {
                    if (++it[axis] <= rng_idx->second[axis]) break;
                    it[axis] = rng_idx->first[axis];
                    --axis;
                }
                if (axis < 0) break;
            }
            used.push_back(q);
            pairs.push_back({ahi, alo});
        }
        if (used.empty()) continue;
        best = std::max(best, brudnyi_sum(G, used, pairs, p));
    }
    return best;
}

double divided_difference(const std::vector<double>& f, const std::vector<double>& S) {
    if (f.size() != S.size() || S.empty()) throw std::invalid_argument("bad divided difference input");
    std::size_t n = S.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (S[i] == S[j]) throw std::invalid_argument("duplicate points");
    std::vector<double> d = f;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            d[i] = (d[i + 1] - d[i]) / (S[i + k] - S[i]);
    return d[0];
}

double divided_difference_omega(const std::vector<double>& f, const std::vector<double>& S) {
    if (f.size() != S.size() || S.empty()) throw std::invalid_argument("bad divided difference input");
    double total = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < S.size(); ++j)
            if (j != i) w *= (S[i] - S[j]);
        if (w == 0.0) throw std::invalid_argument("duplicate points");
        total += f[i] / w;
    }
    return total;
}

DividedDifferenceTable::DividedDifferenceTable(std::vector<double> xs, std::vector<double> fs,
                                               int m)
    : xs_(std::move(xs)), fs_(std::move(fs)), m_(m) {
    if (xs_.size() != fs_.size()) throw std::invalid_argument("size mismatch");
    if (!std::is_sorted(xs_.begin(), xs_.end())) throw std::invalid_argument("xs must be sorted");
    if (std::adjacent_find(xs_.begin(), xs_.end()) != xs_.end())
        throw std::invalid_argument("duplicate points");
    table_.resize(m_ + 1);
    table_[0] = fs_;
    for (int k = 1; k <= m_; ++k) {
        if ((std::size_t)k >= xs_.size()) break;
        table_[k].resize(xs_.size() - k);
        for (std::size_t i = 0; i + k < xs_.size(); ++i)
            table_[k][i] = (table_[k - 1][i + 1] - table_[k - 1][i]) / (xs_[i + k] - xs_[i]);
    }
}

double DividedDifferenceTable::window(int k, std::size_t i) const {
    return table_.at(k).at(i);
}

double DividedDifferenceTable::subset(const std::vector<std::size_t>& idx) const {
    std::vector<double> x, f;
    for (std::size_t i : idx) {
        x.push_back(xs_.at(i));
        f.push_back(fs_.at(i));
    }
    return divided_difference(f, x);
}

namespace {

// visit all k-subsets of {0..n-1}
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        // advance
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

Sup1D trace_1d_linf(const std::vector<double>& f, const std::vector<double>& E, int m,
                    unsigned seed) {
    if (E.size() < (std::size_t)m + 1) throw std::invalid_argument("need at least m+1 points");
    std::vector<std::size_t> order(E.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&E](std::size_t a, std::size_t b) { return E[a] < E[b]; });
    std::vector<double> xs, fs;
    for (std::size_t i : order) {
        xs.push_back(E[i]);
        fs.push_back(f[i]);
    }
    DividedDifferenceTable tab(xs, fs, m);

    Sup1D res;
    for (std::size_t i = 0; i + m < xs.size(); ++i)
        res.window_value = std::max(res.window_value, std::abs(tab.window(m, i)));

    if (E.size() <= 25 && binomial(E.size(), m + 1) <= 5e6) {
        res.exhaustive = true;
        for_each_combination(xs.size(), m + 1, [&](const std::vector<std::size_t>& idx) {
            res.value = std::max(res.value, std::abs(tab.subset(idx)));
        });
        res.sampled_value = res.value;
    } else {
        Rng rng(seed);
        double sampled = 0.0;
        for (int t = 0; t < 20000; ++t) {
            std::vector<std::size_t> idx;
            while (idx.size() < (std::size_t)m + 1) {
                std::size_t c = (std::size_t)uniform_int(rng, 0, (int)xs.size() - 1);
                if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
            }
            std::sort(idx.begin(), idx.end());
            sampled = std::max(sampled, std::abs(tab.subset(idx)));
        }
        res.sampled_value = sampled;
        res.value = std::max(res.window_value, sampled);
    }
    return res;
}

std::pair<double, double> trace_1d_lp(const std::vector<double>& f, const std::vector<double>& E,
                                      int m, double p, const Grid& grid) {
    if (grid.dim() != 1) throw std::invalid_argument("1-D functional requires a 1-D grid");
    if (E.size() < (std::size_t)m + 1) throw std::invalid_argument("need at least m+1 points");
    if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
    std::vector<std::size_t> order(E.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&E](std::size_t a, std::size_t b) { return E[a] < E[b]; });
    std::vector<double> xs, fs;
    for (std::size_t i : order) {
        xs.push_back(E[i]);
        fs.push_back(f[i]);
    }
    DividedDifferenceTable tab(xs, fs, m);

    // precompute per-subset data
    struct Sub {
        double dd_m;     // Delta^m f[S]
        double ddiff;    // Delta^{m-1} over prefix minus suffix
        double x0, xm;
    };
    std::vector<Sub> subs;
    for_each_combination(xs.size(), m + 1, [&](const std::vector<std::size_t>& idx) {
        Sub s;
        s.dd_m = tab.subset(idx);
        std::vector<std::size_t> pre(idx.begin(), idx.end() - 1);
        std::vector<std::size_t> suf(idx.begin() + 1, idx.end());
        s.ddiff = tab.subset(pre) - tab.subset(suf);
        s.x0 = xs[idx.front()];
        s.xm = xs[idx.back()];
        subs.push_back(s);
    });

    double sumA = 0.0, sumB = 0.0;
    for (std::size_t node = 0; node < grid.node_count(); ++node) {
        double x = grid.node(node)[0];
        double supA = 0.0, supB = 0.0;
        for (const auto& s : subs) {
            double diamS = s.xm - s.x0;
            double diamXS = std::max(s.xm, x) - std::min(s.x0, x);
            supA = std::max(supA, std::abs(s.dd_m) * diamS / diamXS);
            double den = std::pow(std::abs(x - s.x0), p) + std::pow(std::abs(x - s.xm), p);
            if (den > 0.0)
                supB = std::max(supB, std::pow(std::abs(s.ddiff), p) / den);
        }
        sumA += std::pow(supA, p);
        sumB += supB;
    }
    double s = grid.spacing;
    return {std::pow(sumA * s, 1.0 / p), std::pow(sumB * s, 1.0 / p)};
}

}  // namespace sptk
