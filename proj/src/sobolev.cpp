#include "sptk/sobolev.hpp"

namespace sptk {

namespace {

// central first difference along one axis; margin nodes keep value 0
ScalarField central_diff(const ScalarField& F, int axis) {
    const Grid& g = F.grid;
    std::vector<double> out(g.node_count(), 0.0);
    double inv2s = 1.0 / (2.0 * g.spacing);
    for (std::size_t lin = 0; lin < g.node_count(); ++lin) {
        auto idx = g.node_multi(lin);
        if (idx[axis] == 0 || idx[axis] == g.extents[axis] - 1) continue;
        auto up = idx, dn = idx;
        ++up[axis];
        --dn[axis];
        out[lin] = (F.values[g.linear(up)] - F.values[g.linear(dn)]) * inv2s;
    }
    return ScalarField(g, std::move(out));
}

}  // namespace

DerivativeBundle discrete_derivatives(const ScalarField& F, int m) {
    const Grid& g = F.grid;
    for (int e : g.extents)
        if (e < 2 * m + 1) throw std::invalid_argument("grid too small for the stencil");
    DerivativeBundle out;
    out.margin = m;
    for (const auto& a : multi_indices_of_order(g.dim(), m)) {
        ScalarField d = F;
        for (int axis = 0; axis < g.dim(); ++axis)
            for (int k = 0; k < a[axis]; ++k) d = central_diff(d, axis);
        out.fields.emplace(a, std::move(d));
    }
    return out;
}

double lp_interior(const ScalarField& f, double p, int margin) {
    const Grid& g = f.grid;
    double s = 0.0;
    for (std::size_t lin = 0; lin < g.node_count(); ++lin) {
        auto idx = g.node_multi(lin);
        bool interior = true;
        for (int i = 0; i < g.dim(); ++i)
            if (idx[i] < margin || idx[i] > g.extents[i] - 1 - margin) {
                interior = false;
                break;
            }
        if (interior) s += std::pow(std::abs(f.values[lin]), p);
    }
    return std::pow(s * std::pow(g.spacing, g.dim()), 1.0 / p);
}

SeminormReport sobolev_seminorm(const ScalarField& F, int m, double p) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
    auto bundle = discrete_derivatives(F, m);
    const Grid& g = F.grid;
    std::vector<double> gm(g.node_count(), 0.0);
    for (const auto& [a, d] : bundle.fields)
        for (std::size_t i = 0; i < gm.size(); ++i) gm[i] += d.values[i] * d.values[i];
    for (double& v : gm) v = std::sqrt(v);
    SeminormReport rep;
    rep.m = m;
    rep.p = p;
    rep.boundary_margin = bundle.margin;
    rep.gradient_field = ScalarField(g, std::move(gm));
    rep.seminorm = lp_interior(rep.gradient_field, p, bundle.margin);
    return rep;
}

SeminormReport sobolev_seminorm_analytic(const SmoothFn& F, const Grid& g, int m, double p,
                                         int margin) {
    SeminormReport rep;
    rep.m = m;
    rep.p = p;
    rep.boundary_margin = margin;
    rep.gradient_field = F.grad_m_norm(g, m);
    rep.seminorm = lp_interior(rep.gradient_field, p, margin);
    return rep;
}

SobolevPoincare::SobolevPoincare(ScalarField F, const ScalarField& grad_norm, double q)
    : F_(std::move(F)), q_(q),
      gradq_(grad_norm.map([q](double v) { return std::pow(std::abs(v), q); })) {
    if (!(q_ > F_.grid.dim())) throw std::invalid_argument("q must exceed the dimension n");
}

double SobolevPoincare::ratio(const Cube& Q, const Vec& x, const Vec& y) const {
    if (!Q.contains(x) || !Q.contains(y)) throw std::invalid_argument("x,y must lie in Q");
    const Grid& g = F_.grid;
    double fx = F_.values[g.nearest_node(x)];
    double fy = F_.values[g.nearest_node(y)];
    double num = std::abs(fx - fy);
    double den = Q.diam() * std::pow(gradq_.average(Q), 1.0 / q_);
    if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
    return num / den;
}

double jet_poincare_ratio(const SmoothFn& F, int m, double q, const MultiIndex& beta,
                          const PrefixSums& gradm_pow_q, const Vec& x, const Vec& y) {
    if (mi_order(beta) > m - 1) throw std::invalid_argument("|beta| must be <= m-1");
    double r = dist_inf(x, y);
    if (r == 0.0) return 0.0;
    Polynomial px = F.taylor(x, m - 1);
    Polynomial py = F.taylor(y, m - 1);
    double num = std::abs(px.eval_derivative(beta, x) - py.eval_derivative(beta, x));
    auto avg = gradm_pow_q.try_average(Cube(x, r));
    if (!avg) throw std::invalid_argument("Q_xy misses the grid");
    double den = std::pow(r, m - mi_order(beta)) * std::pow(*avg, 1.0 / q);
    if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
    return num / den;
}

ScalarField calderon_sharp(const ScalarField& F) {
    const Grid& g = F.grid;
    int n = g.dim();
    PrefixSums ps(F);
    auto ladder = radius_ladder(g);
    std::vector<double> out(g.node_count(), 0.0);
    for (double r : ladder) {
        for (std::size_t c = 0; c < g.node_count(); ++c) {
            Cube Q(g.node(c), r);
            auto rng = g.index_range(Q);
            if (!rng) continue;
            double mean = ps.average(Q);
            // avg of |F - mean| needs a direct pass over the cube nodes
            std::vector<int> it = rng->first;
            double s = 0.0;
            long long cnt = 0;
            while (true) {
                s += std::abs(F.values[g.linear(it)] - mean);
                ++cnt;
                int axis = n - 1;
                while (axis >= 0) {
                    if (++it[axis] <= rng->second[axis]) break;
                    it[axis] = rng->first[axis];
                    --axis;
                }
                if (axis < 0) break;
            }
            out[c] = std::max(out[c], s / (double)cnt / r);
        }
    }
    return ScalarField(g, std::move(out));
}

NecessityReport necessity_weight(const ScalarField& F, const ScalarField& grad_norm, double p,
                                 double q) {
    const Grid& g = F.grid;
    int n = g.dim();
    if (!(q > n && q < p)) throw std::invalid_argument("need n < q < p");
    double sigma = 0.5 * (p + q);

    NecessityReport rep;
    rep.sigma = sigma;
    ScalarField pow_sig = grad_norm.map([sigma](double v) { return std::pow(std::abs(v), sigma); });
    ScalarField m_field = hl_maximal(pow_sig);
    ScalarField base = m_field.map([sigma](double v) { return std::pow(v, 1.0 / sigma); });

    // calibrate C as the smallest constant giving |F(x)-F(y)| <= delta_q(x,y:C base)
    PrefixSums baseq(base.map([q](double v) { return std::pow(v, q); }));
    double C = 0.0;
    std::size_t N = g.node_count();
    std::vector<Vec> pts(N);
    for (std::size_t i = 0; i < N; ++i) pts[i] = g.node(i);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j) continue;
            double num = std::abs(F.values[i] - F.values[j]);
            if (num == 0.0) continue;
            double r = dist_inf(pts[i], pts[j]);
            double den = r * std::pow(baseq.average(Cube(pts[i], r)), 1.0 / q);
            C = std::max(C, den > 0.0 ? num / den : kInf);
        }
    if (C == 0.0) {
        rep.h_zero = true;
        rep.calibration = 0.0;
        rep.h = ScalarField(g);
        rep.f_seminorm = lp_interior(grad_norm, p, 0);
        return rep;
    }

    rep.calibration = C;
    rep.h = base.map([C](double v) { return C * v; });
    rep.a1 = a1_norm(WeightField(rep.h).pow(q));
    rep.h_lp = lp_interior(rep.h, p, 0);
    rep.f_seminorm = lp_interior(grad_norm, p, 0);
    return rep;
}

double calibrate_sp_constant(int n, double q, const Grid& grid,
                             const std::vector<SmoothFn>& corpus) {
    auto ladder = radius_ladder(grid);
    double C = 0.0;
    for (const auto& F : corpus) {
        ScalarField Ff = F.sample(grid);
        SobolevPoincare sp(Ff, F.gradient_norm(grid), q);
        std::size_t stride = std::max<std::size_t>(1, grid.node_count() / 64);
        for (std::size_t c = 0; c < grid.node_count(); c += stride) {
            Vec ctr = grid.node(c);
            for (double r : ladder) {
                if (r < 2.0 * grid.spacing) continue;
                Cube Q(ctr, r);
                auto rg = grid.index_range(Q);
                if (!rg) continue;
                // deterministic probe points: the extreme corner nodes of
                // Q's index range plus its center node
                std::vector<Vec> probes;
                for (int mask = 0; mask < (1 << n); ++mask) {
                    std::vector<int> idx(n);
                    for (int i = 0; i < n; ++i)
                        idx[i] = (mask & (1 << i)) ? rg->second[i] : rg->first[i];
                    probes.push_back(grid.node(grid.linear(idx)));
                }
                std::vector<int> mid(n);
                for (int i = 0; i < n; ++i) mid[i] = (rg->first[i] + rg->second[i]) / 2;
                probes.push_back(grid.node(grid.linear(mid)));
                for (std::size_t a = 0; a < probes.size(); ++a)
                    for (std::size_t b = a + 1; b < probes.size(); ++b) {
                        double ratio = sp.ratio(Q, probes[a], probes[b]);
                        if (std::isfinite(ratio)) C = std::max(C, ratio);
                    }
            }
        }
    }
    return C;
}

}  // namespace sptk
