#include "sptk/extension.hpp"

#include <sstream>

namespace sptk {

double lipschitz_seminorm_on_E(const std::vector<double>& f, const PointSet& E,
                               const std::vector<std::vector<double>>& dist_from_E,
                               const Grid& grid) {
    double L = 0.0;
    for (std::size_t i = 0; i < E.points.size(); ++i)
        for (std::size_t j = i + 1; j < E.points.size(); ++j) {
            double d = dist_from_E[i][grid.nearest_node(E.points[j])];
            double df = std::abs(f[i] - f[j]);
            if (df == 0.0) continue;
            if (d == 0.0) return kInf;
            L = std::max(L, df / d);
        }
    return L;
}

ScalarField mcshane_extend(const std::vector<double>& f, const PointSet& E,
                           const std::vector<std::vector<double>>& dist_from_E,
                           const Grid& grid, double L) {
    if (f.size() != E.points.size()) throw std::invalid_argument("one value per point required");
    if (dist_from_E.size() != E.points.size())
        throw std::invalid_argument("one distance row per point required");
    // verify the Lipschitz hypothesis before extending
    for (std::size_t i = 0; i < E.points.size(); ++i)
        for (std::size_t j = i + 1; j < E.points.size(); ++j) {
            double d = dist_from_E[i][grid.nearest_node(E.points[j])];
            double df = std::abs(f[i] - f[j]);
            if (df > L * d * (1.0 + 1e-12) + 1e-300) {
                std::ostringstream os;
                os << "f is not " << L << "-Lipschitz on E: pair (" << i << "," << j
                   << ") has |df| = " << df << " > L d = " << L * d;
                throw std::invalid_argument(os.str());
            }
        }
    std::vector<double> out(grid.node_count(), kInf);
    for (std::size_t node = 0; node < out.size(); ++node) {
        double best = kInf;
        for (std::size_t i = 0; i < E.points.size(); ++i)
            best = std::min(best, f[i] + L * dist_from_E[i][node]);
        out[node] = best;
    }
    return ScalarField(grid, std::move(out));
}

ScalarField mcshane_extend(const std::vector<double>& f, const PointSet& E, const Grid& grid,
                           const DistanceOracle& d, double L) {
    std::vector<std::vector<double>> table(E.points.size());
    for (std::size_t i = 0; i < E.points.size(); ++i) {
        table[i].resize(grid.node_count());
        for (std::size_t node = 0; node < table[i].size(); ++node)
            table[i][node] = d(E.points[i], grid.node(node));
    }
    return mcshane_extend(f, E, table, grid, L);
}

PartitionOfUnity::PartitionOfUnity(const WhitneyDecomposition& W) : W_(&W) {}

std::vector<std::size_t> PartitionOfUnity::active_cubes(const Vec& x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < W_->cubes.size(); ++i)
        if (W_->cubes[i].dilate(9.0 / 8.0).contains(x, 0.0)) out.push_back(i);
    return out;
}

double PartitionOfUnity::bump(std::size_t q, const Vec& x) const {
    const Cube& Q = W_->cubes[q];
    double rstar = Q.half_side * 9.0 / 8.0;
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        v *= smooth_cutoff((x[i] - Q.center[i]) / rstar);
        if (v == 0.0) return 0.0;
    }
    return v;
}

MultiJet PartitionOfUnity::bump_jet(std::size_t q, const Vec& x, int order) const {
    const Cube& Q = W_->cubes[q];
    double rstar = Q.half_side * 9.0 / 8.0;
    int n = (int)x.size();
    MultiJet v = MultiJet::constant(n, order, 1.0);
    for (int i = 0; i < n; ++i) {
        MultiJet t = (MultiJet::variable(n, order, i, x[i]) - Q.center[i]) * (1.0 / rstar);
        v = v * smooth_cutoff(t);
    }
    return v;
}

double PartitionOfUnity::sum_at(const Vec& x) const {
    double s = 0.0;
    for (std::size_t q : active_cubes(x)) s += value(q, x);
    return s;
}

bool PartitionOfUnity::covered(const Vec& x) const {
    for (std::size_t q : active_cubes(x))
        if (bump(q, x) > 0.0) return true;
    return false;
}

double PartitionOfUnity::value(std::size_t q, const Vec& x) const {
    double s = 0.0;
    for (std::size_t k : active_cubes(x)) s += bump(k, x);
    if (s <= 0.0) return 0.0;
    return bump(q, x) / s;
}

PartitionOfUnity::BumpEval PartitionOfUnity::bumps_at(const Vec& x, int order) const {
    int n = (int)x.size();
    BumpEval ev;
    ev.sum = MultiJet(n, order);
    for (std::size_t k : active_cubes(x)) {
        MultiJet b = bump_jet(k, x, order);
        if (b.value() == 0.0) continue;
        ev.sum += b;
        ev.cubes.push_back(k);
        ev.jets.push_back(std::move(b));
    }
    return ev;
}

MultiJet PartitionOfUnity::value_jet(std::size_t q, const Vec& x, int order) const {
    auto ev = bumps_at(x, order);
    if (ev.cubes.empty() || ev.sum.value() <= 0.0) return MultiJet((int)x.size(), order);
    for (std::size_t i = 0; i < ev.cubes.size(); ++i)
        if (ev.cubes[i] == q) return ev.jets[i] / ev.sum;
    return MultiJet((int)x.size(), order);
}

WhitneyField whitney_extend_jet(const JetField& J, const WhitneyDecomposition& W,
                                const PartitionOfUnity& P, const Grid& grid, int deriv_order) {
    if (J.E.points.size() != W.source_set.points.size())
        throw std::invalid_argument("jet and decomposition must share E");
    for (std::size_t i = 0; i < J.E.points.size(); ++i)
        if (dist_inf(J.E.points[i], W.source_set.points[i]) > kGeomTol)
            throw std::invalid_argument("jet and decomposition must share E");

    int n = grid.dim();
    auto betas = multi_indices_up_to(n, deriv_order);

    WhitneyField out;
    out.F = ScalarField(grid);
    for (const auto& b : betas) out.derivs.emplace(b, ScalarField(grid));
    out.tag.assign(grid.node_count(), 2);

    // anchors and their polynomials, one per Whitney cube
    std::vector<Polynomial> anchor_poly;
    anchor_poly.reserve(W.cubes.size());
    for (const auto& Q : W.cubes) {
        Vec a = nearest_anchor(Q, J.E);
        std::size_t ei = 0;
        for (; ei < J.E.points.size(); ++ei)
            if (dist_inf(J.E.points[ei], a) <= kGeomTol) break;
        anchor_poly.push_back(J.polys[ei]);
    }

    // E points snapped to nodes
    std::vector<char> is_e_node(grid.node_count(), 0);
    std::vector<std::size_t> e_poly(grid.node_count(), 0);
    for (std::size_t i = 0; i < J.E.points.size(); ++i) {
        std::size_t node = grid.nearest_node(J.E.points[i]);
        if (dist_inf(grid.node(node), J.E.points[i]) <= kGeomTol) {
            is_e_node[node] = 1;
            e_poly[node] = i;
            out.e_node.push_back(node);
        }
    }

    for (std::size_t node = 0; node < grid.node_count(); ++node) {
        Vec x = grid.node(node);
        if (is_e_node[node]) {
            const Polynomial& p = J.polys[e_poly[node]];
            out.F.values[node] = p.eval(x);
            for (const auto& b : betas)
                out.derivs.at(b).values[node] = p.eval_derivative(b, x);
            out.tag[node] = 0;
            continue;
        }
        auto ev = P.bumps_at(x, deriv_order);
        if (ev.cubes.empty()) {
            out.tag[node] = 2;  // collar: no bump covers this node
            continue;
        }
        MultiJet acc((int)x.size(), deriv_order);
        MultiJet inv_sum = jet_recip(ev.sum);
        for (std::size_t i = 0; i < ev.cubes.size(); ++i)
            acc += (ev.jets[i] * inv_sum) * anchor_poly[ev.cubes[i]].jet_at(x, deriv_order);
        out.tag[node] = 1;
        out.F.values[node] = acc.value();
        for (const auto& b : betas) out.derivs.at(b).values[node] = acc.derivative(b);
    }
    return out;
}

double taylor_remainder_check(const SmoothFn& F, const DistanceOracle& d, int m,
                              const MultiIndex& beta, const Vec& x, const Vec& y) {
    if (mi_order(beta) > m) throw std::invalid_argument("|beta| must not exceed m");
    double r = dist_inf(x, y);
    if (r == 0.0) return 0.0;
    Polynomial T = F.taylor(y, m);
    double lhs = std::abs(F.derivative(beta, x) - T.eval_derivative(beta, x));
    double denom = std::pow(r, m - mi_order(beta)) * d(x, y);
    if (denom == 0.0) return lhs == 0.0 ? 0.0 : kInf;
    return lhs / denom;
}

}  // namespace sptk
