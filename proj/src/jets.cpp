#include "sptk/jets.hpp"

#include <array>
#include <map>
#include <mutex>

namespace sptk {

static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> g_layouts;
static std::mutex g_layouts_mtx;

std::shared_ptr<const JetLayout> JetLayout::get(int n, int order) {
    std::lock_guard<std::mutex> lock(g_layouts_mtx);
    auto key = std::make_pair(n, order);
    auto it = g_layouts.find(key);
    if (it != g_layouts.end()) return it->second;

    auto lay = std::make_shared<JetLayout>();
    lay->n = n;
    lay->order = order;
    lay->indices = multi_indices_up_to(n, order);
    std::map<MultiIndex, int> pos;
    for (std::size_t i = 0; i < lay->indices.size(); ++i) pos[lay->indices[i]] = (int)i;
    for (std::size_t i = 0; i < lay->indices.size(); ++i) {
        for (std::size_t j = 0; j < lay->indices.size(); ++j) {
            if (mi_order(lay->indices[i]) + mi_order(lay->indices[j]) > order) continue;
            MultiIndex sum(n);
            for (int a = 0; a < n; ++a) sum[a] = lay->indices[i][a] + lay->indices[j][a];
            lay->product_table.push_back({(int)i, (int)j, pos.at(sum)});
        }
    }
    g_layouts[key] = lay;
    return lay;
}

MultiJet MultiJet::from_coefficients(int n, int order, std::vector<double> coeffs) {
    MultiJet j(n, order);
    if (coeffs.size() != j.c_.size()) throw std::invalid_argument("coefficient count mismatch");
    j.c_ = std::move(coeffs);
    return j;
}

MultiJet MultiJet::variable(int n, int order, int axis, double v) {
    MultiJet j(n, order);
    j.c_[0] = v;
    if (order >= 1) {
        MultiIndex e(n, 0);
        e[axis] = 1;
        for (std::size_t i = 0; i < j.layout_->indices.size(); ++i) {
            if (j.layout_->indices[i] == e) {
                j.c_[i] = 1.0;
                break;
            }
        }
    }
    return j;
}

double MultiJet::derivative(const MultiIndex& alpha) const {
    for (std::size_t i = 0; i < layout_->indices.size(); ++i)
        if (layout_->indices[i] == alpha) return c_[i] * mi_factorial(alpha);
    throw std::invalid_argument("multi-index outside jet order");
}

MultiJet& MultiJet::operator+=(const MultiJet& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

MultiJet& MultiJet::operator-=(const MultiJet& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

MultiJet& MultiJet::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

MultiJet operator*(const MultiJet& a, const MultiJet& b) {
    MultiJet r(a.layout_->n, a.layout_->order);
    for (const auto& t : a.layout_->product_table) r.c_[t[2]] += a.c_[t[0]] * b.c_[t[1]];
    return r;
}

MultiJet MultiJet::compose(const std::vector<double>& f) const {
    // f(u0 + du) = sum_k f^(k)(u0)/k! du^k, du nilpotent in the truncated algebra.
    int K = layout_->order;
    MultiJet du = *this;
    du.c_[0] = 0.0;
    MultiJet acc = MultiJet::constant(layout_->n, K, f.at(0));
    MultiJet power = MultiJet::constant(layout_->n, K, 1.0);
    double kfact = 1.0;
    for (int k = 1; k <= K; ++k) {
        power = power * du;
        kfact *= k;
        MultiJet term = power;
        term *= f.at(k) / kfact;
        acc += term;
    }
    return acc;
}

MultiJet jet_exp(const MultiJet& u) {
    double e = std::exp(u.value());
    return u.compose(std::vector<double>(u.order() + 1, e));
}

MultiJet jet_sin(const MultiJet& u) {
    std::vector<double> d(u.order() + 1);
    double s = std::sin(u.value()), c = std::cos(u.value());
    double tab[4] = {s, c, -s, -c};
    for (int k = 0; k <= u.order(); ++k) d[k] = tab[k % 4];
    return u.compose(d);
}

MultiJet jet_cos(const MultiJet& u) {
    std::vector<double> d(u.order() + 1);
    double s = std::sin(u.value()), c = std::cos(u.value());
    double tab[4] = {c, -s, -c, s};
    for (int k = 0; k <= u.order(); ++k) d[k] = tab[k % 4];
    return u.compose(d);
}

MultiJet jet_recip(const MultiJet& u) {
    double v = u.value();
    if (v == 0.0) throw std::domain_error("jet_recip at zero");
    std::vector<double> d(u.order() + 1);
    // d^k/du^k (1/u) = (-1)^k k! / u^{k+1}
    double p = 1.0 / v, sign = 1.0, kfact = 1.0;
    for (int k = 0; k <= u.order(); ++k) {
        if (k > 0) {
            kfact *= k;
            sign = -sign;
            p /= v;
        }
        d[k] = (k == 0 ? 1.0 / v : sign * kfact * p);
    }
    return u.compose(d);
}

MultiJet operator/(const MultiJet& a, const MultiJet& b) { return a * jet_recip(b); }

MultiJet jet_pow(const MultiJet& u, double a) {
    double v = u.value();
    if (v <= 0.0) throw std::domain_error("jet_pow requires positive base");
    std::vector<double> d(u.order() + 1);
    double coef = 1.0;
    for (int k = 0; k <= u.order(); ++k) {
        d[k] = coef * std::pow(v, a - k);
        coef *= (a - k);
    }
    return u.compose(d);
}

double smooth_cutoff(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

MultiJet smooth_cutoff(const MultiJet& t) {
    if (std::abs(t.value()) >= 1.0) return MultiJet(t.dim(), t.order());
    MultiJet one_minus = -(t * t) + 1.0;
    return jet_exp(-jet_recip(one_minus));
}

}  // namespace sptk
