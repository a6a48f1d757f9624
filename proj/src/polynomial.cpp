#include "sptk/polynomial.hpp"

#include <algorithm>

namespace sptk {

Polynomial::Polynomial(int n, int degree, Vec base)
    : n_(n), degree_(degree), base_(std::move(base)) {
    if ((int)base_.size() != n_) throw std::invalid_argument("dimension mismatch");
    if (degree_ < 0) throw std::invalid_argument("negative degree");
}

Polynomial Polynomial::constant(int n, Vec base, double c) {
    Polynomial p(n, 0, std::move(base));
    p.coeff(MultiIndex(n, 0)) = c;
    return p;
}

double& Polynomial::coeff(const MultiIndex& a) {
    if ((int)a.size() != n_ || mi_order(a) > degree_)
        throw std::invalid_argument("multi-index outside degree bound");
    return c_[a];
}

double Polynomial::coeff(const MultiIndex& a) const {
    auto it = c_.find(a);
    return it == c_.end() ? 0.0 : it->second;
}

double Polynomial::eval(const Vec& x) const {
    double s = 0.0;
    for (const auto& [a, ca] : c_) {
        double t = ca;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < a[i]; ++k) t *= (x[i] - base_[i]);
        s += t;
    }
    return s;
}

Polynomial Polynomial::derivative(const MultiIndex& beta) const {
    Polynomial out(n_, std::max(0, degree_ - mi_order(beta)), base_);
    for (const auto& [a, ca] : c_) {
        MultiIndex g(n_);
        bool ok = true;
        double fac = 1.0;
        for (int i = 0; i < n_; ++i) {
            if (a[i] < beta[i]) {
                ok = false;
                break;
            }
            g[i] = a[i] - beta[i];
            for (int k = a[i]; k > g[i]; --k) fac *= k;
        }
        if (ok && ca != 0.0) out.c_[g] += fac * ca;
    }
    return out;
}

double Polynomial::eval_derivative(const MultiIndex& beta, const Vec& x) const {
    return derivative(beta).eval(x);
}

Polynomial Polynomial::recenter(const Vec& new_base) const {
    Polynomial out(n_, degree_, new_base);
    for (const auto& a : multi_indices_up_to(n_, degree_)) {
        double d = eval_derivative(a, new_base);
        if (d != 0.0) out.c_[a] = d / mi_factorial(a);
    }
    return out;
}

Polynomial Polynomial::taylor_at(const Vec& y, int k) const {
    Polynomial out(n_, k, y);
    for (const auto& a : multi_indices_up_to(n_, k)) {
        double d = eval_derivative(a, y);
        if (d != 0.0) out.c_[a] = d / mi_factorial(a);
    }
    return out;
}

MultiJet Polynomial::jet_at(const Vec& x, int order) const {
    Polynomial at_x = taylor_at(x, std::min(order, degree_));
    const auto& idx = JetLayout::get(n_, order)->indices;
    std::vector<double> cv(idx.size(), 0.0);
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (mi_order(idx[i]) <= at_x.degree()) cv[i] = at_x.coeff(idx[i]);
    return MultiJet::from_coefficients(n_, order, std::move(cv));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    Polynomial ob = o.recenter(base_);
    degree_ = std::max(degree_, ob.degree_);
    for (const auto& [a, ca] : ob.c_) c_[a] += ca;
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (auto& [a, ca] : c_) ca *= s;
    return *this;
}

JetField::JetField(PointSet e, int order_m, std::vector<Polynomial> p)
    : E(std::move(e)), m(order_m), polys(std::move(p)) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (polys.size() != E.points.size())
        throw std::invalid_argument("one polynomial per point required");
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (polys[i].degree() > m - 1)
            throw std::invalid_argument("jet polynomial degree exceeds m-1");
}

JetField& JetField::operator+=(const JetField& o) {
    if (o.polys.size() != polys.size() || o.m != m)
        throw std::invalid_argument("incompatible jets");
    for (std::size_t i = 0; i < polys.size(); ++i) polys[i] += o.polys[i];
    return *this;
}

JetField& JetField::operator*=(double s) {
    for (auto& p : polys) p *= s;
    return *this;
}

MultiJet SmoothFn::jet(const Vec& x, int order) const {
    std::vector<MultiJet> vars;
    vars.reserve(n);
    for (int i = 0; i < n; ++i) vars.push_back(MultiJet::variable(n, order, i, x[i]));
    return fn(vars);
}

double SmoothFn::derivative(const MultiIndex& a, const Vec& x) const {
    return jet(x, mi_order(a)).derivative(a);
}

Polynomial SmoothFn::taylor(const Vec& y, int order) const {
    MultiJet j = jet(y, order);
    Polynomial p(n, order, y);
    const auto idx = multi_indices_up_to(n, order);
    for (const auto& a : idx) {
        double d = j.derivative(a);
        if (d != 0.0) p.coeff(a) = d / mi_factorial(a);
    }
    return p;
}

JetField SmoothFn::jet_field(const PointSet& E, int m) const {
    std::vector<Polynomial> polys;
    polys.reserve(E.points.size());
    for (const auto& x : E.points) polys.push_back(taylor(x, m - 1));
    return JetField(E, m, std::move(polys));
}

ScalarField SmoothFn::sample(const Grid& g) const {
    return ScalarField::sample(g, [this](const Vec& x) { return value(x); });
}

ScalarField SmoothFn::gradient_norm(const Grid& g) const {
    return ScalarField::sample(g, [this](const Vec& x) {
        MultiJet j = jet(x, 1);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            MultiIndex e(n, 0);
            e[i] = 1;
            double d = j.derivative(e);
            s += d * d;
        }
        return std::sqrt(s);
    });
}

ScalarField SmoothFn::grad_m_norm(const Grid& g, int m) const {
    auto alphas = multi_indices_of_order(n, m);
    return ScalarField::sample(g, [this, &alphas, m](const Vec& x) {
        MultiJet j = jet(x, m);
        double s = 0.0;
        for (const auto& a : alphas) {
            double d = j.derivative(a);
            s += d * d;
        }
        return std::sqrt(s);
    });
}

Polynomial taylor_poly(const SmoothFn& F, const Vec& y, int m) { return F.taylor(y, m); }

Polynomial taylor_poly(const std::map<MultiIndex, ScalarField>& derivs, const Vec& y, int m) {
    if (derivs.empty()) throw std::invalid_argument("no derivative fields");
    const Grid& g = derivs.begin()->second.grid;
    std::size_t node = g.nearest_node(y);
    Vec yn = g.node(node);
    if (dist_inf(y, yn) > 0.5 * g.spacing + kGeomTol)
        throw std::invalid_argument("point outside grid interior");
    int n = g.dim();
    Polynomial p(n, m, yn);
    for (const auto& a : multi_indices_up_to(n, m)) {
        auto it = derivs.find(a);
        if (it == derivs.end()) throw std::invalid_argument("missing derivative field");
        double d = it->second.values[node];
        if (d != 0.0) p.coeff(a) = d / mi_factorial(a);
    }
    return p;
}

std::vector<SmoothFn> analytic_corpus(int n, std::size_t count) {
    std::vector<SmoothFn> out;
    auto add = [&](const std::string& name,
                   std::function<MultiJet(const std::vector<MultiJet>&)> f) {
        out.push_back(SmoothFn{name, n, std::move(f)});
    };
    auto X = [](const std::vector<MultiJet>& v, int i) { return v[i % v.size()]; };

    add("linear", [X](const std::vector<MultiJet>& v) {
        MultiJet s = X(v, 0) * 1.0;
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i] * (0.5 + 0.25 * (double)i);
        return s;
    });
    add("quadratic", [X](const std::vector<MultiJet>& v) {
        MultiJet s = X(v, 0) * X(v, 0) * 0.5;
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i] * v[i] * 0.3 - v[0] * v[i] * 0.2;
        return s;
    });
    add("cubic", [X](const std::vector<MultiJet>& v) {
        MultiJet x = X(v, 0);
        return x * x * x * 0.25 - x * 0.5 + 1.0;
    });
    add("sin", [X](const std::vector<MultiJet>& v) { return jet_sin(X(v, 0) * 2.0); });
    add("cos_sum", [](const std::vector<MultiJet>& v) {
        MultiJet s = v[0] * 1.0;
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i];
        return jet_cos(s * 1.5);
    });
    add("gauss", [](const std::vector<MultiJet>& v) {
        MultiJet s = v[0] * v[0];
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i] * v[i];
        return jet_exp(-(s * 1.2));
    });
    add("gauss_offset", [](const std::vector<MultiJet>& v) {
        MultiJet s = (v[0] - 0.3) * (v[0] - 0.3);
        for (std::size_t i = 1; i < v.size(); ++i) s += (v[i] + 0.2) * (v[i] + 0.2);
        return jet_exp(-(s * 2.0)) * 1.5;
    });
    add("exp_half", [X](const std::vector<MultiJet>& v) { return jet_exp(X(v, 0) * 0.5); });
    add("sin_prod", [X](const std::vector<MultiJet>& v) {
        return jet_sin(X(v, 0) * 3.0) * jet_cos(X(v, 1) * 2.0);
    });
    add("rational", [](const std::vector<MultiJet>& v) {
        MultiJet s = v[0] * v[0];
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i] * v[i];
        return jet_recip(s + 1.0);
    });
    add("sigmoid", [X](const std::vector<MultiJet>& v) {
        return jet_recip(jet_exp(-(X(v, 0) * 2.5)) + 1.0);
    });
    add("wave_decay", [X](const std::vector<MultiJet>& v) {
        MultiJet s = v[0] * v[0];
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i] * v[i];
        return jet_sin(X(v, 0) * 4.0) * jet_exp(-(s * 0.8));
    });
    add("poly_mix", [X](const std::vector<MultiJet>& v) {
        MultiJet x = X(v, 0), y = X(v, 1);
        return x * x * y * 0.5 + y * y * 0.25 - x * 0.75;
    });
    add("soft_abs", [X](const std::vector<MultiJet>& v) {
        return jet_pow(X(v, 0) * X(v, 0) + 0.01, 0.5);
    });
    add("log_shift", [](const std::vector<MultiJet>& v) {
        MultiJet s = v[0] * v[0];
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i] * v[i];
        return jet_pow(s + 1.5, 0.5);
    });
    add("cos_gauss", [X](const std::vector<MultiJet>& v) {
        return jet_cos(X(v, 0) * 2.0) * jet_exp(-(X(v, 1) * X(v, 1)));
    });
    add("bump_like", [](const std::vector<MultiJet>& v) {
        MultiJet s = v[0] * v[0];
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i] * v[i];
        return jet_exp(-(s * s) * 0.5);
    });
    add("tilted_sine", [X](const std::vector<MultiJet>& v) {
        return X(v, 0) * 0.4 + jet_sin(X(v, 0) * 1.5 + X(v, 1) * 0.5) * 0.6;
    });
    add("quartic_well", [X](const std::vector<MultiJet>& v) {
        MultiJet x = X(v, 0);
        return x * x * x * x * 0.2 - x * x * 0.5 + 0.3;
    });
    add("exp_cos", [X](const std::vector<MultiJet>& v) {
        return jet_exp(jet_cos(X(v, 0) * 2.0) * 0.5);
    });

    if (out.size() > count) out.resize(count);
    return out;
}

}  // namespace sptk
