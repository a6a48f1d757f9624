#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "sptk/common.hpp"
#include "sptk/multiindex.hpp"

namespace sptk {

// Shared layout for truncated multivariate Taylor expansions in n variables
// up to total order K: index enumeration plus a precomputed product table.
struct JetLayout {
    int n = 0;
    int order = 0;
    std::vector<MultiIndex> indices;                // graded lex
    std::vector<std::array<int, 3>> product_table;  // (i, j, k): idx[i]+idx[j] == idx[k]

    static std::shared_ptr<const JetLayout> get(int n, int order);
};

// A truncated Taylor expansion of a smooth function at a point. coeff[alpha]
// stores D^alpha f / alpha!. Supports arithmetic and composition with
// analytic scalar functions, which is how bump derivatives and the analytic
// test corpus obtain exact derivatives without differencing.
class MultiJet {
  public:
    MultiJet() = default;
    MultiJet(int n, int order)
        : layout_(JetLayout::get(n, order)), c_(layout_->indices.size(), 0.0) {}

    static MultiJet constant(int n, int order, double v) {
        MultiJet j(n, order);
        j.c_[0] = v;
        return j;
    }
    // The coordinate function x_axis seeded at base value v.
    static MultiJet variable(int n, int order, int axis, double v);
    // Raw Taylor coefficients in graded lex order (D^alpha f / alpha!).
    static MultiJet from_coefficients(int n, int order, std::vector<double> coeffs);

    int dim() const { return layout_->n; }
    int order() const { return layout_->order; }
    double value() const { return c_[0]; }
    const std::vector<double>& coeffs() const { return c_; }

    // D^alpha at the base point (coefficient times alpha!).
    double derivative(const MultiIndex& alpha) const;

    MultiJet& operator+=(const MultiJet& o);
    MultiJet& operator-=(const MultiJet& o);
    MultiJet& operator*=(double s);
    friend MultiJet operator+(MultiJet a, const MultiJet& b) { return a += b; }
    friend MultiJet operator-(MultiJet a, const MultiJet& b) { return a -= b; }
    friend MultiJet operator*(MultiJet a, double s) { return a *= s; }
    friend MultiJet operator*(double s, MultiJet a) { return a *= s; }
    friend MultiJet operator+(MultiJet a, double s) {
        a.c_[0] += s;
        return a;
    }
    friend MultiJet operator-(MultiJet a, double s) {
        a.c_[0] -= s;
        return a;
    }
    MultiJet operator-() const {
        MultiJet r = *this;
        for (double& v : r.c_) v = -v;
        return r;
    }
    friend MultiJet operator*(const MultiJet& a, const MultiJet& b);
    friend MultiJet operator/(const MultiJet& a, const MultiJet& b);

    // f(u) for analytic f given the 1-D derivatives f^(k)(u.value()).
    MultiJet compose(const std::vector<double>& f_derivs_at_value) const;

  private:
    std::shared_ptr<const JetLayout> layout_;
    std::vector<double> c_;
    friend MultiJet jet_recip(const MultiJet&);
};

MultiJet jet_exp(const MultiJet& u);
MultiJet jet_sin(const MultiJet& u);
MultiJet jet_cos(const MultiJet& u);
MultiJet jet_recip(const MultiJet& u);
MultiJet jet_pow(const MultiJet& u, double a);  // u.value() > 0

// exp(-1/(1-t^2)) on (-1,1), 0 outside: the standard smooth cutoff. The jet
// version returns value plus derivatives at t (zero jet for |t| >= 1).
double smooth_cutoff(double t);
MultiJet smooth_cutoff(const MultiJet& t);

}  // namespace sptk
