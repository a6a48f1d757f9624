#pragma once

#include <map>

#include "sptk/common.hpp"
#include "sptk/field.hpp"
#include "sptk/geometry.hpp"
#include "sptk/jets.hpp"
#include "sptk/multiindex.hpp"

namespace sptk {

// P(x) = sum_{|alpha| <= degree} coeff[alpha] (x - base)^alpha.
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(int n, int degree, Vec base);

    static Polynomial constant(int n, Vec base, double c);

    int dim() const { return n_; }
    int degree() const { return degree_; }
    const Vec& base_point() const { return base_; }
    const std::map<MultiIndex, double>& coeffs() const { return c_; }

    double& coeff(const MultiIndex& a);
    double coeff(const MultiIndex& a) const;

    double eval(const Vec& x) const;
    Polynomial derivative(const MultiIndex& beta) const;
    double eval_derivative(const MultiIndex& beta, const Vec& x) const;

    // Same polynomial expressed around a new base point (exact Taylor shift).
    Polynomial recenter(const Vec& new_base) const;
    // Degree-k Taylor truncation at y: T^k_y[P].
    Polynomial taylor_at(const Vec& y, int k) const;

    // Taylor coefficients at x packed as a MultiJet of the given order.
    MultiJet jet_at(const Vec& x, int order) const;

    Polynomial& operator+=(const Polynomial& o);  // o recentered onto *this
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }

  private:
    int n_ = 0;
    int degree_ = 0;
    Vec base_;
    std::map<MultiIndex, double> c_;
};

// Polynomial field on E: one polynomial of degree <= m-1 based at each point.
struct JetField {
    PointSet E;
    int m = 1;
    std::vector<Polynomial> polys;  // aligned with E.points

    JetField() = default;
    JetField(PointSet e, int order_m, std::vector<Polynomial> p);

    JetField& operator+=(const JetField& o);
    JetField& operator*=(double s);
};

// Smooth function with exact derivatives through truncated Taylor
// arithmetic; the analytic closure used by Taylor polynomials, jets and all
// calibration corpora.
struct SmoothFn {
    std::string name;
    int n = 1;
    std::function<MultiJet(const std::vector<MultiJet>&)> fn;

    MultiJet jet(const Vec& x, int order) const;
    double value(const Vec& x) const { return jet(x, 0).value(); }
    double derivative(const MultiIndex& a, const Vec& x) const;
    Polynomial taylor(const Vec& y, int order) const;
    JetField jet_field(const PointSet& E, int m) const;  // P_x = T^{m-1}_x

    ScalarField sample(const Grid& g) const;
    ScalarField gradient_norm(const Grid& g) const;        // Euclidean norm of grad
    ScalarField grad_m_norm(const Grid& g, int m) const;   // order-m combination
};

// degree-m Taylor polynomial of F at y from the analytic closure
Polynomial taylor_poly(const SmoothFn& F, const Vec& y, int m);

// same from sampled derivative fields (values read at the nearest node)
Polynomial taylor_poly(const std::map<MultiIndex, ScalarField>& derivs, const Vec& y, int m);

// smooth analytic test corpus with closed-form jets
std::vector<SmoothFn> analytic_corpus(int n, std::size_t count = 20);

}  // namespace sptk
