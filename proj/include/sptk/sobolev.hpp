#pragma once

#include <map>

#include "sptk/field.hpp"
#include "sptk/maximal.hpp"
#include "sptk/polynomial.hpp"

namespace sptk {

struct DerivativeBundle {
    std::map<MultiIndex, ScalarField> fields;  // all |alpha| = m
    int margin = 0;                            // nodes trimmed per axis side
};

// Central finite differences of order m; exact on polynomials of degree
// <= m+1 away from the margin.
DerivativeBundle discrete_derivatives(const ScalarField& F, int m);

struct SeminormReport {
    int m = 1;
    double p = 2.0;
    ScalarField gradient_field;  // |grad^m F| per node (0 on the margin)
    double seminorm = 0.0;
    int boundary_margin = 0;
};

// L_p norm over interior nodes of the Euclidean combination of all
// order-m derivatives.
SeminormReport sobolev_seminorm(const ScalarField& F, int m, double p);

// Same, with the derivative combination supplied analytically.
SeminormReport sobolev_seminorm_analytic(const SmoothFn& F, const Grid& g, int m, double p,
                                         int margin = 0);

// L_p norm over interior nodes (midpoint rule).
double lp_interior(const ScalarField& f, double p, int margin);

// |F(x)-F(y)| / (diam Q (avg over Q of |grad F|^q)^(1/q)) for x,y in Q.
class SobolevPoincare {
  public:
    SobolevPoincare(ScalarField F, const ScalarField& grad_norm, double q);
    double ratio(const Cube& Q, const Vec& x, const Vec& y) const;
    const Grid& grid() const { return F_.grid; }

  private:
    ScalarField F_;
    double q_;
    PrefixSums gradq_;
};

// Jet variant: |D^b P_x(x) - D^b P_y(x)| over
// ||x-y||^(m-|b|) (avg over Q_xy of (grad^m F)^q)^(1/q).
double jet_poincare_ratio(const SmoothFn& F, int m, double q, const MultiIndex& beta,
                          const PrefixSums& gradm_pow_q, const Vec& x, const Vec& y);

// Sharp maximal function F#(x) = sup over the radius ladder of
// (1/r) avg over Q(x,r) of |F - F_{Q(x,r)}|.
ScalarField calderon_sharp(const ScalarField& F);

struct NecessityReport {
    ScalarField h;           // calibrated C * M[|grad F|^sigma]^(1/sigma)
    bool h_zero = false;     // constant F gives h == 0 and trivial checks
    double calibration = 0;  // smallest C with |F(x)-F(y)| <= delta_q(x,y:h)
    double sigma = 0.0;
    A1Report a1;             // of h^q (when h is not zero)
    double h_lp = 0.0;       // L_p norm of h over the box
    double f_seminorm = 0.0; // discrete ||F||_{L^1_p}
};

// Necessity-direction weight h = C M[|grad F|^sigma]^(1/sigma),
// sigma = (p+q)/2, with C calibrated over all node pairs.
NecessityReport necessity_weight(const ScalarField& F, const ScalarField& grad_norm, double p,
                                 double q);

// Calibrated Sobolev-Poincare constant: max ratio over an analytic corpus,
// a deterministic subfamily of candidate cubes and corner/center pairs.
double calibrate_sp_constant(int n, double q, const Grid& grid,
                             const std::vector<SmoothFn>& corpus);

}  // namespace sptk
