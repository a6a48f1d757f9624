#pragma once

#include "sptk/field.hpp"

namespace sptk {

// Hardy-Littlewood maximal function over the candidate cube family:
// M[g](x) = max over family cubes containing x of the mean of |g|.
// The s/2 ladder entry makes M[g] >= |g| node-wise.
ScalarField hl_maximal(const ScalarField& g);

struct A1Report {
    double norm_estimate = 1.0;  // +inf when a candidate cube has a zero node
    Cube worst_cube;
    std::size_t cube_count = 0;
    bool finite_at_resolution = true;
};

// ||w||_{A1} estimated over the candidate family: max of avg(w,Q) / min(w,Q)
// (grid minimum standing in for the essential infimum).
A1Report a1_norm(const WeightField& w);

// avg(w,K) <= ||w||_{A1} avg(w,Q) for nested Q subset K (property probe).
bool monotone_cube_bound_check(const WeightField& w, const Cube& Q, const Cube& K,
                               double a1 = -1.0);

// M[g]^theta, 0 < theta < 1.
WeightField coifman_rochberg(const ScalarField& g, double theta);

}  // namespace sptk
