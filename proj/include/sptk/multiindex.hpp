#pragma once

#include <string>
#include <vector>

namespace sptk {

// Multi-index alpha = (a_1,...,a_n), a_i >= 0.
using MultiIndex = std::vector<int>;

inline int mi_order(const MultiIndex& a) {
    int s = 0;
    for (int v : a) s += v;
    return s;
}

inline double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

inline double mi_factorial(const MultiIndex& a) {
    double r = 1.0;
    for (int v : a) r *= factorial(v);
    return r;
}

// All multi-indices of dimension n with |alpha| <= max_order, in graded
// lexicographic order (deterministic enumeration).
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

// Multi-indices with |alpha| == order exactly.
std::vector<MultiIndex> multi_indices_of_order(int n, int order);

std::string mi_to_string(const MultiIndex& a);
MultiIndex mi_from_string(const std::string& s);

}  // namespace sptk
