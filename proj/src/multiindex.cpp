#include "sptk/multiindex.hpp"

#include <sstream>
#include <stdexcept>

namespace sptk {

static void enumerate_rec(int n, int axis, int remaining, MultiIndex& cur,
                          std::vector<MultiIndex>& out) {
    if (axis == n - 1) {
        cur[axis] = remaining;
        out.push_back(cur);
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur[axis] = k;
        enumerate_rec(n, axis + 1, remaining - k, cur, out);
    }
}

std::vector<MultiIndex> multi_indices_of_order(int n, int order) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n, 0);
    enumerate_rec(n, 0, order, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= max_order; ++k) {
        auto level = multi_indices_of_order(n, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::string mi_to_string(const MultiIndex& a) {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ",";
        os << a[i];
    }
    return os.str();
}

MultiIndex mi_from_string(const std::string& s) {
    MultiIndex a;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("bad multi-index string: " + s);
        a.push_back(std::stoi(tok));
    }
    if (a.empty()) throw std::invalid_argument("empty multi-index string");
    return a;
}

}  // namespace sptk
