#include "pnforge/poly.hpp"

namespace pnforge {

std::vector<Monomial> monomials_up_to(int d) {
    std::vector<Monomial> out;
    for (int n = 0; n <= d; ++n)
        for (int i = 0; i <= n; ++i) out.push_back({i, n - i});
    return out;
}

}  // namespace pnforge
