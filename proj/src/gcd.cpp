#include <algorithm>

#include "engine.hpp"
#include "flp/polyring.hpp"

namespace flp {

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars()) fail(ErrorKind::invalid_argument, "lcm: different variable counts");
    if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars());
    if (a.is_constant()) return b.monic();
    if (b.is_constant()) return a.monic();
    const ModuleElement ea{a};
    const ModuleElement eb{b};
    auto gens = detail::intersect_elements(std::span<const ModuleElement>(&ea, 1), std::span<const ModuleElement>(&eb, 1),
                                           1, a.nvars(), ModuleOrder{});
    // <a> ∩ <b> is principal, so its reduced basis has a single element.
    if (gens.size() != 1) fail(ErrorKind::invalid_argument, "lcm: intersection of principal ideals is not principal");
    return gens.front().front().monic();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars()) fail(ErrorKind::invalid_argument, "gcd: different variable counts");
    if (a.is_zero()) {
        if (b.is_zero()) fail(ErrorKind::invalid_argument, "gcd of zero polynomials");
        return b.monic();
    }
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.nvars(), 1);
    if (divides(a, b)) return a.monic();
    if (divides(b, a)) return b.monic();
    return exact_divide(mul(a, b), lcm(a, b)).monic();
}

Polynomial gcd(std::span<const Polynomial> ps) {
    std::vector<Polynomial> nonzero;
    for (const auto& p : ps)
        if (!p.is_zero()) nonzero.push_back(p);
    if (nonzero.empty()) fail(ErrorKind::invalid_argument, "gcd of zero polynomials");
    // Folding from the smallest input keeps the intermediate gcds small.
    std::stable_sort(nonzero.begin(), nonzero.end(), [](const Polynomial& x, const Polynomial& y) {
        return std::make_pair(x.total_degree(), x.size()) < std::make_pair(y.total_degree(), y.size());
    });
    Polynomial g = nonzero.front().monic();
    for (std::size_t i = 1; i < nonzero.size() && !g.is_constant(); ++i) g = gcd(g, nonzero[i]);
    return g;
}

}  // namespace flp
