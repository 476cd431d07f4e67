#pragma once
// Internal representation used by the Groebner engine: a module element is a
// single term list sorted descending under the module order, each term
// tagged with its coordinate position.

#include <cstdint>
#include <span>
#include <vector>

#include "flp/grobner.hpp"

namespace flp::detail {

struct VTerm {
    std::uint32_t pos;
    Monomial mono;
    Rational coeff;
};

using VPoly = std::vector<VTerm>;

class Engine {
public:
    Engine(std::size_t rank_m, std::size_t nvars, ModuleOrder order);

    std::size_t rank_m() const noexcept { return rank_m_; }
    std::size_t nvars() const noexcept { return nvars_; }
    const ModuleOrder& order() const noexcept { return order_; }

    int cmp(const VTerm& a, const VTerm& b) const { return order_.compare(a.pos, a.mono, b.pos, b.mono); }
    void sort(VPoly& p) const;

    VPoly import(const ModuleElement& v) const;
    ModuleElement export_element(const VPoly& p) const;

    // work[from..] - c * m * g
    VPoly sub_scaled(const VPoly& work, std::size_t from, const Rational& c, const Monomial& m, const VPoly& g) const;
    // Division by the reducers (first applicable reducer wins).  With
    // full == false only the leading term is reduced.
    VPoly reduce(VPoly p, const std::vector<const VPoly*>& reducers, bool full) const;
    VPoly spoly(const VPoly& a, const VPoly& b) const;

    // Reduced Groebner basis, sorted descending by leading term.
    std::vector<VPoly> groebner(const std::vector<VPoly>& gens) const;
    std::vector<VPoly> interreduce(const std::vector<const VPoly*>& basis) const;
    bool certify(const std::vector<VPoly>& basis) const;

    static void make_monic(VPoly& p);

private:
    std::size_t rank_m_;
    std::size_t nvars_;
    ModuleOrder order_;
};

std::vector<ModuleElement> intersect_elements(std::span<const ModuleElement> a, std::span<const ModuleElement> b,
                                              std::size_t rank_m, std::size_t nvars, const ModuleOrder& order);

}  // namespace flp::detail
