#include "flp/grobner.hpp"

#include <algorithm>
#include <tuple>

#include "engine.hpp"

namespace flp {

int ModuleOrder::compare(std::size_t pa, const Monomial& a, std::size_t pb, const Monomial& b) const {
    const std::size_t n = a.size();
    const std::size_t z = n - tag_vars;
    if (tag_vars > 0) {
        if (int c = compare_degrevlex(a, b, z, n); c != 0) return c;
    }
    auto by_position = [&]() -> int {
        if (pa == pb) return 0;
        const bool a_greater = reverse_positions ? pa > pb : pa < pb;
        return a_greater ? 1 : -1;
    };
    if (kind == Kind::position_over_term) {
        if (int c = by_position(); c != 0) return c;
        return base.compare(a, b, z);
    }
    if (int c = base.compare(a, b, z); c != 0) return c;
    return by_position();
}

namespace detail {

Engine::Engine(std::size_t rank_m, std::size_t nvars, ModuleOrder order)
    : rank_m_(rank_m), nvars_(nvars), order_(std::move(order)) {}

void Engine::sort(VPoly& p) const {
    std::sort(p.begin(), p.end(), [&](const VTerm& a, const VTerm& b) { return cmp(a, b) > 0; });
}

VPoly Engine::import(const ModuleElement& v) const {
    if (v.size() != rank_m_) fail(ErrorKind::invalid_argument, "module element has wrong length");
    VPoly out;
    for (std::size_t pos = 0; pos < v.size(); ++pos) {
        if (v[pos].nvars() != nvars_) fail(ErrorKind::invalid_argument, "module element has wrong variable count");
        for (const auto& t : v[pos].terms()) out.push_back({static_cast<std::uint32_t>(pos), t.mono, t.coeff});
    }
    sort(out);
    return out;
}

ModuleElement Engine::export_element(const VPoly& p) const {
    std::vector<std::vector<Term>> parts(rank_m_);
    for (const auto& t : p) parts[t.pos].push_back({t.mono, t.coeff});
    ModuleElement out;
    out.reserve(rank_m_);
    for (auto& part : parts) out.push_back(Polynomial::from_terms(nvars_, std::move(part)));
    return out;
}

VPoly Engine::sub_scaled(const VPoly& work, std::size_t from, const Rational& c, const Monomial& m,
                         const VPoly& g) const {
    VPoly out;
    out.reserve(work.size() - from + g.size());
    std::size_t i = from, j = 0;
    while (i < work.size() && j < g.size()) {
        VTerm gt{g[j].pos, g[j].mono * m, 0};
        const int c3 = cmp(work[i], gt);
        if (c3 > 0) {
            out.push_back(work[i++]);
        } else if (c3 < 0) {
            gt.coeff = -c * g[j].coeff;
            out.push_back(std::move(gt));
            ++j;
        } else {
            Rational s = work[i].coeff - c * g[j].coeff;
            if (s != 0) {
                gt.coeff = std::move(s);
                out.push_back(std::move(gt));
            }
            ++i;
            ++j;
        }
    }
    for (; i < work.size(); ++i) out.push_back(work[i]);
    for (; j < g.size(); ++j) out.push_back({g[j].pos, g[j].mono * m, -c * g[j].coeff});
    return out;
}

VPoly Engine::reduce(VPoly p, const std::vector<const VPoly*>& reducers, bool full) const {
    VPoly rem;
    std::size_t head = 0;
    while (head < p.size()) {
        const VTerm& t = p[head];
        const VPoly* hit = nullptr;
        for (const VPoly* g : reducers) {
            const VTerm& lt = g->front();
            if (lt.pos == t.pos && lt.mono.divides(t.mono)) {
                hit = g;
                break;
            }
        }
        if (hit != nullptr) {
            const VTerm& lt = hit->front();
            Rational c = t.coeff / lt.coeff;
            Monomial q = lt.mono.quotient_of(t.mono);
            p = sub_scaled(p, head, c, q, *hit);
            head = 0;
        } else if (full) {
            rem.push_back(t);
            ++head;
        } else {
            rem.insert(rem.end(), p.begin() + static_cast<std::ptrdiff_t>(head), p.end());
            return rem;
        }
    }
    return rem;
}

void Engine::make_monic(VPoly& p) {
    if (p.empty() || p.front().coeff == 1) return;
    Rational inv = 1 / p.front().coeff;
    for (auto& t : p) t.coeff *= inv;
}

VPoly Engine::spoly(const VPoly& a, const VPoly& b) const {
    const VTerm& la = a.front();
    const VTerm& lb = b.front();
    Monomial l = la.mono.lcm(lb.mono);
    Monomial ma = la.mono.quotient_of(l);
    Monomial mb = lb.mono.quotient_of(l);
    VPoly sa;
    sa.reserve(a.size());
    Rational inv = 1 / la.coeff;
    for (const auto& t : a) sa.push_back({t.pos, t.mono * ma, t.coeff * inv});
    Rational c = 1 / lb.coeff;
    return sub_scaled(sa, 0, c, mb, b);
}

namespace {

struct Pair {
    std::size_t i, j;
    std::uint32_t pos;
    Monomial lcm;
};

}  // namespace

std::vector<VPoly> Engine::groebner(const std::vector<VPoly>& gens) const {
    std::vector<VPoly> polys;
    std::vector<char> active;
    std::vector<Pair> pairs;
    const bool product_criterion = rank_m_ == 1;

    auto active_list = [&]() {
        std::vector<const VPoly*> out;
        for (std::size_t k = 0; k < polys.size(); ++k)
            if (active[k]) out.push_back(&polys[k]);
        return out;
    };

    // Gebauer-Moeller installation of a new basis element.
    auto update = [&](std::size_t h) {
        const VTerm& H = polys[h].front();
        struct Cand {
            std::size_t g;
            Monomial lcm;
            bool coprime;
        };
        std::vector<Cand> cands;
        for (std::size_t g = 0; g < polys.size(); ++g) {
            if (!active[g] || g == h) continue;
            const VTerm& G = polys[g].front();
            if (G.pos != H.pos) continue;
            cands.push_back({g, H.mono.lcm(G.mono), product_criterion && H.mono.coprime(G.mono)});
        }
        std::vector<char> in_d(cands.size(), 0);
        for (std::size_t k = 0; k < cands.size(); ++k) {
            bool keep = cands[k].coprime;
            if (!keep) {
                keep = true;
                for (std::size_t o = 0; o < cands.size() && keep; ++o) {
                    if (o == k) continue;
                    if ((o > k || in_d[o]) && cands[o].lcm.divides(cands[k].lcm)) keep = false;
                }
            }
            if (keep) in_d[k] = 1;
        }
        std::vector<Pair> next;
        next.reserve(pairs.size() + cands.size());
        for (auto& p : pairs) {
            bool drop = false;
            if (p.pos == H.pos && H.mono.divides(p.lcm)) {
                const Monomial li = polys[p.i].front().mono.lcm(H.mono);
                const Monomial lj = polys[p.j].front().mono.lcm(H.mono);
                drop = !(li == p.lcm) && !(lj == p.lcm);
            }
            if (!drop) next.push_back(std::move(p));
        }
        for (std::size_t k = 0; k < cands.size(); ++k) {
            if (in_d[k] && !cands[k].coprime) next.push_back({cands[k].g, h, H.pos, cands[k].lcm});
        }
        pairs = std::move(next);
        for (std::size_t g = 0; g < polys.size(); ++g) {
            if (!active[g] || g == h) continue;
            const VTerm& G = polys[g].front();
            if (G.pos == H.pos && H.mono.divides(G.mono)) active[g] = 0;
        }
        active[h] = 1;
    };

    auto install = [&](VPoly p) {
        make_monic(p);
        polys.push_back(std::move(p));
        active.push_back(0);
        update(polys.size() - 1);
    };

    for (const auto& g : gens) {
        if (g.empty()) continue;
        VPoly h = reduce(g, active_list(), true);
        if (!h.empty()) install(std::move(h));
    }

    while (!pairs.empty()) {
        // Normal strategy: smallest lcm first, ties by insertion indices.
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            const int c = order_.compare(pairs[k].pos, pairs[k].lcm, pairs[best].pos, pairs[best].lcm);
            if (c < 0 || (c == 0 && std::tie(pairs[k].j, pairs[k].i) < std::tie(pairs[best].j, pairs[best].i)))
                best = k;
        }
        Pair p = std::move(pairs[best]);
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
        VPoly s = spoly(polys[p.i], polys[p.j]);
        VPoly h = reduce(std::move(s), active_list(), true);
        if (!h.empty()) install(std::move(h));
    }

    return interreduce(active_list());
}

std::vector<VPoly> Engine::interreduce(const std::vector<const VPoly*>& basis) const {
    // Minimalize, then tail-reduce each element against the others.
    std::vector<const VPoly*> minimal;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const VTerm& lk = basis[k]->front();
        bool redundant = false;
        for (std::size_t o = 0; o < basis.size() && !redundant; ++o) {
            if (o == k) continue;
            const VTerm& lo = basis[o]->front();
            if (lo.pos != lk.pos || !lo.mono.divides(lk.mono)) continue;
            // Equal leading monomials: keep the lower index.
            redundant = !(lo.mono == lk.mono) || o < k;
        }
        if (!redundant) minimal.push_back(basis[k]);
    }
    std::vector<VPoly> out;
    out.reserve(minimal.size());
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        std::vector<const VPoly*> others;
        for (std::size_t o = 0; o < minimal.size(); ++o)
            if (o != k) others.push_back(minimal[o]);
        VPoly g = reduce(*minimal[k], others, true);
        make_monic(g);
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [&](const VPoly& a, const VPoly& b) { return cmp(a.front(), b.front()) > 0; });
    return out;
}

bool Engine::certify(const std::vector<VPoly>& basis) const {
    std::vector<const VPoly*> refs;
    for (const auto& g : basis) {
        if (g.empty()) return false;
        refs.push_back(&g);
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (basis[i].front().pos != basis[j].front().pos) continue;
            if (!reduce(spoly(basis[i], basis[j]), refs, true).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

using detail::Engine;
using detail::VPoly;

namespace {

std::vector<VPoly> import_all(const Engine& e, std::span<const ModuleElement> gens) {
    std::vector<VPoly> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(e.import(g));
    return out;
}

ModuleElement as_element(const Polynomial& p) { return ModuleElement{p}; }

}  // namespace

ModuleElement zero_element(std::size_t m, std::size_t nvars) { return ModuleElement(m, Polynomial(nvars)); }

ModuleElement unit_element(std::size_t m, std::size_t nvars, std::size_t pos) {
    ModuleElement v = zero_element(m, nvars);
    v.at(pos) = Polynomial::constant(nvars, 1);
    return v;
}

ModuleElement scale(const ModuleElement& v, const Polynomial& p) {
    ModuleElement out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(mul(x, p));
    return out;
}

ModuleElement add(const ModuleElement& a, const ModuleElement& b) {
    if (a.size() != b.size()) fail(ErrorKind::invalid_argument, "module elements have different lengths");
    ModuleElement out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

bool is_zero_element(const ModuleElement& v) {
    return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

IdealGB ideal_reduced_gb(std::span<const Polynomial> gens, const MonomialOrder& order) {
    IdealGB out;
    out.order = order;
    out.reduced = true;
    if (gens.empty()) return out;
    const std::size_t n = gens.front().nvars();
    std::vector<ModuleElement> elems;
    for (const auto& g : gens) elems.push_back(as_element(g));
    ModuleOrder mo;
    mo.base = order;
    Engine e(1, n, mo);
    for (const auto& g : e.groebner(import_all(e, elems))) out.generators.push_back(e.export_element(g).front());
    return out;
}

SubmoduleGB module_reduced_gb(std::span<const ModuleElement> gens, std::size_t rank_m, std::size_t nvars,
                              const ModuleOrder& order) {
    Engine e(rank_m, nvars, order);
    SubmoduleGB out;
    out.rank_m = rank_m;
    out.nvars = nvars;
    out.order = order;
    out.reduced = true;
    for (const auto& g : e.groebner(import_all(e, gens))) out.generators.push_back(e.export_element(g));
    return out;
}

SubmoduleGB as_basis(std::vector<ModuleElement> gens, std::size_t rank_m, std::size_t nvars,
                     const ModuleOrder& order) {
    SubmoduleGB out;
    out.rank_m = rank_m;
    out.nvars = nvars;
    out.order = order;
    out.reduced = false;
    out.generators = std::move(gens);
    return out;
}

ModuleElement normal_form(const ModuleElement& v, const SubmoduleGB& gb) {
    Engine e(gb.rank_m, gb.nvars, gb.order);
    std::vector<VPoly> basis = import_all(e, gb.generators);
    std::vector<const VPoly*> refs;
    for (const auto& g : basis)
        if (!g.empty()) refs.push_back(&g);
    return e.export_element(e.reduce(e.import(v), refs, true));
}

Polynomial normal_form(const Polynomial& p, const IdealGB& gb) {
    if (gb.generators.empty()) return p;
    ModuleOrder mo;
    mo.base = gb.order;
    std::vector<ModuleElement> elems;
    for (const auto& g : gb.generators) elems.push_back(as_element(g));
    SubmoduleGB wrapped = as_basis(std::move(elems), 1, p.nvars(), mo);
    return normal_form(as_element(p), wrapped).front();
}

bool is_member(const ModuleElement& v, const SubmoduleGB& gb) { return is_zero_element(normal_form(v, gb)); }

// Lifting goes through the graph module {[sum l_i g_i | l]}: under
// position-over-term the first m coordinates dominate, so the normal form
// of [v | 0] is [0 | -lambda] exactly when v is a member.
struct Lifter::Impl {
    std::size_t rank_m;
    std::size_t count;
    Engine engine;
    std::vector<VPoly> basis;
    std::vector<const VPoly*> refs;

    Impl(std::size_t m, std::size_t s, std::size_t nvars, ModuleOrder order)
        : rank_m(m), count(s), engine(m + s, nvars, std::move(order)) {}
};

Lifter::Lifter(std::span<const ModuleElement> gens, std::size_t rank_m, std::size_t nvars, const ModuleOrder& order) {
    ModuleOrder pot = order;
    pot.kind = ModuleOrder::Kind::position_over_term;
    pot.reverse_positions = false;
    impl_ = std::make_unique<Impl>(rank_m, gens.size(), nvars, pot);
    std::vector<VPoly> graph;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].size() != rank_m) fail(ErrorKind::invalid_argument, "lift generator has wrong length");
        ModuleElement aug = gens[i];
        aug.resize(rank_m + gens.size(), Polynomial(nvars));
        aug[rank_m + i] = Polynomial::constant(nvars, 1);
        graph.push_back(impl_->engine.import(aug));
    }
    impl_->basis = impl_->engine.groebner(graph);
    for (const auto& g : impl_->basis) impl_->refs.push_back(&g);
}

Lifter::~Lifter() = default;
Lifter::Lifter(Lifter&&) noexcept = default;
Lifter& Lifter::operator=(Lifter&&) noexcept = default;

std::vector<Polynomial> Lifter::lift(const ModuleElement& v) const {
    const Impl& im = *impl_;
    if (v.size() != im.rank_m) fail(ErrorKind::invalid_argument, "lift target has wrong length");
    const std::size_t nvars = im.engine.nvars();
    ModuleElement aug = v;
    aug.resize(im.rank_m + im.count, Polynomial(nvars));
    VPoly r = im.engine.reduce(im.engine.import(aug), im.refs, true);
    ModuleElement out = im.engine.export_element(r);
    for (std::size_t i = 0; i < im.rank_m; ++i)
        if (!out[i].is_zero()) fail(ErrorKind::not_member, "lift target is not in the generated module");
    std::vector<Polynomial> lambda;
    for (std::size_t i = 0; i < im.count; ++i) lambda.push_back(-out[im.rank_m + i]);
    return lambda;
}

std::vector<Polynomial> lift(const ModuleElement& v, std::span<const ModuleElement> gens, std::size_t nvars,
                             const ModuleOrder& order) {
    if (gens.empty()) {
        if (!is_zero_element(v)) fail(ErrorKind::not_member, "lift target is not in the zero module");
        return {};
    }
    return Lifter(gens, v.size(), nvars, order).lift(v);
}

namespace detail {

std::vector<ModuleElement> intersect_elements(std::span<const ModuleElement> a, std::span<const ModuleElement> b,
                                              std::size_t rank_m, std::size_t nvars, const ModuleOrder& order) {
    if (a.empty() || b.empty()) return {};
    ModuleOrder tagged = order;
    tagged.tag_vars = order.tag_vars + 1;
    const std::size_t n1 = nvars + 1;
    Engine e(rank_m, n1, tagged);
    const Polynomial t = Polynomial::variable(n1, nvars);
    const Polynomial one_minus_t = Polynomial::constant(n1, 1) - t;
    std::vector<VPoly> gens;
    auto push = [&](const ModuleElement& v, const Polynomial& factor) {
        if (v.size() != rank_m) fail(ErrorKind::invalid_argument, "intersection operands have different lengths");
        ModuleElement w;
        for (const auto& x : v) w.push_back(mul(x.extended(1), factor));
        gens.push_back(e.import(w));
    };
    for (const auto& v : a) push(v, t);
    for (const auto& v : b) push(v, one_minus_t);
    std::vector<ModuleElement> out;
    for (const auto& g : e.groebner(gens)) {
        bool tag_free = std::all_of(g.begin(), g.end(), [&](const VTerm& term) { return term.mono[nvars] == 0; });
        if (!tag_free) continue;
        ModuleElement w;
        for (const auto& x : e.export_element(g)) {
            std::vector<Term> ts;
            for (const auto& term : x.terms()) ts.push_back({term.mono.truncated(nvars), term.coeff});
            w.push_back(Polynomial::from_terms(nvars, std::move(ts)));
        }
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace detail

SubmoduleGB module_intersect(const SubmoduleGB& a, const SubmoduleGB& b) {
    if (a.rank_m != b.rank_m) fail(ErrorKind::invalid_argument, "module_intersect: different ambient ranks");
    if (a.nvars != b.nvars) fail(ErrorKind::invalid_argument, "module_intersect: different variable counts");
    auto gens = detail::intersect_elements(a.generators, b.generators, a.rank_m, a.nvars, a.order);
    // The tag-free part of the elimination basis is already reduced; the
    // extra pass re-sorts it under the caller's order.
    return module_reduced_gb(gens, a.rank_m, a.nvars, a.order);
}

bool buchberger_certify(const SubmoduleGB& gb) {
    Engine e(gb.rank_m, gb.nvars, gb.order);
    std::vector<VPoly> basis;
    for (const auto& g : gb.generators) {
        VPoly p = e.import(g);
        if (!p.empty()) basis.push_back(std::move(p));
    }
    return e.certify(basis);
}

bool buchberger_certify(const IdealGB& gb) {
    if (gb.generators.empty()) return true;
    ModuleOrder mo;
    mo.base = gb.order;
    std::vector<ModuleElement> elems;
    for (const auto& g : gb.generators) elems.push_back(as_element(g));
    return buchberger_certify(as_basis(std::move(elems), 1, gb.generators.front().nvars(), mo));
}

}  // namespace flp
