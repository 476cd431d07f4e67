#include "flp/modquot.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <random>

#include "engine.hpp"

namespace flp {

namespace {

ModuleElement monic_element(const ModuleElement& v) {
    // Scale so the first nonzero coordinate has leading coefficient 1.
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        Rational inv = 1 / x.leading_term().coeff;
        ModuleElement out;
        for (const auto& y : v) out.push_back(y.scaled(inv));
        return out;
    }
    return v;
}

bool generates(std::span<const ModuleElement> candidate, const SubmoduleGB& target) {
    SubmoduleGB gb = module_reduced_gb(candidate, target.rank_m, target.nvars, target.order);
    return std::all_of(target.generators.begin(), target.generators.end(),
                       [&](const ModuleElement& g) { return is_member(g, gb); });
}

PolyMatrix ordered_basis_matrix(std::vector<ModuleElement> rows, std::size_t m, std::size_t nvars) {
    // Rows ascend by leading term under position-over-term order.
    detail::Engine e(m, nvars, ModuleOrder{});
    for (auto& r : rows) r = monic_element(r);
    std::stable_sort(rows.begin(), rows.end(), [&](const ModuleElement& a, const ModuleElement& b) {
        auto va = e.import(a);
        auto vb = e.import(b);
        return e.cmp(va.front(), vb.front()) < 0;
    });
    return matrix_from_elements(rows, m, nvars);
}

// Reduced POT basis with the positions in `cols` ranked first.
std::vector<ModuleElement> echelon_pool(std::span<const ModuleElement> gens, std::span<const std::size_t> cols,
                                        std::size_t m, std::size_t n) {
    std::vector<std::size_t> perm(cols.begin(), cols.end());
    for (std::size_t j = 0; j < m; ++j)
        if (std::find(cols.begin(), cols.end(), j) == cols.end()) perm.push_back(j);
    std::vector<ModuleElement> permuted;
    for (const auto& g : gens) {
        ModuleElement v;
        for (auto j : perm) v.push_back(g[j]);
        permuted.push_back(std::move(v));
    }
    std::vector<ModuleElement> pool;
    for (const auto& g : module_reduced_gb(permuted, m, n, ModuleOrder{}).generators) {
        ModuleElement v = zero_element(m, n);
        for (std::size_t k = 0; k < m; ++k) v[perm[k]] = g[k];
        pool.push_back(std::move(v));
    }
    return pool;
}

// Maximal minors over each column subset of r independent generators,
// divided by their gcd; empty when the generators have rank below r.
std::vector<Polynomial> plucker(std::span<const ModuleElement> gens, std::size_t r, std::size_t m, std::size_t n) {
    const PolyMatrix A = matrix_from_elements(gens, m, n);
    for (const auto& rows : index_subsets(A.rows(), r)) {
        std::vector<Polynomial> ms = minors(A.select_rows(rows), r);
        if (std::all_of(ms.begin(), ms.end(), [](const Polynomial& x) { return x.is_zero(); })) continue;
        const Polynomial g = gcd(ms);
        for (auto& x : ms)
            if (!x.is_zero()) x = exact_divide(x, g);
        return ms;
    }
    return {};
}

struct ColumnOp {
    std::size_t target;  // column target += h * column source
    std::size_t source;
    Polynomial h;
};

void apply_column_op(std::vector<ModuleElement>& rows, const ColumnOp& op, bool inverse) {
    for (auto& v : rows) {
        const Polynomial t = v[op.source] * op.h;
        v[op.target] = inverse ? v[op.target] - t : v[op.target] + t;
    }
}

std::pair<std::uint32_t, std::size_t> size_key(const Polynomial& p) { return {p.total_degree(), p.size()}; }

// Elementary column operations chosen by division shrink one maximal minor
// at a time; once some minor is a nonzero constant the transformed module
// has an echelon basis, which is mapped back.
std::optional<std::vector<ModuleElement>> column_reduction_basis(const std::vector<ModuleElement>& gens, std::size_t r,
                                                                 std::size_t m, std::size_t n,
                                                                 const SubmoduleGB& target, std::size_t max_steps) {
    const auto subsets = index_subsets(m, r);
    std::vector<ModuleElement> cur = gens;
    std::vector<ColumnOp> ops;
    for (std::size_t step = 0;; ++step) {
        const auto p = plucker(cur, r, m, n);
        if (p.empty()) return std::nullopt;
        for (std::size_t k = 0; k < subsets.size(); ++k) {
            if (p[k].is_zero() || !p[k].is_constant()) continue;
            auto basis = prune_generators(echelon_pool(cur, subsets[k], m, n), m, n, ModuleOrder{});
            if (basis.size() != r) return std::nullopt;
            for (auto it = ops.rbegin(); it != ops.rend(); ++it) apply_column_op(basis, *it, true);
            if (!generates(basis, target)) return std::nullopt;
            return basis;
        }
        if (step == max_steps) return std::nullopt;

        std::optional<ColumnOp> best;
        std::pair<std::uint32_t, std::size_t> best_key;
        for (std::size_t a = 0; a < subsets.size(); ++a) {
            for (std::size_t b = 0; b < subsets.size(); ++b) {
                const auto& J = subsets[a];
                const auto& K = subsets[b];
                if (a == b || p[a].is_zero() || p[b].is_zero()) continue;
                std::vector<std::size_t> only_j, only_k;
                std::set_difference(J.begin(), J.end(), K.begin(), K.end(), std::back_inserter(only_j));
                std::set_difference(K.begin(), K.end(), J.begin(), J.end(), std::back_inserter(only_k));
                if (only_j.size() != 1) continue;
                const std::vector<Polynomial> divisor{p[b]};
                const Polynomial h = divrem(p[a], divisor).quotients.front();
                if (h.is_zero()) continue;
                for (const auto& signed_h : {h, -h}) {
                    const ColumnOp op{only_j.front(), only_k.front(), signed_h};
                    std::vector<ModuleElement> trial = cur;
                    apply_column_op(trial, op, false);
                    const auto q = plucker(trial, r, m, n);
                    if (q.empty() || q[a].is_zero()) continue;
                    const auto key = size_key(q[a]);
                    if (key < size_key(p[a]) && (!best || key < best_key)) {
                        best = op;
                        best_key = key;
                    }
                }
            }
        }
        if (!best) return std::nullopt;
        apply_column_op(cur, *best, false);
        ops.push_back(*best);
    }
}

QuotientResult package(const SubmoduleGB& K, std::vector<Polynomial> divisor, SubmoduleGB quotient) {
    QuotientResult out;
    out.source = K;
    out.divisor = std::move(divisor);
    std::vector<ModuleElement> pool = K.generators;
    pool.insert(pool.end(), quotient.generators.begin(), quotient.generators.end());
    auto gens = prune_generators(std::move(pool), K.rank_m, K.nvars, K.order);
    out.generators = matrix_from_elements(gens, K.rank_m, K.nvars);
    out.quotient = std::move(quotient);
    return out;
}

}  // namespace

SubmoduleGB row_module(const PolyMatrix& m, const ModuleOrder& order) {
    return module_reduced_gb(m.row_elements(), m.cols(), m.nvars(), order);
}

std::vector<ModuleElement> prune_generators(std::vector<ModuleElement> gens, std::size_t rank_m, std::size_t nvars,
                                            const ModuleOrder& order) {
    std::vector<ModuleElement> list;
    for (auto& g : gens) {
        if (is_zero_element(g)) continue;
        ModuleElement n = monic_element(g);
        if (std::find(list.begin(), list.end(), n) == list.end()) list.push_back(std::move(n));
    }
    for (std::size_t k = list.size(); k-- > 0;) {
        if (list.size() == 1) break;
        std::vector<ModuleElement> others;
        for (std::size_t o = 0; o < list.size(); ++o)
            if (o != k) others.push_back(list[o]);
        SubmoduleGB gb = module_reduced_gb(others, rank_m, nvars, order);
        if (is_member(list[k], gb)) list.erase(list.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return list;
}

QuotientResult quotient_by_poly(const SubmoduleGB& K, const Polynomial& f) {
    if (f.is_zero()) fail(ErrorKind::invalid_argument, "quotient_by_poly: divisor is zero");
    if (f.nvars() != K.nvars) fail(ErrorKind::invalid_argument, "quotient_by_poly: variable count mismatch");
    if (f.is_constant()) {
        SubmoduleGB q = module_reduced_gb(K.generators, K.rank_m, K.nvars, K.order);
        return package(K, {f}, std::move(q));
    }
    // K : f = (K ∩ f R^m) / f
    std::vector<ModuleElement> scaled_units;
    for (std::size_t j = 0; j < K.rank_m; ++j) {
        ModuleElement e = zero_element(K.rank_m, K.nvars);
        e[j] = f;
        scaled_units.push_back(std::move(e));
    }
    auto meet = detail::intersect_elements(K.generators, scaled_units, K.rank_m, K.nvars, K.order);
    for (auto& v : meet)
        for (auto& x : v) x = exact_divide(x, f);
    SubmoduleGB q = module_reduced_gb(meet, K.rank_m, K.nvars, K.order);
    return package(K, {f}, std::move(q));
}

QuotientResult quotient_by_ideal(const SubmoduleGB& K, std::span<const Polynomial> gens) {
    std::vector<Polynomial> nonzero;
    for (const auto& g : gens)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) fail(ErrorKind::invalid_argument, "quotient_by_ideal: all generators are zero");
    SubmoduleGB acc;
    for (std::size_t i = 0; i < nonzero.size(); ++i) {
        QuotientResult part = quotient_by_poly(K, nonzero[i]);
        acc = i == 0 ? std::move(part.quotient) : module_intersect(acc, part.quotient);
    }
    return package(K, std::move(nonzero), std::move(acc));
}

FreenessCertificate freeness_check(const PolyMatrix& gens, std::size_t r) {
    const std::size_t actual = rank(gens);
    if (actual != r)
        fail(ErrorKind::invalid_argument, "freeness_check: generator matrix has rank " + std::to_string(actual) +
                                              ", expected " + std::to_string(r));
    FreenessCertificate cert;
    cert.generators = gens;
    cert.rank = r;
    cert.full_row_rank = gens.rows() == r;
    if (cert.full_row_rank) {
        cert.minors.r = r;
        cert.minors.values = {Polynomial::constant(gens.nvars(), 1)};
        cert.minors_gb = ideal_reduced_gb(cert.minors.values);
        cert.free = true;
        return cert;
    }
    cert.minors = column_reduced_minors(gens, r);
    cert.minors_gb = ideal_reduced_gb(cert.minors.values);
    cert.free = cert.minors_gb.is_unit();
    return cert;
}

FreeBasis free_basis(const PolyMatrix& gens, std::size_t r, const FreenessCertificate& cert,
                     const FreeBasisOptions& options) {
    if (!cert.free) fail(ErrorKind::invalid_argument, "free_basis: module is not certified free");
    const std::size_t m = gens.cols();
    const std::size_t n = gens.nvars();
    if (gens.rows() == r) return {ordered_basis_matrix(gens.row_elements(), m, n)};

    const ModuleOrder pot{};
    const SubmoduleGB target = module_reduced_gb(gens.row_elements(), m, n, pot);

    std::vector<std::vector<ModuleElement>> pools;
    pools.push_back(gens.row_elements());
    // Echelon bases: positions J ranked first, one pool per column subset J.
    for (const auto& cols : index_subsets(m, r)) pools.push_back(echelon_pool(gens.row_elements(), cols, m, n));
    for (auto kind : {ModuleOrder::Kind::position_over_term, ModuleOrder::Kind::term_over_position}) {
        for (const auto& base : {MonomialOrder::degrevlex(), MonomialOrder::lex()}) {
            for (bool reverse : {false, true}) {
                ModuleOrder o;
                o.kind = kind;
                o.base = base;
                o.reverse_positions = reverse;
                pools.push_back(module_reduced_gb(gens.row_elements(), m, n, o).generators);
            }
        }
    }

    std::vector<ModuleElement> merged;
    for (const auto& pool : pools) {
        auto pruned = prune_generators(pool, m, n, pot);
        if (pruned.size() == r) return {ordered_basis_matrix(std::move(pruned), m, n)};
        for (const auto& g : pool) {
            ModuleElement v = monic_element(g);
            if (!is_zero_element(v) && std::find(merged.begin(), merged.end(), v) == merged.end())
                merged.push_back(std::move(v));
        }
    }

    for (const auto& idx : index_subsets(merged.size(), r)) {
        std::vector<ModuleElement> pick;
        for (auto i : idx) pick.push_back(merged[i]);
        if (generates(pick, target)) return {ordered_basis_matrix(std::move(pick), m, n)};
    }

    if (auto basis = column_reduction_basis(gens.row_elements(), r, m, n, target, options.column_reduction_steps))
        return {ordered_basis_matrix(std::move(*basis), m, n)};

    auto base = prune_generators(merged, m, n, pot);
    std::mt19937 rng(options.seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (std::size_t attempt = 0; attempt < options.recombination_attempts; ++attempt) {
        std::vector<ModuleElement> pick;
        for (std::size_t k = 0; k < r; ++k) {
            ModuleElement acc = zero_element(m, n);
            for (const auto& g : base) {
                const int c = coeff(rng);
                if (c != 0) acc = add(acc, scale(g, Polynomial::constant(n, c)));
            }
            pick.push_back(std::move(acc));
        }
        if (generates(pick, target)) return {ordered_basis_matrix(std::move(pick), m, n)};
    }
    fail(ErrorKind::extraction_exhausted,
         "free_basis: module certified free but no basis of " + std::to_string(r) + " rows found within bounds");
}

PolyMatrix solve_left_factor(const PolyMatrix& F, const PolyMatrix& basis) {
    if (F.cols() != basis.cols()) fail(ErrorKind::invalid_argument, "solve_left_factor: column counts differ");
    Lifter lifter(basis.row_elements(), basis.cols(), basis.nvars());
    PolyMatrix G(F.rows(), basis.rows(), F.nvars());
    for (std::size_t i = 0; i < F.rows(); ++i) {
        auto lambda = lifter.lift(F.row(i));
        for (std::size_t j = 0; j < lambda.size(); ++j) G.at(i, j) = std::move(lambda[j]);
    }
    return G;
}

PolyMatrix solve_left_factor(const PolyMatrix& F, const FreeBasis& basis) { return solve_left_factor(F, basis.basis); }

bool module_subset(const SubmoduleGB& a, const SubmoduleGB& b) {
    if (a.rank_m != b.rank_m) fail(ErrorKind::invalid_argument, "module_subset: different ambient ranks");
    SubmoduleGB bb = b.reduced ? b : module_reduced_gb(b.generators, b.rank_m, b.nvars, b.order);
    return std::all_of(a.generators.begin(), a.generators.end(),
                       [&](const ModuleElement& g) { return is_member(g, bb); });
}

bool module_equal(const SubmoduleGB& a, const SubmoduleGB& b) { return module_subset(a, b) && module_subset(b, a); }

bool module_proper_subset(const SubmoduleGB& a, const SubmoduleGB& b) {
    return module_subset(a, b) && !module_subset(b, a);
}

bool same_reduced_basis(const SubmoduleGB& a, const SubmoduleGB& b) {
    if (!(a.order == b.order) || a.rank_m != b.rank_m) return module_equal(a, b);
    SubmoduleGB ra = a.reduced ? a : module_reduced_gb(a.generators, a.rank_m, a.nvars, a.order);
    SubmoduleGB rb = b.reduced ? b : module_reduced_gb(b.generators, b.rank_m, b.nvars, b.order);
    return ra.generators == rb.generators;
}

}  // namespace flp
