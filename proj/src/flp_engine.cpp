#include "flp/flp_engine.hpp"

#include <algorithm>

namespace flp {

std::string to_string(Branch b) { return b == Branch::unit_ideal ? "unit_ideal" : "proper_ideal"; }

namespace {

FlpFactorization assemble(const PolyMatrix& F, std::size_t r, const CandidateTrace& c, const FreeBasisOptions& opts) {
    FlpFactorization out;
    out.F1 = free_basis(c.quotient.generators, r, c.certificate, opts).basis;
    out.G = solve_left_factor(F, out.F1);
    out.requested = c.divisor;
    out.d_r_of_G = d_i(out.G, r);
    out.f = out.d_r_of_G;
    out.verified = check_factorization(F, out.G, out.F1);
    return out;
}

struct Setup {
    std::size_t rank = 0;
    Polynomial d_r;
    ColumnReducedMinors column_minors;
    IdealGB minor_ideal;
    SubmoduleGB K;
};

Setup prepare(const PolyMatrix& F, const FlpOptions& options) {
    Setup s;
    if (F.rows() == 0 || F.cols() == 0) fail(ErrorKind::precondition, "empty matrix");
    s.rank = rank(F);
    if (s.rank == 0) fail(ErrorKind::precondition, "matrix has rank 0");
    if (s.rank == F.rows())
        fail(ErrorKind::precondition,
             "matrix has full row rank; the only divisor of interest is 1 and this case is not handled");
    s.d_r = d_i(F, s.rank);
    if (!is_squarefree(s.d_r))
        fail(ErrorKind::precondition, "d_" + std::to_string(s.rank) + " = " + to_string(s.d_r) + " is not square-free");
    s.column_minors = column_reduced_minors(F, s.rank);
    s.minor_ideal = ideal_reduced_gb(s.column_minors.values);
    ModuleOrder order;
    order.base = options.order;
    s.K = row_module(F, order);
    return s;
}

DivisorLattice lattice_for(const Polynomial& d, std::size_t nvars, const FlpOptions& options) {
    const auto factors =
        options.factors ? validate_factors(d, *options.factors) : irreducible_factors(d, options.factor_limits);
    return enumerate_divisors(factors, nvars);
}

QuotientResult candidate_quotient(const Setup& s, const Polynomial& f, Branch branch) {
    if (branch == Branch::unit_ideal) return quotient_by_poly(s.K, f);
    std::vector<Polynomial> J;
    for (const auto& g : s.minor_ideal.generators) J.push_back(f * g);
    return quotient_by_ideal(s.K, J);
}

CandidateTrace evaluate(const Setup& s, std::size_t index, const Polynomial& f, Branch branch) {
    CandidateTrace c;
    c.index = index;
    c.divisor = f;
    c.quotient = candidate_quotient(s, f, branch);
    c.certificate = freeness_check(c.quotient.generators, s.rank);
    c.free = c.certificate.free;
    return c;
}

bool dominated(const FlpRun& run, std::size_t i, std::size_t j) {
    const auto& a = run.trace[i];
    const auto& b = run.trace[j];
    if (run.branch == Branch::unit_ideal) return !associated(a.divisor, b.divisor) && divides(a.divisor, b.divisor);
    return module_proper_subset(a.quotient.quotient, b.quotient.quotient);
}

}  // namespace

bool check_factorization(const PolyMatrix& F, const PolyMatrix& G, const PolyMatrix& F1) {
    if (G.rows() != F.rows() || F1.cols() != F.cols() || G.cols() != F1.rows()) return false;
    if (!(mat_mul(G, F1) == F)) return false;
    const std::size_t r = F1.rows();
    if (rank(F) != r) return false;
    return associated(d_i(G, r) * d_i(F1, r), d_i(F, r));
}

FlpRun flp_run(const PolyMatrix& F, const FlpOptions& options) {
    const Setup s = prepare(F, options);
    FlpRun run;
    run.F = F;
    run.rank = s.rank;
    run.d_r = s.d_r;
    run.column_minors = s.column_minors;
    run.minor_ideal = s.minor_ideal;
    run.branch = s.minor_ideal.is_unit() && !options.force_proper_ideal_branch ? Branch::unit_ideal
                                                                             : Branch::proper_ideal;
    run.lattice = lattice_for(s.d_r, F.nvars(), options);

    for (std::size_t i = 0; i < run.lattice.divisors.size(); ++i)
        run.trace.push_back(evaluate(s, i, run.lattice.divisors[i], run.branch));

    std::vector<std::size_t> P;
    for (std::size_t i = 0; i < run.trace.size(); ++i)
        if (run.trace[i].free) P.push_back(i);

    if (options.all_factorizations) {
        for (auto i : P) {
            run.trace[i].selected = true;
            run.W.push_back(assemble(F, s.rank, run.trace[i], options.basis_options));
        }
        return run;
    }

    // Repeatedly take the first candidate not dominated by any other in P,
    // emit it, then drop it together with everything it dominates or equals.
    while (!P.empty()) {
        std::size_t pick = P.size();
        for (std::size_t a = 0; a < P.size() && pick == P.size(); ++a) {
            bool top = true;
            for (std::size_t b = 0; b < P.size() && top; ++b)
                if (a != b && dominated(run, P[a], P[b])) top = false;
            if (top) pick = a;
        }
        const std::size_t chosen = P[pick];
        run.trace[chosen].selected = true;
        run.W.push_back(assemble(F, s.rank, run.trace[chosen], options.basis_options));
        std::erase_if(P, [&](std::size_t j) {
            if (j == chosen) return true;
            if (run.branch == Branch::unit_ideal) return divides(run.trace[j].divisor, run.trace[chosen].divisor);
            return module_subset(run.trace[j].quotient.quotient, run.trace[chosen].quotient.quotient);
        });
    }
    return run;
}

std::vector<FlpFactorization> flp_factorize(const PolyMatrix& F, const FlpOptions& options) {
    return flp_run(F, options).W;
}

std::optional<FlpFactorization> factorize_wrt(const PolyMatrix& F, const Polynomial& f, const FlpOptions& options) {
    const Setup s = prepare(F, options);
    if (f.is_zero() || !divides(f, s.d_r))
        fail(ErrorKind::invalid_argument, to_string(f) + " does not divide d_" + std::to_string(s.rank) + " = " +
                                              to_string(s.d_r));
    const Branch branch =
        s.minor_ideal.is_unit() && !options.force_proper_ideal_branch ? Branch::unit_ideal : Branch::proper_ideal;
    CandidateTrace c = evaluate(s, 0, f.monic(), branch);
    if (!c.free) return std::nullopt;
    FlpFactorization out = assemble(F, s.rank, c, options.basis_options);
    if (!associated(out.d_r_of_G, f)) return std::nullopt;
    return out;
}

bool is_flp_in_W(const FlpRun& run, std::size_t trace_index) {
    if (trace_index >= run.trace.size()) fail(ErrorKind::invalid_argument, "is_flp_in_W: index out of range");
    if (!run.trace[trace_index].free) return false;
    for (std::size_t j = 0; j < run.trace.size(); ++j)
        if (j != trace_index && run.trace[j].free && dominated(run, trace_index, j)) return false;
    return true;
}

FlpRun frp_run(const PolyMatrix& F, const FlpOptions& options) {
    FlpRun run = flp_run(F.transpose(), options);
    run.F = F;
    for (auto& w : run.W) {
        w.F1 = w.F1.transpose();
        w.G = w.G.transpose();
    }
    return run;
}

std::vector<FlpFactorization> frp_factorize(const PolyMatrix& F, const FlpOptions& options) {
    return frp_run(F, options).W;
}

}  // namespace flp
