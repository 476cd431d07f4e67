#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "flp/cli_io.hpp"
#include "flp/flp_engine.hpp"
#include "test_support.hpp"

using namespace flp;
using namespace flp::testing;

namespace {

const std::vector<std::string> variables{"z1", "z2", "z3"};

std::vector<ResultDoc> emitted;

struct Outcome {
    bool ok = true;
    std::ostringstream notes;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            if (!ok) notes << "; ";
            notes << what;
            ok = false;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool report(int number, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " ("
              << seconds_since(start) << " s)";
    if (!out.ok) std::cout << " -- " << out.notes.str();
    std::cout << std::endl;
    return out.ok;
}

bool same_set_up_to_constant(std::vector<Polynomial> a, std::vector<Polynomial> b) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        auto it = std::find_if(b.begin(), b.end(), [&](const Polynomial& q) { return associated(p, q); });
        if (it == b.end()) return false;
        b.erase(it);
    }
    return true;
}

bool same_up_to_sign(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i] && a[i] != -b[i]) return false;
    return true;
}

ResultDoc document(const PolyMatrix& F) {
    JobSpec job;
    job.variables = variables;
    job.matrix = F;
    return run_factorize(job);
}

const CandidateTrace& candidate(const FlpRun& run, const Polynomial& f) {
    return run.trace.at(run.lattice.index_of(f));
}

void invariants(Outcome& out, const PolyMatrix& F, const std::vector<FlpFactorization>& ws, const std::string& tag) {
    const std::size_t r = rank(F);
    const Polynomial d = d_i(F, r);
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const auto& w = ws[i];
        const std::string at = tag + " entry " + std::to_string(i);
        out.expect(mat_mul(w.G, w.F1) == F, at + ": G*F1 != F");
        out.expect(w.G.cols() == r && w.F1.rows() == r, at + ": wrong shapes");
        out.expect(rank(w.F1) == r, at + ": F1 not full row rank");
        out.expect(associated(d_i(w.G, r) * d_i(w.F1, r), d), at + ": d_r not multiplicative");
        for (std::size_t j = 0; j < ws.size(); ++j)
            if (i != j)
                out.expect(!module_proper_subset(row_module(w.F1), row_module(ws[j].F1)),
                           at + ": module properly contained in entry " + std::to_string(j));
    }
}

// K_1 : (d/f) against K : <d c_1, ..., d c_xi> for every factorization of F.
void module_identity(Outcome& out, const PolyMatrix& F, const std::string& tag) {
    FlpOptions all;
    all.all_factorizations = true;
    const FlpRun run = flp_run(F, all);
    out.expect(!run.W.empty(), tag + ": no factorizations");
    std::vector<Polynomial> dc;
    for (const auto& c : run.column_minors.values)
        if (!c.is_zero()) dc.push_back(run.d_r * c);
    const SubmoduleGB K = row_module(F);
    const SubmoduleGB right = quotient_by_ideal(K, dc).quotient;
    for (const auto& w : run.W) {
        const Polynomial f = d_i(w.G, run.rank);
        const SubmoduleGB left = quotient_by_poly(row_module(w.F1), exact_divide(run.d_r, f)).quotient;
        out.expect(same_reduced_basis(left, right), tag + ": identity fails for f = " + to_string(f));
    }
}

PolyMatrix random_rank2(std::mt19937& rng) {
    for (;;) {
        const PolyMatrix G = random_matrix(rng, 3, 2, 1, 2);
        const PolyMatrix F1 = random_matrix(rng, 2, 3, 1, 2);
        const PolyMatrix F = mat_mul(G, F1);
        if (rank(F) == 2) return F;
    }
}

// G1 with square-free d_2(G1) = a b, F1 with unit maximal-minor ideal.
// Odd trials give G1 reduced minors {0, s, t} with s, t coprime non-units.
PolyMatrix random_construction(std::mt19937& rng, bool proper) {
    const Polynomial pool[] = {z1, z2, z3, z1 - one, z3 + one};
    std::uniform_int_distribution<int> side(0, 2);
    Polynomial a = one;
    Polynomial b = one;
    for (const auto& p : pool) {
        const int s = side(rng);
        if (s == 1) a = a * p;
        if (s == 2) b = b * p;
    }
    const std::pair<Polynomial, Polynomial> coprime[] = {{z1, z3}, {z2, z1 + one}, {z3, z2 - one}, {z1, z2}};
    std::uniform_int_distribution<int> pick(0, 3);
    const auto& [s, t] = coprime[pick(rng)];
    const PolyMatrix core =
        proper ? mat({{a * s, zero}, {a * t, zero}, {zero, b}})
               : mat({{a, zero}, {zero, b}, {a * random_poly(rng, 1, 2), b * random_poly(rng, 1, 2)}});
    const PolyMatrix G1 = mat_mul(random_unimodular(rng, 3, 2), core);
    const PolyMatrix F1 = mat_mul(mat({{one, zero, random_poly(rng, 1, 2)}, {zero, one, random_poly(rng, 1, 2)}}),
                                  random_unimodular(rng, 3, 2));
    return mat_mul(G1, F1);
}

std::vector<ModuleElement> random_elements(std::mt19937& rng, std::size_t count, std::size_t m) {
    std::vector<ModuleElement> out;
    for (std::size_t i = 0; i < count; ++i) {
        ModuleElement v;
        for (std::size_t j = 0; j < m; ++j) v.push_back(random_poly(rng, 2, 3));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

int main() {
    bool all_ok = true;

    all_ok &= report(1, "first worked example end to end", [](Outcome& out) {
        const auto start = Clock::now();
        const PolyMatrix F = example1();
        const FlpRun run = flp_run(F);
        out.expect(run.rank == 2, "rank != 2");
        out.expect(associated(run.d_r, (z1 - one) * z2), "d_2 != (z1-1) z2");
        out.expect(same_set_up_to_constant(run.column_minors.values, {one, z2, -z1}), "column reduced minors");
        out.expect(run.minor_ideal.is_unit(), "minor ideal is not {1}");
        out.expect(run.branch == Branch::unit_ideal, "wrong branch");
        out.expect(run.lattice.divisors.size() == 4, "divisor count");
        out.expect(candidate(run, one).free, "K:1 should be free");
        out.expect(candidate(run, z1 - one).free, "K:(z1-1) should be free");
        const auto& k3 = candidate(run, z2);
        out.expect(!k3.free, "K:z2 should not be free");
        out.expect(same_set_up_to_constant(k3.certificate.minors.values, {(z1 - one) * (z1 - one), -z2, z3 + one}),
                   "K:z2 minors");
        out.expect(!candidate(run, (z1 - one) * z2).free, "K:d should not be free");
        out.expect(run.W.size() == 1, "W should have one entry");
        if (run.W.size() == 1) {
            const auto& w = run.W.front();
            out.expect(associated(w.f, z1 - one), "f != z1 - 1");
            out.expect(module_equal(row_module(w.F1),
                                    row_module(mat({{zero, z2, z1 - one}, {z1 * z2 - z2, zero, z3 + one}}))),
                       "row module of F1");
            out.expect(mat_mul(w.G, w.F1) == F, "G*F1 != F");
        }
        emitted.push_back(document(F));
        const double t = seconds_since(start);
        out.expect(t < 10.0, "runtime " + std::to_string(t) + " s exceeds 10 s");
    });

    all_ok &= report(2, "second worked example end to end", [](Outcome& out) {
        const auto start = Clock::now();
        const PolyMatrix F = example2();
        const FlpRun run = flp_run(F);
        out.expect(run.minor_ideal.generators == std::vector<Polynomial>{z1, z3}, "minor ideal != {z1, z3}");
        out.expect(run.branch == Branch::proper_ideal, "wrong branch");
        out.expect(run.lattice.divisors.size() == 8, "divisor count");
        for (std::size_t k = 0; k < run.trace.size(); ++k) {
            const auto& t = run.trace[k];
            if (associated(t.divisor, z1)) {
                out.expect(!t.free, "K_2 should not be free");
                out.expect(same_set_up_to_constant(t.certificate.minors.values, {z1, -z2, -z3}), "K_2 minors");
            } else {
                out.expect(t.free, "K for " + to_string(t.divisor) + " should be free");
            }
        }
        out.expect(run.W.size() == 1, "W should have one entry");
        if (run.W.size() == 1) {
            const auto& w = run.W.front();
            out.expect(associated(w.f, z1 * z2 * z3), "f != z1 z2 z3");
            out.expect(module_equal(row_module(w.F1), row_module(mat({{zero, z1, z3}, {-one, one, zero}}))),
                       "row module of F1");
            out.expect(mat_mul(w.G, w.F1) == F, "G*F1 != F");
            out.expect(associated(d_i(w.G, 2), z1 * z2 * z3), "d_2(G) != z1 z2 z3");
        }
        emitted.push_back(document(F));
        const double t = seconds_since(start);
        out.expect(t < 30.0, "runtime " + std::to_string(t) + " s exceeds 30 s");
    });

    all_ok &= report(3, "K_1 : (d/f) equals K : <d c_i> on both examples", [](Outcome& out) {
        module_identity(out, example1(), "first example");
        module_identity(out, example2(), "second example");
    });

    all_ok &= report(4, "reduced minors agree across column choices on 50 random matrices", [](Outcome& out) {
        std::mt19937 rng(2024);
        const std::vector<std::size_t> all_rows{0, 1, 2};
        for (int trial = 0; trial < 50; ++trial) {
            const PolyMatrix F = random_rank2(rng);
            std::vector<std::vector<Polynomial>> found;
            for (const auto& cols : index_subsets(3, 2)) {
                if (rank(F.submatrix(all_rows, cols)) != 2) continue;
                found.push_back(column_reduced_minors_for(F, cols).values);
            }
            out.expect(!found.empty(), "trial " + std::to_string(trial) + ": no full column rank submatrix");
            for (const auto& v : found)
                out.expect(same_up_to_sign(v, found.front()), "trial " + std::to_string(trial) + ": minors differ");
        }
    });

    all_ok &= report(5, "round trip on 25 random constructions", [](Outcome& out) {
        std::mt19937 rng(5);
        for (int trial = 0; trial < 25; ++trial) {
            const std::string tag = "trial " + std::to_string(trial);
            const PolyMatrix F = random_construction(rng, trial % 2 == 1);
            try {
                const auto ws = flp_factorize(F);
                out.expect(!ws.empty(), tag + ": no factorization");
                invariants(out, F, ws, tag);
                emitted.push_back(document(F));
            } catch (const Error& e) {
                out.expect(false, tag + ": " + e.what());
            }
        }
    });

    all_ok &= report(6, "Groebner engine certification, idempotence and quotient composition", [](Outcome& out) {
        FlpOptions all;
        all.all_factorizations = true;
        for (const auto& F : {example1(), example2()}) {
            const FlpRun run = flp_run(F, all);
            out.expect(buchberger_certify(row_module(F)), "row module");
            out.expect(buchberger_certify(run.minor_ideal), "minor ideal");
            for (const auto& t : run.trace) {
                out.expect(buchberger_certify(t.quotient.quotient), "quotient for " + to_string(t.divisor));
                out.expect(buchberger_certify(t.certificate.minors_gb), "minors for " + to_string(t.divisor));
            }
            for (const auto& w : run.W) out.expect(buchberger_certify(row_module(w.F1)), "row module of F1");
        }

        std::mt19937 rng(6);
        for (int trial = 0; trial < 100; ++trial) {
            const std::string tag = "random " + std::to_string(trial);
            if (trial % 2 == 0) {
                std::vector<Polynomial> gens;
                for (int k = 0; k < 3; ++k) gens.push_back(random_poly(rng, 2, 3));
                const IdealGB gb = ideal_reduced_gb(gens);
                out.expect(buchberger_certify(gb), tag + ": ideal not certified");
                out.expect(ideal_reduced_gb(gb.generators).generators == gb.generators, tag + ": ideal not idempotent");
            } else {
                const auto gens = random_elements(rng, 3, 2);
                const SubmoduleGB gb = module_reduced_gb(gens, 2, N);
                out.expect(buchberger_certify(gb), tag + ": module not certified");
                out.expect(module_reduced_gb(gb.generators, 2, N).generators == gb.generators,
                           tag + ": module not idempotent");
            }
        }

        const SubmoduleGB K = row_module(example2());
        const std::vector<std::vector<Polynomial>> ideals{{z1, z3}, {z2, z1 + z3}, {z1 * z2 * z3}};
        for (const auto& I : ideals) {
            for (const auto& J : ideals) {
                std::vector<Polynomial> IJ;
                for (const auto& a : I)
                    for (const auto& b : J) IJ.push_back(a * b);
                const SubmoduleGB left = quotient_by_ideal(quotient_by_ideal(K, I).quotient, J).quotient;
                const SubmoduleGB right = quotient_by_ideal(K, IJ).quotient;
                out.expect(buchberger_certify(left) && buchberger_certify(right), "composition bases not certified");
                out.expect(same_reduced_basis(left, right), "(K:I):J != K:IJ");
            }
        }
    });

    all_ok &= report(7, "forced proper-ideal branch reproduces W on the first example", [](Outcome& out) {
        FlpOptions forced;
        forced.force_proper_ideal_branch = true;
        const auto a = flp_factorize(example1());
        const auto b = flp_factorize(example1(), forced);
        out.expect(a.size() == b.size(), "different number of entries");
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            out.expect(a[i].G == b[i].G, "G differs");
            out.expect(a[i].F1 == b[i].F1, "F1 differs");
            out.expect(a[i].f == b[i].f, "f differs");
        }
    });

    all_ok &= report(8, "verification accepts every emitted result document", [](Outcome& out) {
        out.expect(emitted.size() >= 27, "only " + std::to_string(emitted.size()) + " documents emitted");
        for (std::size_t i = 0; i < emitted.size(); ++i) {
            const VerifyReport rep = verify_report(emitted[i]);
            out.expect(rep.ok, "document " + std::to_string(i) + " rejected" +
                                   (rep.failures.empty() ? std::string() : ": " + rep.failures.front()));
            out.expect(run_verify(parse_result(to_json(emitted[i]))),
                       "document " + std::to_string(i) + " rejected after a JSON round trip");
        }
    });

    return all_ok ? 0 : 1;
}
