#pragma once
/*
 * Text and JSON front end: the polynomial expression grammar, job files,
 * result documents and their independent verification.
 *
 *   expr   := ['+'|'-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := base ('^' uint)?
 *   base   := rational | variable | '(' expr ')'
 *
 * Rationals are written p or p/q.  Juxtaposition is not multiplication.
 */

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flp/error.hpp"
#include "flp/flp_engine.hpp"

namespace flp {

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> vars);

struct JobOptions {
    std::string order = "degrevlex";  // or "lex"
    bool all_factorizations = false;
    bool frp = false;
};

struct JobSpec {
    std::vector<std::string> variables;
    PolyMatrix matrix;
    std::optional<std::vector<Polynomial>> factors;
    JobOptions options;
};

// Throws parse errors for malformed JSON, unknown keys, duplicate or
// invalid variable names, ragged matrices and bad expressions.
JobSpec parse_job(std::string_view json_text);
std::string job_to_json(const JobSpec& job);

struct TraceRecord {
    Polynomial divisor;
    PolyMatrix generators;
    bool free = false;
    std::vector<Polynomial> minors;
    bool selected = false;
};

struct ResultEntry {
    PolyMatrix G;
    PolyMatrix F1;  // F = G F1, or F = F1 G for right-prime runs
    Polynomial f;
    Polynomial requested;
    Polynomial d_r_of_G;
    bool product_ok = false;
    bool d_r_ok = false;
};

struct ResultDoc {
    JobSpec job;
    std::size_t rank = 0;
    Polynomial d_r;
    std::vector<Polynomial> column_minors;
    std::vector<Polynomial> minor_ideal;
    std::string branch;
    std::vector<Polynomial> factors;
    std::vector<Polynomial> divisors;
    std::vector<TraceRecord> trace;  // of the transpose for right-prime runs
    std::vector<ResultEntry> factorizations;
};

ResultDoc run_factorize(const JobSpec& job);

std::string to_json(const ResultDoc& doc);
ResultDoc parse_result(std::string_view json_text);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;
};

// Recomputes everything from the echoed input: G F1 = F, d_r(G) d_r(F1) =
// d_r(F), and that rho(F1) equals the quotient module for the entry's
// divisor.
VerifyReport verify_report(const ResultDoc& doc);
bool run_verify(const ResultDoc& doc);

// 0 success, 2 precondition, 3 extraction exhausted, 4 factorization
// incomplete, 5 parse error, 1 anything else.
int exit_code(ErrorKind kind);

}  // namespace flp
