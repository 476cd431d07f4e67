#include <fstream>
#include <sstream>

#include "doctest.h"
#include "flp/cli_io.hpp"
#include "test_support.hpp"

using namespace flp;
using namespace flp::testing;

namespace {

const std::vector<std::string> vars{"z1", "z2", "z3"};

Polynomial P(const std::string& s) { return parse_polynomial(s, vars); }

ErrorKind parse_failure(const std::string& s) {
    try {
        P(s);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected a parse error for " << s);
    return ErrorKind::not_member;
}

const char* example1_job = R"({
  "variables": ["z1", "z2", "z3"],
  "matrix": [
    ["z1*z2 - z2", "0", "z3 + 1"],
    ["0", "z1*z2 - z2", "z1^2 - 2*z1 + 1"],
    ["z1^2*z2 - z1*z2", "z1*z2^2 - z2^2", "z1^2*z2 - 2*z1*z2 + z1*z3 + z1 + z2"]
  ]
})";

}  // namespace

TEST_CASE("grammar examples") {
    CHECK(P("z1*z2^2") == z1 * z2 * z2);
    CHECK(P("0").is_zero());
    CHECK(P("(z1-1)*z2") == z1 * z2 - z2);
    CHECK(P("-z1 + 3/2*z2") == -z1 + c(3, 2) * z2);
    CHECK(P("  ( z1 + z2 ) ^ 2 ") == z1 * z1 + c(2) * z1 * z2 + z2 * z2);
    CHECK(P("-(z1 - z3)") == z3 - z1);
    CHECK(P("+z2") == z2);
    CHECK(P("4/6") == c(2, 3));
    CHECK(P("z1^0") == one);
    CHECK(P("2*3*z3") == c(6) * z3);
}

TEST_CASE("grammar errors") {
    CHECK(parse_failure("2 z1") == ErrorKind::parse);
    CHECK(parse_failure("z1 z2") == ErrorKind::parse);
    CHECK(parse_failure("z1(z2)") == ErrorKind::parse);
    CHECK(parse_failure("z4") == ErrorKind::parse);
    CHECK(parse_failure("z1^-2") == ErrorKind::parse);
    CHECK(parse_failure("(z1 + 1") == ErrorKind::parse);
    CHECK(parse_failure("1/0") == ErrorKind::parse);
    CHECK(parse_failure("z1 +") == ErrorKind::parse);
    CHECK(parse_failure("") == ErrorKind::parse);
    CHECK(parse_failure("1.5") == ErrorKind::parse);
    CHECK(parse_failure("z1 ** 2") == ErrorKind::parse);
}

TEST_CASE("errors report the position") {
    try {
        P("z1 + z9");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("position 5") != std::string::npos);
        CHECK(std::string(e.what()).find("z9") != std::string::npos);
    }
}

TEST_CASE("print then parse round trip") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        Polynomial p = random_poly(rng, 4, 6);
        p = p.scaled(Rational(trial + 1, 7));
        CHECK(P(to_string(p, vars)) == p);
    }
}

TEST_CASE("job parsing") {
    const JobSpec job = parse_job(example1_job);
    CHECK(job.variables == vars);
    CHECK(job.matrix == example1());
    CHECK_FALSE(job.factors.has_value());
    CHECK(job.options.order == "degrevlex");
    CHECK(parse_job(job_to_json(job)).matrix == job.matrix);
}

TEST_CASE("job validation") {
    auto kind = [](const std::string& text) {
        try {
            parse_job(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::not_member;
    };
    CHECK(kind(R"({"variables": ["x"], "matrix": [["x"]], "colour": 1})") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["x"], "matrix": [["x"]], "options": {"speed": "fast"}})") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["x", "x"], "matrix": [["x"]]})") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["1x"], "matrix": [["1"]]})") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["x"], "matrix": [["x"], ["x", "1"]]})") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["x"], "matrix": [["y"]]})") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["x"]})") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["x"], "matrix": [["x"]], "options": {"order": "grevlex"}})") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["x"], "matrix": [["x"]], "options": {"frp": "yes"}})") == ErrorKind::parse);
    CHECK(kind("{not json") == ErrorKind::parse);
    CHECK(kind(R"({"variables": ["x"], "matrix": [["x"]], "options": {"frp": true, "order": "lex"}})") ==
          ErrorKind::not_member);
}

TEST_CASE("factorize then verify") {
    const ResultDoc doc = run_factorize(parse_job(example1_job));
    CHECK(doc.rank == 2);
    CHECK(associated(doc.d_r, z1 * z2 - z2));
    CHECK(doc.branch == "unit_ideal");
    REQUIRE(doc.factorizations.size() == 1);
    CHECK(associated(doc.factorizations.front().f, z1 - one));
    CHECK(doc.factorizations.front().product_ok);
    CHECK(doc.factorizations.front().d_r_ok);
    CHECK(doc.trace.size() == 4);
    CHECK(run_verify(doc));
}

TEST_CASE("result documents round trip through JSON") {
    const ResultDoc doc = run_factorize(parse_job(example1_job));
    const std::string text = to_json(doc);
    const ResultDoc back = parse_result(text);
    CHECK(to_json(back) == text);
    CHECK(back.factorizations.front().G == doc.factorizations.front().G);
    CHECK(back.factorizations.front().F1 == doc.factorizations.front().F1);
    CHECK(run_verify(back));
}

TEST_CASE("verification catches a perturbed G") {
    ResultDoc doc = run_factorize(parse_job(example1_job));
    doc.factorizations.front().G.at(0, 0) += one;
    const VerifyReport rep = verify_report(doc);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("verification is invariant under permuting the rows of F1") {
    ResultDoc doc = run_factorize(parse_job(example1_job));
    auto& e = doc.factorizations.front();
    const std::vector<std::size_t> swapped{1, 0};
    e.F1 = e.F1.select_rows(swapped);
    // G is recomputed by lifting the rows of F against the permuted F1
    Lifter lifter(e.F1.row_elements(), e.F1.cols(), N);
    for (std::size_t i = 0; i < doc.job.matrix.rows(); ++i) {
        const auto lambda = lifter.lift(doc.job.matrix.row(i));
        for (std::size_t j = 0; j < lambda.size(); ++j) e.G.at(i, j) = lambda[j];
    }
    CHECK(run_verify(doc));
}

TEST_CASE("verification rejects a wrong module") {
    ResultDoc doc = run_factorize(parse_job(example1_job));
    auto& e = doc.factorizations.front();
    // rho(F) itself with its G: the product holds, the quotient module does not
    e.F1 = mat({{zero, z1 * z2 - z2, z1 * z1 - c(2) * z1 + one}, {z1 * z2 - z2, zero, z3 + one}});
    e.G = mat({{zero, one}, {one, zero}, {z2, z1}});
    REQUIRE(mat_mul(e.G, e.F1) == doc.job.matrix);
    CHECK_FALSE(run_verify(doc));
}

TEST_CASE("right prime mode in documents") {
    JobSpec job = parse_job(example1_job);
    job.matrix = job.matrix.transpose();
    job.options.frp = true;
    const ResultDoc doc = run_factorize(job);
    REQUIRE(doc.factorizations.size() == 1);
    const auto& e = doc.factorizations.front();
    CHECK(mat_mul(e.F1, e.G) == job.matrix);
    CHECK(e.product_ok);
    CHECK(run_verify(doc));
    CHECK(run_verify(parse_result(to_json(doc))));
}

TEST_CASE("exit codes") {
    CHECK(exit_code(ErrorKind::precondition) == 2);
    CHECK(exit_code(ErrorKind::extraction_exhausted) == 3);
    CHECK(exit_code(ErrorKind::factorization_incomplete) == 4);
    CHECK(exit_code(ErrorKind::parse) == 5);
}

TEST_CASE("full row rank jobs are rejected as a precondition") {
    const JobSpec job = parse_job(R"({"variables": ["x", "y"], "matrix": [["x", "y", "0"], ["0", "x", "y"]]})");
    try {
        run_factorize(job);
        FAIL("expected precondition error");
    } catch (const Error& e) {
        CHECK(exit_code(e.kind()) == 2);
    }
}
