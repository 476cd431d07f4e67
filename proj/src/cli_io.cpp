#include "flp/cli_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "json.hpp"

namespace flp {

using json = nlohmann::ordered_json;

namespace {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> vars) : text_(text), vars_(vars) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip();
        if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::parse, "position " + std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool starts_base() {
        skip();
        if (pos_ >= text_.size()) return false;
        const unsigned char c = static_cast<unsigned char>(text_[pos_]);
        return std::isalnum(c) || c == '_' || c == '(';
    }

    Polynomial expr() {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        Polynomial acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            if (accept('*')) {
                acc *= factor();
                continue;
            }
            if (starts_base()) error("implicit multiplication is not allowed");
            return acc;
        }
    }

    Polynomial factor() {
        Polynomial b = base();
        if (!accept('^')) return b;
        skip();
        if (pos_ < text_.size() && text_[pos_] == '-') error("negative exponent");
        const std::string digits = read_digits();
        if (digits.empty()) error("expected exponent");
        if (digits.size() > 6) error("exponent too large");
        return pow(b, static_cast<unsigned>(std::stoul(digits)));
    }

    std::string read_digits() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Polynomial base() {
        skip();
        if (pos_ >= text_.size()) error("unexpected end of input");
        const unsigned char c = static_cast<unsigned char>(text_[pos_]);
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) error("expected ')'");
            return inner;
        }
        if (std::isdigit(c)) {
            const std::string num = read_digits();
            std::string den = "1";
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    error("expected denominator");
                den = read_digits();
                if (std::all_of(den.begin(), den.end(), [](char d) { return d == '0'; }))
                    error("zero denominator");
            }
            Rational q{mpz_class(num), mpz_class(den)};
            q.canonicalize();
            return Polynomial::constant(vars_.size(), q);
        }
        if (std::isalpha(c) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
            pos_ = start;
            error("unknown variable '" + std::string(name) + "'");
        }
        error("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
    }

    std::string_view text_;
    std::span<const std::string> vars_;
    std::size_t pos_ = 0;
};

[[noreturn]] void schema_error(const std::string& what) { fail(ErrorKind::parse, what); }

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
            schema_error("unknown key '" + it.key() + "' in " + where);
    }
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        schema_error(std::string("malformed JSON: ") + e.what());
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) schema_error("missing key '" + std::string(key) + "' in " + where);
    return obj.at(key);
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) schema_error(where + " must be a string");
    return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) schema_error(where + " must be a boolean");
    return j.get<bool>();
}

Polynomial parse_field(const json& j, const std::vector<std::string>& vars, const std::string& where) {
    const std::string text = as_string(j, where);
    try {
        return parse_polynomial(text, vars);
    } catch (const Error& e) {
        schema_error(where + ": " + e.what());
    }
}

std::vector<Polynomial> parse_list(const json& j, const std::vector<std::string>& vars, const std::string& where) {
    if (!j.is_array()) schema_error(where + " must be an array");
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_field(j[i], vars, where + "[" + std::to_string(i) + "]"));
    return out;
}

PolyMatrix parse_matrix(const json& j, const std::vector<std::string>& vars, const std::string& where) {
    if (!j.is_array() || j.empty()) schema_error(where + " must be a nonempty array of rows");
    std::vector<std::vector<Polynomial>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string rw = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].empty()) schema_error(rw + " must be a nonempty array");
        if (j[i].size() != j[0].size()) schema_error(where + " is not rectangular");
        std::vector<Polynomial> row;
        for (std::size_t k = 0; k < j[i].size(); ++k)
            row.push_back(parse_field(j[i][k], vars, rw + "[" + std::to_string(k) + "]"));
        rows.push_back(std::move(row));
    }
    return PolyMatrix::from_rows(rows, vars.size());
}

std::vector<std::string> parse_variables(const json& j) {
    if (!j.is_array() || j.empty()) schema_error("'variables' must be a nonempty array");
    std::vector<std::string> vars;
    std::set<std::string> seen;
    for (const auto& v : j) {
        std::string name = as_string(v, "variable name");
        const bool ident = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                           std::all_of(name.begin(), name.end(), [](char c) {
                               return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                           });
        if (!ident) schema_error("invalid variable name '" + name + "'");
        if (!seen.insert(name).second) schema_error("duplicate variable name '" + name + "'");
        vars.push_back(std::move(name));
    }
    return vars;
}

JobOptions parse_options(const json& j) {
    if (!j.is_object()) schema_error("'options' must be an object");
    reject_unknown(j, {"order", "all_factorizations", "frp"}, "options");
    JobOptions o;
    if (j.contains("order")) {
        o.order = as_string(j.at("order"), "options.order");
        if (o.order != "lex" && o.order != "degrevlex") schema_error("options.order must be 'lex' or 'degrevlex'");
    }
    if (j.contains("all_factorizations")) o.all_factorizations = as_bool(j.at("all_factorizations"), "options.all_factorizations");
    if (j.contains("frp")) o.frp = as_bool(j.at("frp"), "options.frp");
    return o;
}

json poly_json(const Polynomial& p, const std::vector<std::string>& vars) { return to_string(p, vars); }

json list_json(const std::vector<Polynomial>& ps, const std::vector<std::string>& vars) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(poly_json(p, vars));
    return out;
}

json matrix_json(const PolyMatrix& m, const std::vector<std::string>& vars) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(poly_json(m.at(i, k), vars));
        out.push_back(std::move(row));
    }
    return out;
}

json options_json(const JobOptions& o) {
    return json{{"order", o.order}, {"all_factorizations", o.all_factorizations}, {"frp", o.frp}};
}

json job_json(const JobSpec& job) {
    json j;
    j["variables"] = job.variables;
    j["matrix"] = matrix_json(job.matrix, job.variables);
    if (job.factors) j["factors"] = list_json(*job.factors, job.variables);
    j["options"] = options_json(job.options);
    return j;
}

JobSpec job_from_json(const json& j) {
    if (!j.is_object()) schema_error("job must be a JSON object");
    reject_unknown(j, {"variables", "matrix", "factors", "options"}, "job");
    JobSpec job;
    job.variables = parse_variables(require(j, "variables", "job"));
    job.matrix = parse_matrix(require(j, "matrix", "job"), job.variables, "matrix");
    if (j.contains("factors")) job.factors = parse_list(j.at("factors"), job.variables, "factors");
    if (j.contains("options")) job.options = parse_options(j.at("options"));
    return job;
}

FlpOptions engine_options(const JobSpec& job) {
    FlpOptions o;
    o.all_factorizations = job.options.all_factorizations;
    o.order = job.options.order == "lex" ? MonomialOrder::lex() : MonomialOrder::degrevlex();
    o.factors = job.factors;
    return o;
}

// Quotient module that an entry's F1 must span, recomputed from scratch on
// the matrix the engine actually factors.
SubmoduleGB expected_quotient(const PolyMatrix& M, std::size_t r, const Polynomial& requested) {
    const SubmoduleGB K = row_module(M);
    const IdealGB ideal = ideal_reduced_gb(column_reduced_minors(M, r).values);
    if (ideal.is_unit()) return quotient_by_poly(K, requested).quotient;
    std::vector<Polynomial> J;
    for (const auto& g : ideal.generators) J.push_back(requested * g);
    return quotient_by_ideal(K, J).quotient;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> vars) {
    return Parser(text, vars).parse();
}

JobSpec parse_job(std::string_view json_text) { return job_from_json(parse_json(json_text)); }

std::string job_to_json(const JobSpec& job) { return job_json(job).dump(2); }

ResultDoc run_factorize(const JobSpec& job) {
    const FlpOptions opts = engine_options(job);
    const FlpRun run = job.options.frp ? frp_run(job.matrix, opts) : flp_run(job.matrix, opts);
    ResultDoc doc;
    doc.job = job;
    doc.rank = run.rank;
    doc.d_r = run.d_r;
    doc.column_minors = run.column_minors.values;
    doc.minor_ideal = run.minor_ideal.generators;
    doc.branch = to_string(run.branch);
    doc.factors = run.lattice.factors;
    doc.divisors = run.lattice.divisors;
    for (const auto& c : run.trace) {
        TraceRecord t;
        t.divisor = c.divisor;
        t.generators = c.quotient.generators;
        t.free = c.free;
        t.minors = c.certificate.minors.values;
        t.selected = c.selected;
        doc.trace.push_back(std::move(t));
    }
    for (const auto& w : run.W) {
        ResultEntry e;
        e.G = w.G;
        e.F1 = w.F1;
        e.f = w.f;
        e.requested = w.requested;
        e.d_r_of_G = w.d_r_of_G;
        const PolyMatrix product = job.options.frp ? mat_mul(w.F1, w.G) : mat_mul(w.G, w.F1);
        e.product_ok = product == job.matrix;
        e.d_r_ok = associated(d_i(w.G, run.rank) * d_i(w.F1, run.rank), run.d_r);
        doc.factorizations.push_back(std::move(e));
    }
    return doc;
}

std::string to_json(const ResultDoc& doc) {
    const auto& vars = doc.job.variables;
    json j;
    j["input"] = job_json(doc.job);
    j["rank"] = doc.rank;
    j["d_r"] = poly_json(doc.d_r, vars);
    j["column_reduced_minors"] = list_json(doc.column_minors, vars);
    j["minor_ideal"] = list_json(doc.minor_ideal, vars);
    j["branch"] = doc.branch;
    j["factors"] = list_json(doc.factors, vars);
    j["divisors"] = list_json(doc.divisors, vars);
    json trace = json::array();
    for (const auto& t : doc.trace) {
        trace.push_back(json{{"divisor", poly_json(t.divisor, vars)},
                             {"generators", matrix_json(t.generators, vars)},
                             {"free", t.free},
                             {"minors", list_json(t.minors, vars)},
                             {"selected", t.selected}});
    }
    j["trace"] = std::move(trace);
    json ws = json::array();
    for (const auto& e : doc.factorizations) {
        ws.push_back(json{{"G", matrix_json(e.G, vars)},
                          {"F1", matrix_json(e.F1, vars)},
                          {"f", poly_json(e.f, vars)},
                          {"requested", poly_json(e.requested, vars)},
                          {"d_r_of_G", poly_json(e.d_r_of_G, vars)},
                          {"checks", json{{"product", e.product_ok}, {"d_r_multiplicative", e.d_r_ok}}}});
    }
    j["factorizations"] = std::move(ws);
    return j.dump(2);
}

ResultDoc parse_result(std::string_view json_text) {
    const json j = parse_json(json_text);
    if (!j.is_object()) schema_error("result must be a JSON object");
    reject_unknown(j, {"input", "rank", "d_r", "column_reduced_minors", "minor_ideal", "branch", "factors", "divisors",
                       "trace", "factorizations"},
                   "result");
    ResultDoc doc;
    doc.job = job_from_json(require(j, "input", "result"));
    const auto& vars = doc.job.variables;
    const json& rank = require(j, "rank", "result");
    if (!rank.is_number_unsigned()) schema_error("'rank' must be a nonnegative integer");
    doc.rank = rank.get<std::size_t>();
    doc.d_r = parse_field(require(j, "d_r", "result"), vars, "d_r");
    doc.column_minors = parse_list(require(j, "column_reduced_minors", "result"), vars, "column_reduced_minors");
    doc.minor_ideal = parse_list(require(j, "minor_ideal", "result"), vars, "minor_ideal");
    doc.branch = as_string(require(j, "branch", "result"), "branch");
    doc.factors = parse_list(require(j, "factors", "result"), vars, "factors");
    doc.divisors = parse_list(require(j, "divisors", "result"), vars, "divisors");
    const json& trace = require(j, "trace", "result");
    if (!trace.is_array()) schema_error("'trace' must be an array");
    for (const auto& t : trace) {
        reject_unknown(t, {"divisor", "generators", "free", "minors", "selected"}, "trace entry");
        TraceRecord r;
        r.divisor = parse_field(require(t, "divisor", "trace entry"), vars, "trace.divisor");
        r.generators = parse_matrix(require(t, "generators", "trace entry"), vars, "trace.generators");
        r.free = as_bool(require(t, "free", "trace entry"), "trace.free");
        r.minors = parse_list(require(t, "minors", "trace entry"), vars, "trace.minors");
        r.selected = as_bool(require(t, "selected", "trace entry"), "trace.selected");
        doc.trace.push_back(std::move(r));
    }
    const json& ws = require(j, "factorizations", "result");
    if (!ws.is_array()) schema_error("'factorizations' must be an array");
    for (const auto& w : ws) {
        reject_unknown(w, {"G", "F1", "f", "requested", "d_r_of_G", "checks"}, "factorization");
        ResultEntry e;
        e.G = parse_matrix(require(w, "G", "factorization"), vars, "G");
        e.F1 = parse_matrix(require(w, "F1", "factorization"), vars, "F1");
        e.f = parse_field(require(w, "f", "factorization"), vars, "f");
        e.requested = parse_field(require(w, "requested", "factorization"), vars, "requested");
        e.d_r_of_G = parse_field(require(w, "d_r_of_G", "factorization"), vars, "d_r_of_G");
        const json& checks = require(w, "checks", "factorization");
        reject_unknown(checks, {"product", "d_r_multiplicative"}, "checks");
        e.product_ok = as_bool(require(checks, "product", "checks"), "checks.product");
        e.d_r_ok = as_bool(require(checks, "d_r_multiplicative", "checks"), "checks.d_r_multiplicative");
        doc.factorizations.push_back(std::move(e));
    }
    return doc;
}

VerifyReport verify_report(const ResultDoc& doc) {
    VerifyReport rep;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) {
            rep.ok = false;
            rep.failures.push_back(what);
        }
    };
    const PolyMatrix& F = doc.job.matrix;
    const bool right = doc.job.options.frp;
    const PolyMatrix M = right ? F.transpose() : F;
    const std::size_t r = rank(M);
    check(r == doc.rank, "rank differs from the recomputed value " + std::to_string(r));
    if (r == 0 || r >= M.rows()) {
        check(doc.factorizations.empty(), "factorizations present for a matrix outside the algorithm's domain");
        return rep;
    }
    const Polynomial d = d_i(M, r);
    check(associated(d, doc.d_r), "d_r differs from the recomputed value");
    for (std::size_t i = 0; i < doc.factorizations.size(); ++i) {
        const auto& e = doc.factorizations[i];
        const std::string tag = "factorization " + std::to_string(i) + ": ";
        // Work in the orientation the engine used: M = G' F1'.
        const PolyMatrix G = right ? e.G.transpose() : e.G;
        const PolyMatrix F1 = right ? e.F1.transpose() : e.F1;
        const bool shapes = G.rows() == M.rows() && G.cols() == r && F1.rows() == r && F1.cols() == M.cols();
        check(shapes, tag + "factor shapes do not match");
        if (!shapes) continue;
        check(mat_mul(G, F1) == M, tag + "product does not reproduce the input");
        check(associated(d_i(G, r) * d_i(F1, r), d), tag + "d_r(G) d_r(F1) differs from d_r(F)");
        check(associated(d_i(G, r), e.f), tag + "stored f differs from d_r(G)");
        if (e.requested.is_zero() || !divides(e.requested, d)) {
            check(false, tag + "requested divisor does not divide d_r(F)");
            continue;
        }
        check(module_equal(row_module(F1), expected_quotient(M, r, e.requested)),
              tag + "row module of F1 differs from the recomputed quotient");
    }
    return rep;
}

bool run_verify(const ResultDoc& doc) { return verify_report(doc).ok; }

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::precondition:
        case ErrorKind::invalid_argument: return 2;
        case ErrorKind::extraction_exhausted: return 3;
        case ErrorKind::factorization_incomplete: return 4;
        case ErrorKind::parse: return 5;
        case ErrorKind::not_member: return 1;
    }
    return 1;
}

}  // namespace flp
