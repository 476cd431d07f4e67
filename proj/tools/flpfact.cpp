// flpfact: FLP factorization of polynomial matrices from JSON job files.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "flp/cli_io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) flp::fail(flp::ErrorKind::parse, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void summarize(const flp::ResultDoc& doc, std::ostream& os) {
    const auto& vars = doc.job.variables;
    os << "rank " << doc.rank << ", d_r = " << flp::to_string(doc.d_r, vars) << ", branch " << doc.branch << ", "
       << doc.divisors.size() << " divisors, " << doc.factorizations.size() << " factorization(s)\n";
    for (const auto& e : doc.factorizations) os << "  f = " << flp::to_string(e.f, vars) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Factor left prime factorization of multivariate polynomial matrices"};
    app.require_subcommand(1);

    std::string job_path, out_path, order;
    bool all = false, frp = false;
    auto* fact = app.add_subcommand("factorize", "Factorize the matrix of a job file");
    fact->add_option("job", job_path, "Job file (JSON)")->required();
    fact->add_option("--out", out_path, "Write the result document here instead of stdout");
    fact->add_flag("--all-factorizations", all, "Return every certified factorization, not only FLP ones");
    fact->add_flag("--frp", frp, "Factor right prime mode (works on the transpose)");
    fact->add_option("--order", order, "Monomial order for module bases")->check(CLI::IsMember({"lex", "degrevlex"}));

    std::string result_path;
    auto* ver = app.add_subcommand("verify", "Independently re-check a result document");
    ver->add_option("result", result_path, "Result file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fact) {
            flp::JobSpec job = flp::parse_job(read_file(job_path));
            if (all) job.options.all_factorizations = true;
            if (frp) job.options.frp = true;
            if (!order.empty()) job.options.order = order;
            const flp::ResultDoc doc = flp::run_factorize(job);
            const std::string text = flp::to_json(doc) + "\n";
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) flp::fail(flp::ErrorKind::parse, "cannot write " + out_path);
                out << text;
                summarize(doc, std::cout);
            }
            return 0;
        }
        const flp::VerifyReport rep = flp::verify_report(flp::parse_result(read_file(result_path)));
        for (const auto& f : rep.failures) std::cout << "FAIL " << f << "\n";
        std::cout << (rep.ok ? "verified" : "not verified") << "\n";
        return rep.ok ? 0 : 1;
    } catch (const flp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return flp::exit_code(e.kind());
    }
}
