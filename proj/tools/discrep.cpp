#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "discrep/acceptance.hpp"
#include "discrep/builder.hpp"
#include "discrep/hypergraph.hpp"
#include "discrep/matrixlab.hpp"
#include "discrep/numtheory.hpp"
#include "discrep/solver.hpp"

namespace {

using namespace discrep;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open " + path + " for writing");
    os << content;
    if (!os) throw std::ios_base::failure("write to " + path + " failed");
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Build dispatch_build(const std::string& method, i64 n) {
    if (method == "auto") return build_auto(n);
    if (method == "single") return build_single_odd(n);
    if (method == "three") return build_three(n);
    if (method == "main") return build_main(n);
    if (method == "example19") return build_example19(n);
    throw invalid_input("unknown method: " + method);
}

void emit_build(const Build& b, const std::string& out_path) {
    std::ostringstream cert;
    write_certificate(cert, b.second);
    if (out_path.empty()) {
        std::cout << write_hypergraph(b.first) << cert.str();
    } else {
        write_file(out_path, write_hypergraph(b.first));
        write_file(out_path + ".cert", cert.str());
    }
    std::cerr << to_string(b.second.method) << ": n=" << b.second.n << ", "
              << b.first.edges.size() << " edges, " << b.first.num_vertices << " vertices\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructions and exact discrepancy verification for n-uniform hypergraphs"};
    app.require_subcommand(1);

    i64 n = 0, r = 1;
    std::string method = "auto", mode = "zero", out_path, input_path, matrix_op = "det";
    SolverOptions solver_opt;

    auto* cmd_snd = app.add_subcommand("snd", "smallest non-divisor of n");
    cmd_snd->add_option("n", n, "target integer")->required();

    auto* cmd_build = app.add_subcommand("build", "construct an n-uniform hypergraph with positive discrepancy");
    cmd_build->add_option("--n", n, "edge size")->required();
    cmd_build->add_option("--method", method, "auto|single|three|main|example19")
        ->check(CLI::IsMember({"auto", "single", "three", "main", "example19"}));
    cmd_build->add_option("-o,--output", out_path, "hypergraph file (certificate sidecar at <path>.cert)");

    auto* cmd_verify = app.add_subcommand("verify", "verify discrepancy properties of a hypergraph file");
    cmd_verify->add_option("input", input_path, "hypergraph file")->required();
    cmd_verify->add_option("--mode", mode, "zero|min")->check(CLI::IsMember({"zero", "min"}));
    cmd_verify->add_option("--budget", solver_opt.node_budget, "search node budget")
        ->check(CLI::PositiveNumber);
    cmd_verify->add_option("--jobs", solver_opt.jobs, "solver worker count")
        ->check(CLI::PositiveNumber);
    cmd_verify->add_option("-o,--output", out_path, "report file (default stdout)");

    auto* cmd_amplify = app.add_subcommand("amplify", "discrepancy amplifier");
    cmd_amplify->add_option("--n", n, "edge size")->required();
    cmd_amplify->add_option("--r", r, "target discrepancy factor")->required()
        ->check(CLI::PositiveNumber);
    cmd_amplify->add_option("-o,--output", out_path, "hypergraph file");

    auto* cmd_matrix = app.add_subcommand("matrix", "exact integer matrix utilities");
    cmd_matrix->add_option("op", matrix_op, "det|membership")
        ->check(CLI::IsMember({"det", "membership"}));
    cmd_matrix->add_option("input", input_path, "matrix file")->required();

    auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_snd->parsed()) {
            std::cout << snd(n) << '\n';
        } else if (cmd_build->parsed()) {
            emit_build(dispatch_build(method, n), out_path);
        } else if (cmd_amplify->parsed()) {
            emit_build(amplify(n, r), out_path);
        } else if (cmd_verify->parsed()) {
            auto h = read_hypergraph(slurp(input_path));
            h.validate();
            auto a = atomize(h);
            DiscrepancyReport report = (mode == "zero")
                                           ? atom_zero_feasible(a, solver_opt)
                                           : atom_min_discrepancy(a, std::nullopt, solver_opt);
            std::ostringstream os;
            write_report(os, report);
            if (out_path.empty()) std::cout << os.str();
            else write_file(out_path, os.str());
            if (mode == "zero")
                std::cerr << "zero-discrepancy coloring "
                          << (report.zero_feasible ? "exists" : "does not exist") << '\n';
            else
                std::cerr << "minimum discrepancy: "
                          << (report.min_discrepancy ? std::to_string(*report.min_discrepancy)
                                                     : "unknown")
                          << '\n';
        } else if (cmd_matrix->parsed()) {
            std::istringstream is(slurp(input_path));
            auto m = read_matrix(is);
            if (matrix_op == "det") {
                std::cout << "det = " << exact_det(m) << '\n';
            } else {
                auto res = is_in_M(m);
                std::cout << "in_M = " << (res.in_M ? "true" : "false") << '\n';
                if (res.in_M) {
                    std::cout << "x = ";
                    for (std::size_t i = 0; i < res.x.size(); ++i)
                        std::cout << (i ? "," : "") << res.x[i];
                    std::cout << '\n';
                    std::cout << "z = " << res.z << '\n';
                    std::cout << "y = ";
                    for (std::size_t i = 0; i < res.y.size(); ++i)
                        std::cout << (i ? "," : "") << res.y[i];
                    std::cout << '\n';
                }
            }
        } else if (cmd_selftest->parsed()) {
            return run_acceptance(std::cout) ? 0 : 1;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
