#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ghzsim/protocol_file.hpp"
#include "ghzsim/report.hpp"
#include "ghzsim/verify.hpp"

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct BuiltinSpec {
    ghzsim::AtomFamily family;
    int sign;
};

BuiltinSpec parse_builtin(const std::string& name) {
    if (name == "cascade+") return {ghzsim::AtomFamily::Cascade, 1};
    if (name == "cascade-") return {ghzsim::AtomFamily::Cascade, -1};
    if (name == "lambda+") return {ghzsim::AtomFamily::Lambda, 1};
    if (name == "lambda-") return {ghzsim::AtomFamily::Lambda, -1};
    throw CLI::ValidationError("--builtin", "expected cascade+|cascade-|lambda+|lambda-");
}

int cmd_run(const std::string& protocol_path, const std::string& builtin, int shots,
            std::uint64_t seed, int cutoff, double tol, const std::string& format,
            const std::string& out_path) {
    ghzsim::AtomFamily family;
    int sign;
    std::vector<ghzsim::ProtocolStep> steps;

    if (!protocol_path.empty()) {
        std::ifstream in(protocol_path);
        if (!in) {
            std::cerr << "error: cannot open '" << protocol_path << "'\n";
            return kExitUsage;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        ghzsim::ParsedProtocol proto = ghzsim::parse_protocol(buf.str());
        family = proto.header.family;
        sign = proto.header.sign;
        cutoff = proto.header.cutoff;
        tol = proto.header.tolerance;
        steps = std::move(proto.steps);
    } else {
        BuiltinSpec spec = parse_builtin(builtin);
        family = spec.family;
        sign = spec.sign;
        steps = ghzsim::builtin_steps(family, sign);
    }

    ghzsim::TestResult result = ghzsim::run_test(family, sign, steps, shots, seed, cutoff);
    ghzsim::RunConfig config{family, sign, shots, seed, cutoff, tol};
    std::string text =
        format == "csv" ? ghzsim::report_csv(result) : ghzsim::report_json(config, result);

    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitUsage;
        }
        out << text;
    }
    return result.aggregate.all_match ? 0 : kExitInvariant;
}

int cmd_verify(double tol, bool perturb) {
    ghzsim::VerifyOptions opts{tol, perturb};
    std::vector<ghzsim::CheckResult> results = ghzsim::run_verify(opts);
    for (const auto& r : results) {
        std::cout << r.name << " = " << r.value << " (threshold " << r.threshold << ") "
                  << (r.pass ? "PASS" : "FAIL") << "\n";
    }
    bool ok = ghzsim::all_pass(results);
    std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
    return ok ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cavity-QED GHZ state preparation and test simulator"};
    app.require_subcommand(1);

    std::string protocol_path, builtin, format = "json", out_path;
    int shots = 1000, cutoff = 4;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    bool perturb = false;

    CLI::App* run = app.add_subcommand("run", "Run a GHZ test protocol and report outcomes");
    auto* popt = run->add_option("--protocol", protocol_path, "Protocol file to execute");
    auto* bopt =
        run->add_option("--builtin", builtin, "Built-in protocol: cascade+|cascade-|lambda+|lambda-");
    popt->excludes(bopt);
    run->add_option("--shots", shots, "Number of shots")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "RNG seed");
    run->add_option("--cutoff", cutoff, "Fock cutoff")->check(CLI::Range(2, 64));
    run->add_option("--tol", tol, "Numeric tolerance");
    run->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "Run the full invariant suite");
    verify->add_option("--tol", tol, "Numeric tolerance");
    verify->add_flag("--perturb", perturb, "Inject a deliberate matrix error (self-test)")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (run->parsed()) {
            if (protocol_path.empty() && builtin.empty()) {
                std::cerr << "error: need --protocol or --builtin\n";
                return kExitUsage;
            }
            return cmd_run(protocol_path, builtin, shots, seed, cutoff, tol, format, out_path);
        }
        return cmd_verify(tol, perturb);
    } catch (const ghzsim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return kExitInvariant;
    }
}
