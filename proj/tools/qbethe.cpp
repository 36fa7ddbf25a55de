// qbethe: command-line driver for the open q-boson lattice model.
// Subcommands: spectrum, pieri, verify, hamiltonian, bethe, states.
// Exit codes: 0 = success / all gates pass, 1 = a verification gate failed,
// 2 = usage or configuration error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qbethe/bethe.hpp"
#include "qbethe/config.hpp"
#include "qbethe/qboson.hpp"
#include "qbethe/states.hpp"
#include "qbethe/verify.hpp"

namespace {

using namespace qbethe;
using cli::RunConfig;

struct CliOverrides {
    std::string config_path;
    int n = -1;
    int m = -1;
    double q = std::nan("");
    double a_minus = std::nan("");
    double a_hat_minus = std::nan("");
    double a_plus = std::nan("");
    double a_hat_plus = std::nan("");
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::string> suites;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--n", o.n, "particle count");
    cmd->add_option("--m", o.m, "lattice extent (sites 0..m)");
    cmd->add_option("--q", o.q, "bulk coupling q");
    cmd->add_option("--a-minus", o.a_minus, "left boundary parameter a_-");
    cmd->add_option("--a-hat-minus", o.a_hat_minus, "left boundary parameter ahat_-");
    cmd->add_option("--a-plus", o.a_plus, "right boundary parameter a_+");
    cmd->add_option("--a-hat-plus", o.a_hat_plus, "right boundary parameter ahat_+");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "output format: json or csv");
    cmd->add_option("--seed", o.seed, "seed for deterministic parameter grids")
        ->each([&o](const std::string&) { o.seed_set = true; });
}

RunConfig resolve_config(const CliOverrides& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) cfg = cli::load_config(o.config_path);
    if (o.n >= 0) cfg.n = o.n;
    if (o.m >= 0) cfg.m = o.m;
    if (!std::isnan(o.q)) cfg.params.q = o.q;
    if (!std::isnan(o.a_minus)) cfg.params.a_minus = o.a_minus;
    if (!std::isnan(o.a_hat_minus)) cfg.params.a_hat_minus = o.a_hat_minus;
    if (!std::isnan(o.a_plus)) cfg.params.a_plus = o.a_plus;
    if (!std::isnan(o.a_hat_plus)) cfg.params.a_hat_plus = o.a_hat_plus;
    if (!o.out.empty()) cfg.out_path = o.out;
    if (!o.format.empty()) cfg.format = o.format;
    if (o.seed_set) cfg.seed = o.seed;
    if (!o.suites.empty()) cfg.suites = o.suites;
    cfg.validate();
    return cfg;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open output path: " + path);
    out << text;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

std::string join_doubles(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

int cmd_spectrum(const RunConfig& cfg) {
    auto rep = verify::compute_spectrum(cfg.n, cfg.m, cfg.params, cfg.tolerances.newton);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "mu,xi,E,grad_norm,iterations,max_bae_residual,eigen_residual\n";
        for (const auto& r : rep.records)
            os << join_ints(r.mu) << "," << join_doubles(r.xi) << "," << join_doubles(r.E) << ","
               << r.grad_norm << "," << r.iterations << "," << r.max_bae_residual << ","
               << r.eigen_residual << "\n";
        write_output(os.str(), cfg.out_path);
    } else {
        auto j = verify::to_json(rep);
        j["states"] = states::state_table_json(cfg.n, cfg.m, cfg.params);
        write_output(dump(j), cfg.out_path);
    }
    return rep.max_eigen_residual <= cfg.tolerances.eigen && rep.rank == rep.dim ? 0 : 1;
}

int cmd_pieri(const RunConfig& cfg) {
    auto rep = verify::check_pieri(cfg.n, cfg.m, cfg.params, cfg.tolerances.newton);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "n,m,max_residual,max_residual_q0\n"
           << rep.n << "," << rep.m << "," << rep.max_residual << "," << rep.max_residual_q0
           << "\n";
        write_output(os.str(), cfg.out_path);
    } else {
        write_output(dump(verify::to_json(rep)), cfg.out_path);
    }
    return rep.max_residual <= cfg.tolerances.eigen && rep.max_residual_q0 <= cfg.tolerances.eigen
               ? 0
               : 1;
}

int cmd_verify(const RunConfig& cfg) {
    verify::SuiteOptions opt;
    opt.seed = cfg.seed;
    auto reports = verify::run_suites(cfg.suites, opt);
    bool all_pass = true;
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "suite,relation,max_residual,tol,pass\n";
        for (const auto& rep : reports)
            for (const auto& c : rep.checks)
                os << rep.suite << "," << c.name << "," << c.max_residual << "," << c.tol << ","
                   << (c.pass ? 1 : 0) << "\n";
        write_output(os.str(), cfg.out_path);
    } else {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& rep : reports) j.push_back(verify::to_json(rep));
        write_output(dump(j), cfg.out_path);
    }
    for (const auto& rep : reports) all_pass = all_pass && rep.pass();
    return all_pass ? 0 : 1;
}

int cmd_hamiltonian(const RunConfig& cfg) {
    auto h = fock::hamiltonian_explicit(cfg.n, cfg.m, cfg.params);
    if (cfg.format == "csv")
        write_output(fock::hamiltonian_coordinate_list(h), cfg.out_path);
    else
        write_output(dump(fock::hamiltonian_json(h, cfg.params)), cfg.out_path);
    return 0;
}

int cmd_bethe(const RunConfig& cfg) {
    states::StateIndex idx(cfg.n, cfg.m);
    std::vector<bethe::BetheSolution> sols(idx.dim());
    parallel_for(idx.dim(), [&](int i) {
        sols[i] = bethe::solve_root(idx.at(i), cfg.params, cfg.m, cfg.tolerances.newton);
    });
    if (cfg.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "mu,xi,grad_norm,iterations,max_bae_residual,E\n";
        for (const auto& s : sols) {
            double worst_bae = 0.0;
            for (double b : s.bae_residual) worst_bae = std::max(worst_bae, b);
            std::vector<double> E;
            for (int r = 1; r <= static_cast<int>(s.xi.size()); ++r)
                E.push_back(bethe::eigenvalue_Er(s.xi, r));
            os << join_ints(s.mu) << "," << join_doubles(s.xi) << "," << s.grad_norm << ","
               << s.iterations << "," << worst_bae << "," << join_doubles(E) << "\n";
        }
        write_output(os.str(), cfg.out_path);
    } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& s : sols) arr.push_back(verify::to_json(s));
        write_output(dump(arr), cfg.out_path);
    }
    return 0;
}

int cmd_states(const RunConfig& cfg) {
    if (cfg.format == "csv")
        write_output(states::state_table_csv(cfg.n, cfg.m, cfg.params), cfg.out_path);
    else
        write_output(dump(states::state_table_json(cfg.n, cfg.m, cfg.params)), cfg.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"open q-boson system with two-sided boundary interactions"};
    app.require_subcommand(1);

    CliOverrides o;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "solve all Bethe roots and report the eigenbasis diagnostics");
    CLI::App* pieri = app.add_subcommand("pieri", "check the affine Pieri identity");
    CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites");
    CLI::App* hamiltonian =
        app.add_subcommand("hamiltonian", "export the n-particle sector Hamiltonian");
    CLI::App* bethe_cmd = app.add_subcommand("bethe", "solve and report all Bethe roots");
    CLI::App* states_cmd = app.add_subcommand("states", "emit the state table");
    for (CLI::App* cmd : {spectrum, pieri, verify_cmd, hamiltonian, bethe_cmd, states_cmd})
        add_common_options(cmd, o);
    verify_cmd->add_option("--suite", o.suites,
                           "suite name(s): fock daha laplacian integrals pieri completeness "
                           "poincare all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg = resolve_config(o);
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (pieri->parsed()) return cmd_pieri(cfg);
        if (verify_cmd->parsed()) return cmd_verify(cfg);
        if (hamiltonian->parsed()) return cmd_hamiltonian(cfg);
        if (bethe_cmd->parsed()) return cmd_bethe(cfg);
        if (states_cmd->parsed()) return cmd_states(cfg);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
