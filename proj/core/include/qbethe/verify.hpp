#pragma once

// Verification suites and machine-readable reports: full-spectrum
// computation with completeness diagnostics, the affine Pieri check, and the
// property suites exposed through the CLI.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbethe/bethe.hpp"
#include "qbethe/states.hpp"

namespace qbethe::verify {

using states::ModelParams;

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
};

SuiteReport run_fock_suite(const SuiteOptions& opt = {});
SuiteReport run_daha_suite(const SuiteOptions& opt = {});
SuiteReport run_laplacian_suite(const SuiteOptions& opt = {});
SuiteReport run_integrals_suite(const SuiteOptions& opt = {});
SuiteReport run_pieri_suite(const SuiteOptions& opt = {});
SuiteReport run_completeness_suite(const SuiteOptions& opt = {});
SuiteReport run_poincare_suite(const SuiteOptions& opt = {});

/// Dispatch by suite name; "all" runs every suite. Throws UsageError on an
/// unknown name.
std::vector<SuiteReport> run_suites(const std::vector<std::string>& names,
                                    const SuiteOptions& opt = {});

/// Deterministic parameter grids (low-discrepancy, seeded).
std::vector<ModelParams> param_grid_wide(int count, std::uint64_t seed);
std::vector<ModelParams> param_grid_strict(int count, std::uint64_t seed);

struct SpectralRecord {
    std::vector<int> mu;
    std::vector<double> xi;
    std::vector<double> E;  // E_1..E_n
    double grad_norm = 0.0;
    int iterations = 0;
    double max_bae_residual = 0.0;
    std::vector<double> bae_residual;
    double eigen_residual = 0.0;  // ||H psi - E_1 psi||_inf
    bool in_alcove = false;
    bool gaps_ok = false;
};

struct SpectralReport {
    int n = 0, m = 1;
    ModelParams params;
    std::vector<SpectralRecord> records;
    int dim = 0;
    int rank = 0;
    double singular_ratio = 0.0;      // sigma_min / sigma_max of Psi
    double max_eigen_residual = 0.0;
    double gram_offdiag_mass = 0.0;   // orthogonality diagnostic, never a gate
};

/// Solves every Bethe root, builds the eigenfunction matrix Psi[lambda,mu] =
/// P_lambda(xi_mu; q, a_-, ahat_-), and reports spectral residuals, the
/// numerical rank of Psi and the Gram diagnostics.
SpectralReport compute_spectrum(int n, int m, const ModelParams& p, double newton_tol = 1e-10,
                                int max_iter = 50);

struct PieriReport {
    int n = 0, m = 1;
    ModelParams params;
    double max_residual = 0.0;     // identity at the model's q
    double max_residual_q0 = 0.0;  // q = 0 variant with delta-exponent weights
};

/// Residuals of the affine Pieri identity over all (lambda, mu) pairs at the
/// Bethe roots, plus the q = 0 variant evaluated with q set to zero.
PieriReport check_pieri(int n, int m, const ModelParams& p, double newton_tol = 1e-10);

nlohmann::ordered_json to_json(const SuiteReport& r);
nlohmann::ordered_json to_json(const SpectralReport& r);
nlohmann::ordered_json to_json(const PieriReport& r);
nlohmann::ordered_json to_json(const bethe::BetheSolution& s);

}  // namespace qbethe::verify
