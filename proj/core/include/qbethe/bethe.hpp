#pragma once

// Bethe roots as minima of the strictly convex Morse function: analytic
// gradient and Hessian, damped Newton solver, root-quality diagnostics
// (alcove membership, momentum-gap brackets, multiplicative Bethe-equation
// residuals) and eigenvalue evaluation.

#include <Eigen/Core>
#include <vector>

#include "qbethe/common.hpp"
#include "qbethe/states.hpp"

namespace qbethe::bethe {

using states::BoundedPartition;
using states::ModelParams;

/// Converged root for the label mu, with diagnostics.
struct BetheSolution {
    std::vector<int> mu;
    std::vector<double> xi;
    double grad_norm = 0.0;
    int iterations = 0;
    double kappa_minus = 0.0;
    double kappa_plus = 0.0;
    bool in_alcove = false;
    bool gaps1_ok = false;   // per-coordinate momentum brackets
    bool gaps2_ok = false;   // pairwise difference brackets
    std::vector<double> bae_residual;
};

/// The odd continuous phase v_a(xi) = xi - 2 arg(1 - a e^{i xi}), equal to the
/// integral of (1-a^2)/(1-2a cos u + a^2) from 0 to xi. Requires |a| < 1.
double v_phase(double a, double xi);

/// v_a'(xi) = (1-a^2)/(1-2a cos xi + a^2).
double v_phase_deriv(double a, double xi);

/// Gradient of V_mu at xi; component j is
/// 2m xi_j + sum of boundary phases + pair phases - 2 pi (rho_j + mu_j).
std::vector<double> grad_V(const BoundedPartition& mu, const std::vector<double>& xi,
                           const ModelParams& p, int m);

/// Hessian of V_mu at xi (symmetric positive definite on the domain).
Eigen::MatrixXd hessian_V(const std::vector<double>& xi, const ModelParams& p, int m);

/// kappa_- (first) and kappa_+ (second) of the momentum-gap brackets.
std::pair<double, double> kappa_bounds(const ModelParams& p, int n);

/// Damped Newton on grad_V from the bracket midpoint. Throws ConvergenceError
/// (carrying the last iterate) if max_iter is exceeded.
BetheSolution solve_root(const BoundedPartition& mu, const ModelParams& p, int m,
                         double tol = 1e-10, int max_iter = 50);

/// Componentwise |e^{2 i m xi_j} - RHS_j| of the multiplicative Bethe system.
std::vector<double> bae_residual(const std::vector<double>& xi, const ModelParams& p, int m,
                                 int n);

/// E(xi) = 2 sum_j cos(xi_j).
double eigenvalue_E(const std::vector<double>& xi);

/// E_r(xi): elementary symmetric polynomial of degree r in (2 cos xi_j).
double eigenvalue_Er(const std::vector<double>& xi, int r);

}  // namespace qbethe::bethe
