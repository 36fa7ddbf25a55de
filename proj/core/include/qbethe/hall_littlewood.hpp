#pragma once

// Macdonald's three-parameter hyperoctahedral Hall-Littlewood polynomials:
// the scattering coefficient, the full signed-permutation sum, and the q=0
// determinantal specialization.

#include <vector>

#include "qbethe/common.hpp"
#include "qbethe/states.hpp"

namespace qbethe::hl {

using states::BoundedPartition;

/// Spectral point xi in R^n (radians).
struct SpectralPoint {
    std::vector<double> xi;

    int n() const { return static_cast<int>(xi.size()); }

    /// True when xi_j, xi_j +- xi_k stay away from pi*Z (pole-free).
    bool is_regular(double tol = 1e-9) const;
};

/// A signed permutation (sigma, eps) of {1..n}; perm is 0-based.
struct SignedPermutation {
    std::vector<int> perm;
    std::vector<int> signs;

    /// Image (eps_1 xi_{sigma_1}, ..., eps_n xi_{sigma_n}).
    std::vector<double> apply(const std::vector<double>& xi) const;
};

/// All n!*2^n signed permutations, in a fixed deterministic order.
std::vector<SignedPermutation> enumerate_signed_permutations(int n);

/// The coefficient C(xi;q;a,ahat): product of single-variable boundary factors
/// and pair scattering factors. Throws PoleError when a denominator
/// |1 - e^{i theta}| falls below pole_tol.
Complex c_coefficient(const std::vector<double>& xi, double q, double a, double a_hat,
                      double pole_tol = 1e-9);

/// P_lambda(xi;q;a,ahat): sum over all signed permutations of
/// C(eps xi_sigma) exp(i sum_k eps_k xi_{sigma_k} lambda_k). For real
/// parameters and real xi the value is real; |Im| <= realness_tol *
/// max(1,|Re|) is asserted (InternalError otherwise) and the complex value
/// returned.
Complex hl_polynomial(const BoundedPartition& lambda, const SpectralPoint& xi, double q, double a,
                      double a_hat, double realness_tol = 1e-8);

/// q=0 determinant formula det[p_{n-j+lambda_j}(xi_k)] over the Vandermonde
/// factor in 2cos(xi). Requires distinct cos(xi_j) (PoleError otherwise).
Complex hl_q0_determinant(const BoundedPartition& lambda, const SpectralPoint& xi, double a,
                          double a_hat, double pole_tol = 1e-9);

/// One-variable block p_ell(xi;a,ahat) of the determinant formula.
Complex q0_block(int ell, double xi, double a, double a_hat, double pole_tol = 1e-9);

}  // namespace qbethe::hl
