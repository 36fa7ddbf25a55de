#include "qbethe/hall_littlewood.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbethe::hl {

namespace {

constexpr Complex I{0.0, 1.0};

bool near_pole(Complex denom, double tol) { return std::abs(denom) < tol; }

}  // namespace

bool SpectralPoint::is_regular(double tol) const {
    auto on_pi_grid = [&](double theta) { return std::abs(1.0 - std::exp(2.0 * I * theta)) < tol; };
    for (int j = 0; j < n(); ++j) {
        if (on_pi_grid(xi[j])) return false;
        for (int k = j + 1; k < n(); ++k)
            if (on_pi_grid(xi[j] + xi[k]) || on_pi_grid(xi[j] - xi[k])) return false;
    }
    return true;
}

std::vector<double> SignedPermutation::apply(const std::vector<double>& xi) const {
    std::vector<double> out(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k) out[k] = signs[k] * xi[perm[k]];
    return out;
}

std::vector<SignedPermutation> enumerate_signed_permutations(int n) {
    std::vector<SignedPermutation> out;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            SignedPermutation sp;
            sp.perm = perm;
            sp.signs.resize(n);
            for (int k = 0; k < n; ++k) sp.signs[k] = (mask >> k) & 1u ? -1 : 1;
            out.push_back(std::move(sp));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Complex c_coefficient(const std::vector<double>& xi, double q, double a, double a_hat,
                      double pole_tol) {
    const int n = static_cast<int>(xi.size());
    Complex c = 1.0;
    for (int j = 0; j < n; ++j) {
        Complex em = std::exp(-I * xi[j]);
        Complex denom = 1.0 - em * em;
        if (near_pole(denom, pole_tol)) throw PoleError("c_coefficient: pole at xi_j in pi*Z");
        c *= (1.0 - a * em) * (1.0 - a_hat * em) / denom;
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Complex em_d = std::exp(-I * (xi[j] - xi[k]));
            Complex em_s = std::exp(-I * (xi[j] + xi[k]));
            if (near_pole(1.0 - em_d, pole_tol) || near_pole(1.0 - em_s, pole_tol))
                throw PoleError("c_coefficient: pair pole at xi_j +- xi_k in 2pi*Z");
            c *= (1.0 - q * em_d) / (1.0 - em_d) * (1.0 - q * em_s) / (1.0 - em_s);
        }
    return c;
}

Complex hl_polynomial(const BoundedPartition& lambda, const SpectralPoint& xi, double q, double a,
                      double a_hat, double realness_tol) {
    const int n = xi.n();
    if (lambda.n() != n) throw DomainError("hl_polynomial: partition length != spectral dimension");
    Complex sum = 0.0;
    for (const auto& sp : enumerate_signed_permutations(n)) {
        std::vector<double> w = sp.apply(xi.xi);
        double phase = 0.0;
        for (int k = 0; k < n; ++k) phase += w[k] * lambda.parts()[k];
        sum += c_coefficient(w, q, a, a_hat) * std::exp(I * phase);
    }
    if (std::abs(sum.imag()) > realness_tol * std::max(1.0, std::abs(sum.real())))
        throw InternalError("hl_polynomial: imaginary part exceeds realness tolerance");
    return sum;
}

Complex q0_block(int ell, double xi, double a, double a_hat, double pole_tol) {
    Complex em = std::exp(-I * xi);
    Complex ep = std::exp(I * xi);
    Complex dm = 1.0 - em * em;
    Complex dp = 1.0 - ep * ep;
    if (near_pole(dm, pole_tol) || near_pole(dp, pole_tol))
        throw PoleError("q0_block: pole at xi in pi*Z");
    return (1.0 - a * em) * (1.0 - a_hat * em) / dm * std::exp(I * static_cast<double>(ell) * xi) +
           (1.0 - a * ep) * (1.0 - a_hat * ep) / dp * std::exp(-I * static_cast<double>(ell) * xi);
}

Complex hl_q0_determinant(const BoundedPartition& lambda, const SpectralPoint& xi, double a,
                          double a_hat, double pole_tol) {
    const int n = xi.n();
    if (lambda.n() != n)
        throw DomainError("hl_q0_determinant: partition length != spectral dimension");
    if (n == 0) return 1.0;
    Eigen::MatrixXcd mat(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            mat(j, k) = q0_block(n - (j + 1) + lambda.parts()[j], xi.xi[k], a, a_hat, pole_tol);
    Complex denom = 1.0;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Complex d = 2.0 * std::cos(xi.xi[j]) - 2.0 * std::cos(xi.xi[k]);
            if (std::abs(d) < pole_tol)
                throw PoleError("hl_q0_determinant: coinciding cos(xi_j), cos(xi_k)");
            denom *= d;
        }
    return mat.determinant() / denom;
}

}  // namespace qbethe::hl
