#include "qbethe/bethe.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qbethe::bethe {

namespace {

constexpr double PI = 3.14159265358979323846;
constexpr Complex I{0.0, 1.0};

double sq(double x) { return x * x; }

}  // namespace

double v_phase(double a, double xi) {
    if (!(a > -1.0 && a < 1.0)) throw DomainError("v_phase requires |a| < 1");
    // Re(1 - a e^{i xi}) = 1 - a cos(xi) > 0, so the principal argument is the
    // continuous branch and v is odd with v(xi + 2pi) = v(xi) + 2pi.
    return xi - 2.0 * std::arg(1.0 - a * std::exp(I * xi));
}

double v_phase_deriv(double a, double xi) {
    if (!(a > -1.0 && a < 1.0)) throw DomainError("v_phase_deriv requires |a| < 1");
    return (1.0 - a * a) / (1.0 - 2.0 * a * std::cos(xi) + a * a);
}

std::vector<double> grad_V(const BoundedPartition& mu, const std::vector<double>& xi,
                           const ModelParams& p, int m) {
    p.validate();
    const int n = mu.n();
    if (static_cast<int>(xi.size()) != n) throw DomainError("grad_V: xi length != n");
    std::vector<double> g(n);
    for (int j = 0; j < n; ++j) {
        int rho_j = n - j;  // rho_j = n + 1 - (j+1) with 0-based j
        double s = 2.0 * m * xi[j] + v_phase(p.a_minus, xi[j]) + v_phase(p.a_hat_minus, xi[j]) +
                   v_phase(p.a_plus, xi[j]) + v_phase(p.a_hat_plus, xi[j]);
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            s += v_phase(p.q, xi[k] + xi[j]) - v_phase(p.q, xi[k] - xi[j]);
        }
        g[j] = s - 2.0 * PI * (rho_j + mu.parts()[j]);
    }
    return g;
}

Eigen::MatrixXd hessian_V(const std::vector<double>& xi, const ModelParams& p, int m) {
    p.validate();
    const int n = static_cast<int>(xi.size());
    Eigen::MatrixXd H(n, n);
    for (int j = 0; j < n; ++j) {
        double d = 2.0 * m + v_phase_deriv(p.a_minus, xi[j]) + v_phase_deriv(p.a_hat_minus, xi[j]) +
                   v_phase_deriv(p.a_plus, xi[j]) + v_phase_deriv(p.a_hat_plus, xi[j]);
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            d += v_phase_deriv(p.q, xi[j] + xi[l]) + v_phase_deriv(p.q, xi[j] - xi[l]);
            H(j, l) = v_phase_deriv(p.q, xi[j] + xi[l]) - v_phase_deriv(p.q, xi[j] - xi[l]);
        }
        H(j, j) = d;
    }
    return H;
}

std::pair<double, double> kappa_bounds(const ModelParams& p, int n) {
    auto lower = [](double a) { return (1.0 - a * a) / sq(1.0 + std::abs(a)); };
    auto upper = [](double a) { return (1.0 - a * a) / sq(1.0 - std::abs(a)); };
    double boundary_lo = 0.5 * (lower(p.a_minus) + lower(p.a_hat_minus) + lower(p.a_plus) +
                                lower(p.a_hat_plus));
    double boundary_hi = 0.5 * (upper(p.a_minus) + upper(p.a_hat_minus) + upper(p.a_plus) +
                                upper(p.a_hat_plus));
    double kappa_plus = (n - 1) * lower(p.q) + boundary_lo;
    double kappa_minus = (n - 1) * upper(p.q) + boundary_hi;
    return {kappa_minus, kappa_plus};
}

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

BetheSolution solve_root(const BoundedPartition& mu, const ModelParams& p, int m, double tol,
                         int max_iter) {
    p.validate();
    const int n = mu.n();
    auto [kminus, kplus] = kappa_bounds(p, n);

    BetheSolution sol;
    sol.mu = mu.parts();
    sol.kappa_minus = kminus;
    sol.kappa_plus = kplus;

    std::vector<double> xi(n);
    for (int j = 0; j < n; ++j) {
        double rm = PI * (n - j + mu.parts()[j]);
        // Bracket midpoint; the Dirichlet closed form is the degenerate case
        // kminus = kplus. The guard kplus <= -m cannot fire on the open domain.
        if (m + kplus <= 0.0)
            xi[j] = rm / (m + n + 1);
        else
            xi[j] = 0.5 * (rm / (m + kminus) + rm / (m + kplus));
    }

    std::vector<double> g = grad_V(mu, xi, p, m);
    double gn = norm2(g);
    int iter = 0;
    while (gn > tol) {
        if (iter >= max_iter)
            throw ConvergenceError("solve_root: Newton did not converge within max_iter", xi);
        Eigen::MatrixXd H = hessian_V(xi, p, m);
        Eigen::VectorXd rhs(n);
        for (int j = 0; j < n; ++j) rhs[j] = -g[j];
        Eigen::VectorXd dx = H.llt().solve(rhs);
        double step = 1.0;
        std::vector<double> xi_next(n);
        while (true) {
            for (int j = 0; j < n; ++j) xi_next[j] = xi[j] + step * dx[j];
            std::vector<double> g_next = grad_V(mu, xi_next, p, m);
            double gn_next = norm2(g_next);
            if (gn_next < gn || step < 1e-12) {
                xi = xi_next;
                g = g_next;
                gn = gn_next;
                break;
            }
            step *= 0.5;
        }
        ++iter;
    }

    sol.xi = xi;
    sol.grad_norm = gn;
    sol.iterations = iter;
    sol.bae_residual = bae_residual(xi, p, m, n);

    sol.in_alcove = true;
    for (int j = 0; j < n; ++j) {
        double hi = j == 0 ? PI : xi[j - 1];
        if (!(xi[j] > 0.0 && xi[j] < hi)) sol.in_alcove = false;
    }
    // At exactly vanishing couplings the bracket degenerates to a point (the
    // Dirichlet closed form), so the membership test carries a small slack.
    const double slack = 1e-10;
    sol.gaps1_ok = true;
    for (int j = 0; j < n; ++j) {
        double rm = PI * (n - j + mu.parts()[j]);
        if (!(rm / (m + kminus) - slack < xi[j] && xi[j] < rm / (m + kplus) + slack))
            sol.gaps1_ok = false;
    }
    sol.gaps2_ok = true;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            double rm = PI * ((k - j) + mu.parts()[j] - mu.parts()[k]);
            double d = xi[j] - xi[k];
            if (!(rm / (m + kminus) - slack < d && d < rm / (m + kplus) + slack))
                sol.gaps2_ok = false;
        }
    return sol;
}

std::vector<double> bae_residual(const std::vector<double>& xi, const ModelParams& p, int m,
                                 int n) {
    p.validate();
    if (static_cast<int>(xi.size()) != n) throw DomainError("bae_residual: xi length != n");
    std::vector<double> res(n);
    auto boundary_factor = [&](double a, Complex e) {
        Complex denom = e - a;
        if (std::abs(denom) < 1e-12) throw PoleError("bae_residual: boundary factor pole");
        return (1.0 - a * e) / denom;
    };
    for (int j = 0; j < n; ++j) {
        Complex e = std::exp(I * xi[j]);
        Complex rhs = boundary_factor(p.a_plus, e) * boundary_factor(p.a_hat_plus, e) *
                      boundary_factor(p.a_minus, e) * boundary_factor(p.a_hat_minus, e);
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            Complex ed = std::exp(I * (xi[j] - xi[k]));
            Complex es = std::exp(I * (xi[j] + xi[k]));
            if (std::abs(ed - p.q) < 1e-12 || std::abs(es - p.q) < 1e-12)
                throw PoleError("bae_residual: pair scattering pole");
            rhs *= (1.0 - p.q * ed) / (ed - p.q) * (1.0 - p.q * es) / (es - p.q);
        }
        res[j] = std::abs(std::exp(2.0 * I * static_cast<double>(m) * xi[j]) - rhs);
    }
    return res;
}

double eigenvalue_E(const std::vector<double>& xi) {
    double s = 0.0;
    for (double x : xi) s += 2.0 * std::cos(x);
    return s;
}

double eigenvalue_Er(const std::vector<double>& xi, int r) {
    const int n = static_cast<int>(xi.size());
    if (r < 1 || r > n) throw DomainError("eigenvalue_Er: r out of range [1,n]");
    // elementary symmetric polynomial in (2 cos xi_j) via the stable recurrence
    std::vector<double> e(r + 1, 0.0);
    e[0] = 1.0;
    for (int j = 0; j < n; ++j) {
        double x = 2.0 * std::cos(xi[j]);
        for (int k = std::min(r, j + 1); k >= 1; --k) e[k] += x * e[k - 1];
    }
    return e[r];
}

}  // namespace qbethe::bethe
