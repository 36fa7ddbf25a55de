#include "qbethe/qboson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qbethe/qseries.hpp"

namespace qbethe::fock {

namespace {

int sector_dim(int n, int m) {
    return n < 0 ? 0 : static_cast<int>(states::state_count(n, m));
}

std::vector<int> insert_part(const std::vector<int>& parts, int l) {
    std::vector<int> out = parts;
    auto it = std::lower_bound(out.begin(), out.end(), l, std::greater<int>());
    out.insert(it, l);
    return out;
}

std::vector<int> delete_part(const std::vector<int>& parts, int l) {
    std::vector<int> out = parts;
    auto it = std::find(out.begin(), out.end(), l);
    out.erase(it);
    return out;
}

void check_site(int l, int m) {
    if (l < 0 || l > m) throw DomainError("site index out of range [0,m]");
}

}  // namespace

SectorOperator annihilate(int l, int n, int m, const ModelParams& p) {
    check_site(l, m);
    p.validate();
    if (n < 0) throw DomainError("sector index must be >= 0");
    SectorOperator op{n, n - 1, m, Eigen::MatrixXcd::Zero(sector_dim(n - 1, m), sector_dim(n, m))};
    if (n == 0) return op;
    states::StateIndex in(n, m), out(n - 1, m);
    for (int row = 0; row < out.dim(); ++row) {
        int col = in.index_of(insert_part(out.at(row).parts(), l));
        op.mat(row, col) = 1.0;
    }
    return op;
}

SectorOperator create(int l, int n, int m, const ModelParams& p) {
    check_site(l, m);
    p.validate();
    if (n < 0) throw DomainError("sector index must be >= 0");
    SectorOperator op{n, n + 1, m, Eigen::MatrixXcd::Zero(sector_dim(n + 1, m), sector_dim(n, m))};
    states::StateIndex in(n, m), out(n + 1, m);
    for (int row = 0; row < out.dim(); ++row) {
        const BoundedPartition& lam = out.at(row);
        int ml = lam.multiplicity(l);
        if (ml == 0) continue;
        double coeff = q_int(ml, p.q);
        if (l == 0) coeff *= 1.0 - p.c_minus() * int_pow(p.q, lam.multiplicity(0) - 1);
        if (l == m) coeff *= 1.0 - p.c_plus() * int_pow(p.q, lam.multiplicity(m) - 1);
        int col = in.index_of(delete_part(lam.parts(), l));
        op.mat(row, col) = coeff;
    }
    return op;
}

SectorOperator number_op(int l, int sign, int n, int m, const ModelParams& p) {
    check_site(l, m);
    p.validate();
    if (sign != 1 && sign != -1) throw DomainError("number_op sign must be +1 or -1");
    if (sign == -1 && p.q == 0.0)
        throw SingularityError("q^{-N_l} is singular at q = 0");
    states::StateIndex idx(n, m);
    SectorOperator op{n, n, m, Eigen::MatrixXcd::Zero(idx.dim(), idx.dim())};
    for (int i = 0; i < idx.dim(); ++i)
        op.mat(i, i) = int_pow(p.q, sign * idx.at(i).multiplicity(l));
    return op;
}

SectorOperator hamiltonian_from_generators(int n, int m, const ModelParams& p) {
    p.validate();
    states::StateIndex idx(n, m);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(idx.dim(), idx.dim());
    // Boundary terms g_-[N_0]_q + g_+[N_m]_q act diagonally.
    for (int i = 0; i < idx.dim(); ++i)
        H(i, i) = p.g_minus() * q_int(idx.at(i).multiplicity(0), p.q) +
                  p.g_plus() * q_int(idx.at(i).multiplicity(m), p.q);
    for (int l = 0; n >= 1 && l < m; ++l) {
        H += create(l + 1, n - 1, m, p).mat * annihilate(l, n, m, p).mat;
        H += create(l, n - 1, m, p).mat * annihilate(l + 1, n, m, p).mat;
    }
    return SectorOperator{n, n, m, std::move(H)};
}

SectorOperator hamiltonian_explicit(int n, int m, const ModelParams& p) {
    p.validate();
    states::StateIndex idx(n, m);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(idx.dim(), idx.dim());
    for (int row = 0; row < idx.dim(); ++row) {
        const BoundedPartition& lam = idx.at(row);
        const std::vector<int>& parts = lam.parts();
        int m0 = lam.multiplicity(0);
        int mm = lam.multiplicity(m);
        H(row, row) = p.g_minus() * q_int(m0, p.q) + p.g_plus() * q_int(mm, p.q);
        for (int j = 0; j < n; ++j) {
            int mult = lam.multiplicity(parts[j]);
            // hop up: lambda + e_j stays a bounded partition
            if (parts[j] < m && (j == 0 || parts[j - 1] > parts[j])) {
                double coeff = q_int(mult, p.q);
                if (parts[j] == 0) coeff *= 1.0 - p.c_minus() * int_pow(p.q, m0 - 1);
                std::vector<int> up = parts;
                ++up[j];
                H(row, idx.index_of(up)) += coeff;
            }
            // hop down: lambda - e_j stays a bounded partition
            if (parts[j] > 0 && (j == n - 1 || parts[j + 1] < parts[j])) {
                double coeff = q_int(mult, p.q);
                if (parts[j] == m) coeff *= 1.0 - p.c_plus() * int_pow(p.q, mm - 1);
                std::vector<int> dn = parts;
                --dn[j];
                H(row, idx.index_of(dn)) += coeff;
            }
        }
    }
    return SectorOperator{n, n, m, std::move(H)};
}

double AlgebraReport::worst() const {
    double w = 0.0;
    for (const auto& c : checks)
        if (!c.skipped) w = std::max(w, c.max_residual);
    return w;
}

namespace {

double max_abs(const Eigen::MatrixXcd& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace

AlgebraReport check_algebra_relations(int n, int m, const ModelParams& p, double /*tol*/) {
    if (n < 1) throw DomainError("check_algebra_relations requires n >= 1");
    p.validate();
    AlgebraReport report{n, m, {}};

    states::StateIndex idx(n, m);
    auto weights = [&](int nn) {
        auto list = states::enumerate_states(nn, m);
        std::vector<double> w(list.size());
        for (std::size_t i = 0; i < list.size(); ++i) w[i] = states::weight(list[i], p);
        return w;
    };
    std::vector<double> w_n = weights(n), w_nm1 = weights(n - 1);

    std::vector<SectorOperator> B(m + 1), C(m + 1), Bn1(m + 1), Cn1(m + 1);
    for (int l = 0; l <= m; ++l) {
        B[l] = annihilate(l, n, m, p);        // n -> n-1
        C[l] = create(l, n, m, p);            // n -> n+1
        Bn1[l] = annihilate(l, n + 1, m, p);  // n+1 -> n
        Cn1[l] = create(l, n - 1, m, p);      // n-1 -> n
    }

    // beta_l q^{N_l} = q q^{N_l} beta_l and q^{N_l} beta*_l = q beta*_l q^{N_l}
    {
        double res = 0.0;
        for (int l = 0; l <= m; ++l) {
            Eigen::MatrixXcd Qn = number_op(l, 1, n, m, p).mat;
            Eigen::MatrixXcd Qn1 = number_op(l, 1, n - 1, m, p).mat;
            Eigen::MatrixXcd Qp1 = number_op(l, 1, n + 1, m, p).mat;
            res = std::max(res, max_abs(B[l].mat * Qn - p.q * Qn1 * B[l].mat));
            res = std::max(res, max_abs(Qp1 * C[l].mat - p.q * C[l].mat * Qn));
        }
        report.checks.push_back({"beta q^N commutation", res});
    }

    // q^{N_l} q^{-N_l} = 1 (skipped at q = 0, where the inverse power is singular)
    if (p.q == 0.0) {
        report.checks.push_back(
            {"q^N q^-N = 1", 0.0, true, "skipped: q = 0 makes q^{-N_l} singular"});
    } else {
        double res = 0.0;
        Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(idx.dim(), idx.dim());
        for (int l = 0; l <= m; ++l)
            res = std::max(
                res, max_abs(number_op(l, 1, n, m, p).mat * number_op(l, -1, n, m, p).mat - id));
        report.checks.push_back({"q^N q^-N = 1", res});
    }

    // beta_l beta*_l = (1 - c_- delta_l q^{N_0})(1 - c_+ delta_{m-l} q^{N_m}) [N_l + 1]_q
    {
        double res = 0.0;
        for (int l = 0; l <= m; ++l) {
            Eigen::MatrixXcd lhs = Bn1[l].mat * C[l].mat;
            Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(idx.dim(), idx.dim());
            for (int i = 0; i < idx.dim(); ++i) {
                const auto& lam = idx.at(i);
                double v = q_int(lam.multiplicity(l) + 1, p.q);
                if (l == 0) v *= 1.0 - p.c_minus() * int_pow(p.q, lam.multiplicity(0));
                if (l == m) v *= 1.0 - p.c_plus() * int_pow(p.q, lam.multiplicity(m));
                rhs(i, i) = v;
            }
            res = std::max(res, max_abs(lhs - rhs));
        }
        report.checks.push_back({"beta beta* product", res});
    }

    // beta_l beta*_l - q beta*_l beta_l = (1 - c_- delta_l q^{2N_0})(1 - c_+ delta_{m-l} q^{2N_m})
    {
        double res = 0.0;
        for (int l = 0; l <= m; ++l) {
            Eigen::MatrixXcd lhs = Bn1[l].mat * C[l].mat - p.q * Cn1[l].mat * B[l].mat;
            Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(idx.dim(), idx.dim());
            for (int i = 0; i < idx.dim(); ++i) {
                const auto& lam = idx.at(i);
                double v = 1.0;
                if (l == 0) v *= 1.0 - p.c_minus() * int_pow(p.q, 2 * lam.multiplicity(0));
                if (l == m) v *= 1.0 - p.c_plus() * int_pow(p.q, 2 * lam.multiplicity(m));
                rhs(i, i) = v;
            }
            res = std::max(res, max_abs(lhs - rhs));
        }
        report.checks.push_back({"beta beta* q-commutator", res});
    }

    // ultralocality: generators at distinct sites commute
    {
        double res = 0.0;
        for (int l = 0; l <= m; ++l) {
            for (int k = 0; k <= m; ++k) {
                if (k == l) continue;
                res = std::max(res, max_abs(Bn1[l].mat * C[k].mat - Cn1[k].mat * B[l].mat));
                Eigen::MatrixXcd Qk_n = number_op(k, 1, n, m, p).mat;
                Eigen::MatrixXcd Qk_n1 = number_op(k, 1, n - 1, m, p).mat;
                res = std::max(res, max_abs(B[l].mat * Qk_n - Qk_n1 * B[l].mat));
                if (k < l)
                    res = std::max(res, max_abs(annihilate(l, n - 1, m, p).mat * B[k].mat -
                                                annihilate(k, n - 1, m, p).mat * B[l].mat));
            }
        }
        report.checks.push_back({"ultralocality", res});
    }

    // weighted adjointness: Delta_{n-1}(lambda) B(lambda,mu) = Delta_n(mu) conj(C(mu,lambda))
    // where C is create on sector n-1
    {
        double res = 0.0;
        for (int l = 0; l <= m; ++l) {
            const Eigen::MatrixXcd& Bm = B[l].mat;     // (n-1)-dim x n-dim
            const Eigen::MatrixXcd& Cm = Cn1[l].mat;   // n-dim x (n-1)-dim
            for (int r = 0; r < Bm.rows(); ++r)
                for (int c = 0; c < Bm.cols(); ++c)
                    res = std::max(res, std::abs(w_nm1[r] * Bm(r, c) - w_n[c] * std::conj(Cm(c, r))));
        }
        report.checks.push_back({"weighted adjointness", res});
    }
    return report;
}

nlohmann::ordered_json hamiltonian_json(const SectorOperator& op, const ModelParams& p) {
    nlohmann::ordered_json j;
    j["n"] = op.n_in;
    j["m"] = op.m;
    j["dim"] = op.mat.rows();
    j["params"] = {{"q", p.q},
                   {"a_minus", p.a_minus},
                   {"a_hat_minus", p.a_hat_minus},
                   {"a_plus", p.a_plus},
                   {"a_hat_plus", p.a_hat_plus}};
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (int i = 0; i < op.mat.rows(); ++i)
        for (int k = 0; k < op.mat.cols(); ++k) {
            Complex v = op.mat(i, k);
            if (v != Complex(0.0, 0.0))
                entries.push_back(nlohmann::ordered_json::array({i, k, v.real(), v.imag()}));
        }
    j["entries"] = std::move(entries);
    return j;
}

std::string hamiltonian_coordinate_list(const SectorOperator& op) {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < op.mat.rows(); ++i)
        for (int k = 0; k < op.mat.cols(); ++k) {
            Complex v = op.mat(i, k);
            if (v != Complex(0.0, 0.0))
                os << i << " " << k << " " << v.real() << " " << v.imag() << "\n";
        }
    return os.str();
}

}  // namespace qbethe::fock
