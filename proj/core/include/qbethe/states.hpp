#pragma once

// State space of the n-particle sector on the open lattice {0,...,m}:
// bounded partitions, multiplicities, the orthogonality weight and the
// weighted inner product.

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qbethe/common.hpp"

#include <nlohmann/json.hpp>

namespace qbethe::states {

/// Coupling parameters of the open q-boson model. The boundary couplings
/// c_pm and g_pm are derived from the four a-parameters and are never set
/// independently.
struct ModelParams {
    double q = 0.0;
    double a_minus = 0.0;
    double a_hat_minus = 0.0;
    double a_plus = 0.0;
    double a_hat_plus = 0.0;

    double c_minus() const { return a_minus * a_hat_minus; }
    double c_plus() const { return a_plus * a_hat_plus; }
    double g_minus() const { return a_minus + a_hat_minus; }
    double g_plus() const { return a_plus + a_hat_plus; }

    /// Throws DomainError unless all five parameters lie in (-1,1);
    /// with strict=true additionally requires them nonzero.
    void validate(bool strict = false) const;
};

/// A weakly decreasing tuple with m >= parts[0] >= ... >= parts[n-1] >= 0.
/// Labels a state of the n-particle sector on {0,...,m}.
class BoundedPartition {
public:
    BoundedPartition(std::vector<int> parts, int m);

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return static_cast<int>(parts_.size()); }
    int m() const { return m_; }

    /// m_l(lambda): number of parts equal to l. Throws DomainError for l
    /// outside [0, m].
    int multiplicity(int l) const;

    bool operator==(const BoundedPartition& o) const { return m_ == o.m_ && parts_ == o.parts_; }

private:
    std::vector<int> parts_;
    int m_;
};

/// |Lambda_{n,m}| = binomial(m+n, n), throwing CapacityError on overflow.
std::uint64_t state_count(int n, int m);

/// All states of Lambda_{n,m} in descending lexicographic order of parts.
std::vector<BoundedPartition> enumerate_states(int n, int m);

/// Stable index lookup for the enumeration order above.
class StateIndex {
public:
    StateIndex(int n, int m);

    int n() const { return n_; }
    int m() const { return m_; }
    int dim() const { return static_cast<int>(list_.size()); }
    const std::vector<BoundedPartition>& list() const { return list_; }
    const BoundedPartition& at(int i) const { return list_[i]; }

    int index_of(const std::vector<int>& parts) const;  // -1 if absent
    int index_of(const BoundedPartition& p) const { return index_of(p.parts()); }

private:
    int n_, m_;
    std::vector<BoundedPartition> list_;
    std::unordered_map<Point, int, PointHash> lookup_;
};

/// Orthogonality weight Delta_{n,m}(lambda); strictly positive on the open
/// parameter domain.
double weight(const BoundedPartition& lambda, const ModelParams& p);

/// (f,g) = sum_lambda f(lambda) conj(g(lambda)) Delta(lambda), with f,g
/// indexed by enumerate_states(n,m). Throws DomainError on size mismatch.
Complex inner_product(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, int n, int m,
                      const ModelParams& p);

/// State table export, one entry per state: {"parts":[...],"weight":...}.
nlohmann::ordered_json state_table_json(int n, int m, const ModelParams& p);

/// CSV with columns index,parts,weight (parts space-separated).
std::string state_table_csv(int n, int m, const ModelParams& p);

}  // namespace qbethe::states
