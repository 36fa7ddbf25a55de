#pragma once

// Deformed q-boson field algebra on the Fock sectors: generator matrices,
// the Hamiltonian assembled from generators, and the explicit n-particle
// action used as a cross-oracle.

#include <Eigen/Core>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbethe/states.hpp"

namespace qbethe::fock {

using states::BoundedPartition;
using states::ModelParams;

/// Dense matrix of an operator mapping the n_in-particle sector to the
/// n_out-particle sector; rows/columns follow enumerate_states order.
/// Sectors with negative particle number have dimension zero.
struct SectorOperator {
    int n_in = 0;
    int n_out = 0;
    int m = 1;
    Eigen::MatrixXcd mat;
};

/// Annihilation beta_l: sector n -> n-1. (beta_l f)(lambda) = f(lambda with a
/// part l inserted); the zero operator when n = 0.
SectorOperator annihilate(int l, int n, int m, const ModelParams& p);

/// Creation beta_l^*: sector n -> n+1, with the weighted part-deletion action.
SectorOperator create(int l, int n, int m, const ModelParams& p);

/// Diagonal q^{sign*N_l}. Throws SingularityError for q = 0, sign = -1.
SectorOperator number_op(int l, int sign, int n, int m, const ModelParams& p);

/// H = g_-[N_0]_q + g_+[N_m]_q + sum_{0<=l<m} (beta*_{l+1} beta_l + beta*_l beta_{l+1}),
/// assembled by matrix products of the generator operators.
SectorOperator hamiltonian_from_generators(int n, int m, const ModelParams& p);

/// The explicit three-sum action of H on Lambda_{n,m} (diagonal boundary term
/// plus weighted hops), implemented directly on the state basis.
SectorOperator hamiltonian_explicit(int n, int m, const ModelParams& p);

struct RelationCheck {
    std::string relation;
    double max_residual = 0.0;
    bool skipped = false;
    std::string note;
};

struct AlgebraReport {
    int n = 0;
    int m = 1;
    std::vector<RelationCheck> checks;
    double worst() const;
    bool pass(double tol) const { return worst() <= tol; }
};

/// Verifies the q-boson algebra relations as matrix identities on sector n:
/// the commutation relations with q^{N_l}, beta beta* both products,
/// ultralocality across distinct sites, and weighted adjointness of
/// beta/beta* with respect to the sector inner products. The report carries
/// the max residual per relation; relations needing q^{-N} are skipped with a
/// note when q = 0.
AlgebraReport check_algebra_relations(int n, int m, const ModelParams& p, double tol = 1e-12);

/// JSON export {"n":..,"m":..,"dim":..,"params":{...},"entries":[[i,j,re,im],...]}
/// listing nonzero entries in row-major order.
nlohmann::ordered_json hamiltonian_json(const SectorOperator& op, const ModelParams& p);

/// Plain coordinate list, one "i j re im" line per nonzero entry, 0-based.
std::string hamiltonian_coordinate_list(const SectorOperator& op);

}  // namespace qbethe::fock
