#pragma once

// Affine hyperoctahedral machinery: the W-action on Z^n, canonicalization
// into the fundamental alcove, lattice integral-reflection operators, the
// propagation operator with its triangular inverse, difference-reflection
// operators, the deformed Laplacian, commuting quantum integrals, Bethe wave
// functions and Poincare series.

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qbethe/common.hpp"
#include "qbethe/states.hpp"

namespace qbethe::hecke {

using states::BoundedPartition;
using states::ModelParams;

/// The five Hecke parameters. Constructed from model couplings via the
/// square-root conventions below; from_model re-derives the couplings and
/// requires agreement to 1e-14, and rejects parameters of modulus 1.
struct HeckeParams {
    Complex tau;
    Complex tau0, tau0_hat;
    Complex taun, taun_hat;

    /// tau = principal sqrt(q); taun = principal sqrt(-a_- ahat_-),
    /// taun_hat = a_-/taun; analogously for the 0-labelled pair from a_+.
    static HeckeParams from_model(const ModelParams& p);

    /// Inverse map q = tau^2, a_+ = tau0 tau0_hat, ahat_+ = -tau0/tau0_hat,
    /// a_- = taun taun_hat, ahat_- = -taun/taun_hat.
    ModelParams to_model() const;

    /// (tau_j, tauhat_j) for letter j in a rank-n group: j=0 gives the
    /// 0-pair, j=n the n-pair, interior letters (tau, tau).
    std::pair<Complex, Complex> letter_pair(int j, int n) const;
};

/// A word in the simple reflections s_0..s_n, letters listed left to right in
/// product order (the rightmost letter acts first on points).
struct AffineWord {
    std::vector<int> letters;
    int length() const { return static_cast<int>(letters.size()); }
};

/// a_j(x): a_0 = 2(m - x_1), a_j = x_j - x_{j+1}, a_n = 2 x_n.
int a_value(int j, const Point& x, int m);

/// s_j x (involution).
Point simple_reflection(int j, const Point& x, int m);

/// w(x) for w given by its reduced word (rightmost letter first).
Point apply_word(const AffineWord& w, Point x, int m);

/// w'(x): the signed-permutation part of w (translations dropped; s_0 acts as
/// negation of the first coordinate).
Point apply_word_derivative(const AffineWord& w, Point x);

/// tau_w = product of tau_{letter} over the word.
Complex tau_word(const AffineWord& w, const HeckeParams& hp, int n);

/// Shortest w with w(lambda) in Lambda_{n,m}, found greedily: while some
/// a_j(lambda) < 0, apply s_j (smallest such j) and record the letter.
std::pair<BoundedPartition, AffineWord> canonicalize(const Point& lambda, int m);

/// Memoizing pointwise evaluator of a lattice function. Pure given immutable
/// underlying data; the memo is per-instance and not thread-safe.
class Evaluator {
public:
    using Fn = std::function<Complex(const Point&)>;
    explicit Evaluator(Fn fn);
    Complex operator()(const Point& p) const;

private:
    std::shared_ptr<Fn> fn_;
    std::shared_ptr<std::unordered_map<Point, Complex, PointHash>> memo_;
};

/// Finitely supported lattice function with explicitly declared domain.
/// Evaluation outside the stored support is a hard error, never a silent
/// zero; the optional invariant closure instead evaluates anywhere through
/// canonicalization (lambda -> stored value at lambda_+).
class LatticeFunction {
public:
    using Map = std::unordered_map<Point, Complex, PointHash>;

    static LatticeFunction finite(Map values);

    /// W-invariant closure of values on Lambda_{n,m} (enumerate_states order).
    static LatticeFunction invariant_closure(int n, int m, const Eigen::VectorXcd& dominant_values);

    Complex operator()(const Point& p) const;
    bool defined_at(const Point& p) const;
    void set(const Point& p, Complex v);
    /// Declares every point of the window as known (zero unless already set).
    void declare_zero(const Box& window);
    Evaluator evaluator() const;
    bool invariant() const { return invariant_; }

private:
    std::shared_ptr<Map> values_ = std::make_shared<Map>();
    std::shared_ptr<std::vector<Box>> windows_ = std::make_shared<std::vector<Box>>();
    bool invariant_ = false;
    int n_ = 0, m_ = 1;
};

/// Plane wave e^{i xi . lambda} as a globally evaluable function.
Evaluator plane_wave(const std::vector<double>& xi);

/// Discrete integral-reflection operator I_j = tau_j s_j + J_j with the
/// three-branch segment sum and alternating weights.
Evaluator integral_reflection(int j, Evaluator f, const HeckeParams& hp, int m);

/// I_j^{-1} = I_j - (tau_j - tau_j^{-1}) via the quadratic relation.
Evaluator integral_reflection_inverse(int j, Evaluator f, const HeckeParams& hp, int m);

/// Translation (t_mu f)(lambda) = f(lambda - mu).
Evaluator translate(const Point& mu, Evaluator f);

/// I_w: letters applied with the rightmost acting first.
Evaluator apply_integral_word(const AffineWord& w, Evaluator f, const HeckeParams& hp, int m);

struct RowEntry {
    Point mu;
    Complex coeff;
};

/// Finite expansion (J f)(lambda) = sum coeff * f(mu), obtained by pulling
/// the evaluation functional at lambda_+ through the reduced word of
/// w_lambda. Entries sorted lexicographically; the diagonal carries
/// tau_{w_lambda}^{-2}.
std::vector<RowEntry> propagation_row(const Point& lambda, const HeckeParams& hp, int m);

/// (J f)(lambda) = tau_{w_lambda}^{-1} (I_{w_lambda} f)(lambda_+); identity
/// on the fundamental alcove.
Complex propagation(const Evaluator& f, const Point& lambda, const HeckeParams& hp, int m);

/// Back-substitution solver for J g = f on a globally evaluable f. Memoized
/// per instance. Termination guard: every row dependency must have its
/// polytope bounding box contained in the caller's (this confines the
/// recursion to a finite lattice set), and revisiting a point that is still
/// being solved raises a cycle error; both conditions surface implementation
/// bugs as hard errors rather than looping.
class PropagationInverse {
public:
    PropagationInverse(Evaluator f, const HeckeParams& hp, int m);
    Complex operator()(const Point& nu);

private:
    std::pair<Point, Point> polytope_bbox(const Point& p);

    Evaluator f_;
    HeckeParams hp_;
    int m_;
    std::unordered_map<Point, Complex, PointHash> memo_;
    std::unordered_map<Point, std::pair<Point, Point>, PointHash> bboxes_;
    std::unordered_set<Point, PointHash> on_stack_;
};

/// Difference-reflection operator (T^hat_j f)(lambda) =
/// tau_j f(lambda) + tau_j^{sgn(a_j(lambda))} (f(s_j lambda) - f(lambda)).
Complex difference_reflection(int j, const Evaluator& f, const Point& lambda,
                              const HeckeParams& hp, int m);

/// Explicit deformed Laplacian (L f)(lambda): nearest-neighbour terms with
/// weights tau^2_{w_{w_lambda(lambda +- e_j)}} plus the boundary d-terms.
Complex deformed_laplacian_explicit(const Evaluator& f, const Point& lambda,
                                    const HeckeParams& hp, int m);

/// W_0 orbit of e_1 + ... + e_r: all vectors with r entries of +-1.
std::vector<Point> orbit_e1r(int n, int r);

/// Matrix of the quantum integral H_r on Lambda_{n,m} (enumerate_states
/// order), computed through the propagation inverse of invariant closures.
Eigen::MatrixXcd quantum_integral_matrix(int r, int n, int m, const HeckeParams& hp);

/// Explicit q-boson Hamiltonian on Lambda_{n,m} in Hecke parameters (the
/// r = 1 integral in closed form).
Eigen::MatrixXcd hamiltonian_difference_form(int n, int m, const HeckeParams& hp);

/// Elements of W_0 with reduced words, enumerated breadth-first.
struct W0Element {
    std::vector<int> word;     // letters in 1..n
    std::vector<int> targets;  // y_i = sign(targets[i]) * x_{|targets[i]|-1}
};
std::vector<W0Element> enumerate_w0(int n);

/// phi_xi = sum_{w in W0} tau_w I_w e^{i xi .} as a global evaluator.
Evaluator symmetrized_wave_evaluator(const std::vector<double>& xi, const HeckeParams& hp, int m);

/// phi_xi materialized on a window.
LatticeFunction symmetrized_wave(const std::vector<double>& xi, const Box& window,
                                 const HeckeParams& hp, int m);

/// Phi_xi(lambda) = (J phi_xi)(lambda).
Complex affine_hl_value(const std::vector<double>& xi, const Point& lambda, const HeckeParams& hp,
                        int m);

/// Poincare series of the stabilizer W_lambda by Macdonald's product formula.
Complex poincare_series(const BoundedPartition& lambda, const HeckeParams& hp);

/// Brute-force companion: closes the parabolic stabilizer over its simple
/// generators and sums tau_w^2. Throws CapacityError beyond cap elements.
Complex poincare_series_bruteforce(const BoundedPartition& lambda, const HeckeParams& hp,
                                   std::size_t cap = 1u << 20);

/// Random finitely supported probe function: deterministic values on the
/// core box [-m, 2m]^n, with a known-zero margin that grows on
/// insufficient-support errors up to a cap.
class ProbeFunction {
public:
    ProbeFunction(int n, int m, std::uint64_t seed);
    Evaluator evaluator() const;
    bool grow();  // false once the margin cap is reached
    const Box& window() const { return state_->window; }

private:
    struct State {
        Box core;
        Box window;
        std::unordered_map<Point, Complex, PointHash> values;
    };
    std::shared_ptr<State> state_;
    int m_;
    int growths_ = 0;
};

/// Runs a probe-based computation, growing the probe window on
/// insufficient-support errors until it either succeeds or the cap is hit.
double with_window_growth(ProbeFunction& f, const std::function<double()>& body);

struct DahaCheck {
    std::string relation;
    double max_residual = 0.0;
    long trials = 0;
};

struct DahaReport {
    int n = 0, m = 1;
    double tol = 1e-12;
    std::vector<DahaCheck> checks;
    double worst() const;
    bool pass() const { return worst() <= tol; }
};

/// Verifies quadratic, braid and cross relations of the double affine Hecke
/// algebra in the integral-reflection realization on random finitely
/// supported functions; reports the max residual per relation. Residuals are
/// normalized by the largest term magnitude at each probe point (the
/// backward-error form), so the 1e-12 gate stays meaningful where the
/// operator chains amplify the probe values.
DahaReport check_daha_relations(int n, int m, const HeckeParams& hp, int trials, double tol,
                                std::uint64_t seed = 1);

}  // namespace qbethe::hecke
