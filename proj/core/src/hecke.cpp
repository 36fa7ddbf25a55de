#include "qbethe/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "qbethe/qseries.hpp"

namespace qbethe::hecke {

namespace {

constexpr Complex I{0.0, 1.0};

Complex principal_sqrt(double x) {
    return x >= 0.0 ? Complex(std::sqrt(x), 0.0) : Complex(0.0, std::sqrt(-x));
}

void check_letter(int j, int n) {
    if (j < 0 || j > n) throw DomainError("simple reflection index out of range [0,n]");
}

}  // namespace

HeckeParams HeckeParams::from_model(const ModelParams& p) {
    p.validate(/*strict=*/true);
    HeckeParams hp;
    hp.tau = principal_sqrt(p.q);
    hp.taun = principal_sqrt(-p.a_minus * p.a_hat_minus);
    hp.taun_hat = p.a_minus / hp.taun;
    hp.tau0 = principal_sqrt(-p.a_plus * p.a_hat_plus);
    hp.tau0_hat = p.a_plus / hp.tau0;

    const Complex all[] = {hp.tau, hp.tau0, hp.tau0_hat, hp.taun, hp.taun_hat};
    for (const Complex& t : all)
        if (std::abs(std::abs(t) - 1.0) <= 1e-12)
            throw DomainError("Hecke parameter has modulus 1 (root-of-unity exclusion)");

    ModelParams back = hp.to_model();
    double err = std::abs(back.q - p.q) + std::abs(back.a_minus - p.a_minus) +
                 std::abs(back.a_hat_minus - p.a_hat_minus) + std::abs(back.a_plus - p.a_plus) +
                 std::abs(back.a_hat_plus - p.a_hat_plus);
    Complex imag_leak = hp.tau * hp.tau + hp.tau0 * hp.tau0_hat + hp.taun * hp.taun_hat -
                        hp.tau0 / hp.tau0_hat - hp.taun / hp.taun_hat;
    if (err > 1e-14 || std::abs(imag_leak.imag()) > 1e-13)
        throw InternalError("HeckeParams round trip failed to reproduce model couplings");
    return hp;
}

ModelParams HeckeParams::to_model() const {
    ModelParams p;
    p.q = (tau * tau).real();
    p.a_plus = (tau0 * tau0_hat).real();
    p.a_hat_plus = (-tau0 / tau0_hat).real();
    p.a_minus = (taun * taun_hat).real();
    p.a_hat_minus = (-taun / taun_hat).real();
    return p;
}

std::pair<Complex, Complex> HeckeParams::letter_pair(int j, int n) const {
    check_letter(j, n);
    if (j == 0) return {tau0, tau0_hat};
    if (j == n) return {taun, taun_hat};
    return {tau, tau};
}

int a_value(int j, const Point& x, int m) {
    const int n = static_cast<int>(x.size());
    check_letter(j, n);
    if (j == 0) return 2 * (m - x[0]);
    if (j == n) return 2 * x[n - 1];
    return x[j - 1] - x[j];
}

Point simple_reflection(int j, const Point& x, int m) {
    const int n = static_cast<int>(x.size());
    check_letter(j, n);
    Point y = x;
    if (j == 0)
        y[0] = 2 * m - x[0];
    else if (j == n)
        y[n - 1] = -x[n - 1];
    else
        std::swap(y[j - 1], y[j]);
    return y;
}

Point apply_word(const AffineWord& w, Point x, int m) {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        x = simple_reflection(*it, x, m);
    return x;
}

Point apply_word_derivative(const AffineWord& w, Point x) {
    const int n = static_cast<int>(x.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        int j = *it;
        if (j == 0)
            x[0] = -x[0];
        else if (j == n)
            x[n - 1] = -x[n - 1];
        else
            std::swap(x[j - 1], x[j]);
    }
    return x;
}

Complex tau_word(const AffineWord& w, const HeckeParams& hp, int n) {
    Complex t = 1.0;
    for (int j : w.letters) t *= hp.letter_pair(j, n).first;
    return t;
}

std::pair<BoundedPartition, AffineWord> canonicalize(const Point& lambda, int m) {
    const int n = static_cast<int>(lambda.size());
    Point x = lambda;
    std::vector<int> applied;
    while (true) {
        int pick = -1;
        for (int j = 0; j <= n; ++j)
            if (a_value(j, x, m) < 0) {
                pick = j;
                break;
            }
        if (pick < 0) break;
        x = simple_reflection(pick, x, m);
        applied.push_back(pick);
    }
    AffineWord w;
    w.letters.assign(applied.rbegin(), applied.rend());
    return {BoundedPartition(x, m), std::move(w)};
}

Evaluator::Evaluator(Fn fn)
    : fn_(std::make_shared<Fn>(std::move(fn))),
      memo_(std::make_shared<std::unordered_map<Point, Complex, PointHash>>()) {}

Complex Evaluator::operator()(const Point& p) const {
    auto it = memo_->find(p);
    if (it != memo_->end()) return it->second;
    Complex v = (*fn_)(p);
    memo_->emplace(p, v);
    return v;
}

LatticeFunction LatticeFunction::finite(Map values) {
    LatticeFunction f;
    *f.values_ = std::move(values);
    return f;
}

LatticeFunction LatticeFunction::invariant_closure(int n, int m,
                                                   const Eigen::VectorXcd& dominant_values) {
    LatticeFunction f;
    f.invariant_ = true;
    f.n_ = n;
    f.m_ = m;
    states::StateIndex idx(n, m);
    if (dominant_values.size() != idx.dim())
        throw DomainError("invariant_closure: value vector length != dim Lambda_{n,m}");
    for (int i = 0; i < idx.dim(); ++i)
        f.values_->emplace(idx.at(i).parts(), dominant_values[i]);
    return f;
}

Complex LatticeFunction::operator()(const Point& p) const {
    auto it = values_->find(p);
    if (it != values_->end()) return it->second;
    if (invariant_) {
        auto [plus, w] = canonicalize(p, m_);
        auto jt = values_->find(plus.parts());
        if (jt == values_->end()) throw InsufficientSupportError(p);
        return jt->second;
    }
    for (const Box& b : *windows_)
        if (b.contains(p)) return 0.0;
    throw InsufficientSupportError(p);
}

bool LatticeFunction::defined_at(const Point& p) const {
    if (invariant_) return true;
    if (values_->count(p)) return true;
    for (const Box& b : *windows_)
        if (b.contains(p)) return true;
    return false;
}

void LatticeFunction::set(const Point& p, Complex v) { (*values_)[p] = v; }

void LatticeFunction::declare_zero(const Box& window) { windows_->push_back(window); }

Evaluator LatticeFunction::evaluator() const {
    LatticeFunction self = *this;  // shares the underlying maps
    return Evaluator([self](const Point& p) { return self(p); });
}

Evaluator plane_wave(const std::vector<double>& xi) {
    return Evaluator([xi](const Point& p) {
        double phase = 0.0;
        for (std::size_t i = 0; i < xi.size(); ++i) phase += xi[i] * p[i];
        return std::exp(I * phase);
    });
}

namespace {

// Offsets lambda by k*alpha_j in place.
void step_alpha(Point& x, int j, int n, int k) {
    if (j == 0)
        x[0] -= k;
    else if (j == n)
        x[n - 1] += k;
    else {
        x[j - 1] += k;
        x[j] -= k;
    }
}

}  // namespace

Evaluator integral_reflection(int j, Evaluator f, const HeckeParams& hp, int m) {
    return Evaluator([j, f, hp, m](const Point& lam) -> Complex {
        const int n = static_cast<int>(lam.size());
        auto [tj, tjh] = hp.letter_pair(j, n);
        Complex u_even = tj - 1.0 / tj;
        Complex u_odd = tjh - 1.0 / tjh;
        int a = a_value(j, lam, m);
        Complex out = tj * f(simple_reflection(j, lam, m));
        if (a > 0) {
            Point x = lam;
            for (int k = 1; k <= a; ++k) {
                step_alpha(x, j, n, -1);
                out -= (k % 2 == 0 ? u_even : u_odd) * f(x);
            }
        } else if (a < 0) {
            Point x = lam;
            for (int k = 0; k <= -a - 1; ++k) {
                if (k > 0) step_alpha(x, j, n, 1);
                out += (k % 2 == 0 ? u_even : u_odd) * f(x);
            }
        }
        return out;
    });
}

Evaluator integral_reflection_inverse(int j, Evaluator f, const HeckeParams& hp, int m) {
    Evaluator If = integral_reflection(j, f, hp, m);
    return Evaluator([j, f, If, hp](const Point& lam) -> Complex {
        const int n = static_cast<int>(lam.size());
        Complex tj = hp.letter_pair(j, n).first;
        return If(lam) - (tj - 1.0 / tj) * f(lam);
    });
}

Evaluator translate(const Point& mu, Evaluator f) {
    return Evaluator([mu, f](const Point& lam) {
        Point x = lam;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= mu[i];
        return f(x);
    });
}

Evaluator apply_integral_word(const AffineWord& w, Evaluator f, const HeckeParams& hp, int m) {
    Evaluator g = std::move(f);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        g = integral_reflection(*it, g, hp, m);
    return g;
}

std::vector<RowEntry> propagation_row(const Point& lambda, const HeckeParams& hp, int m) {
    const int n = static_cast<int>(lambda.size());
    auto [plus, word] = canonicalize(lambda, m);
    LatticeFunction::Map coeffs;
    coeffs[plus.parts()] = 1.0 / tau_word(word, hp, n);
    for (int j : word.letters) {
        auto [tj, tjh] = hp.letter_pair(j, n);
        Complex u_even = tj - 1.0 / tj;
        Complex u_odd = tjh - 1.0 / tjh;
        LatticeFunction::Map next;
        next.reserve(coeffs.size() * 2);
        for (const auto& [nu, c] : coeffs) {
            int a = a_value(j, nu, m);
            next[simple_reflection(j, nu, m)] += c * tj;
            if (a > 0) {
                Point x = nu;
                for (int k = 1; k <= a; ++k) {
                    step_alpha(x, j, n, -1);
                    next[x] -= c * (k % 2 == 0 ? u_even : u_odd);
                }
            } else if (a < 0) {
                Point x = nu;
                for (int k = 0; k <= -a - 1; ++k) {
                    if (k > 0) step_alpha(x, j, n, 1);
                    next[x] += c * (k % 2 == 0 ? u_even : u_odd);
                }
            }
        }
        coeffs = std::move(next);
    }
    std::vector<RowEntry> row;
    row.reserve(coeffs.size());
    for (auto& [mu, c] : coeffs) row.push_back({mu, c});
    std::sort(row.begin(), row.end(),
              [](const RowEntry& a, const RowEntry& b) { return a.mu < b.mu; });
    return row;
}

Complex propagation(const Evaluator& f, const Point& lambda, const HeckeParams& hp, int m) {
    Complex out = 0.0;
    for (const RowEntry& e : propagation_row(lambda, hp, m)) out += e.coeff * f(e.mu);
    return out;
}

PropagationInverse::PropagationInverse(Evaluator f, const HeckeParams& hp, int m)
    : f_(std::move(f)), hp_(hp), m_(m) {}

std::pair<Point, Point> PropagationInverse::polytope_bbox(const Point& p) {
    auto it = bboxes_.find(p);
    if (it != bboxes_.end()) return it->second;
    auto [plus, word] = canonicalize(p, m_);
    // Vertices of the polytope [p] are the points v^{-1} p_+ over Bruhat
    // subwords v <= w_p; extending a subword by the next letter maps the
    // point set through that reflection.
    std::unordered_set<Point, PointHash> pts;
    pts.insert(plus.parts());
    for (int j : word.letters) {
        std::vector<Point> snapshot(pts.begin(), pts.end());
        for (const Point& q : snapshot) pts.insert(simple_reflection(j, q, m_));
    }
    Point lo = plus.parts(), hi = plus.parts();
    for (const Point& q : pts)
        for (std::size_t i = 0; i < q.size(); ++i) {
            lo[i] = std::min(lo[i], q[i]);
            hi[i] = std::max(hi[i], q[i]);
        }
    auto bb = std::make_pair(std::move(lo), std::move(hi));
    bboxes_.emplace(p, bb);
    return bb;
}

namespace {

struct StackGuard {
    std::unordered_set<Point, PointHash>& set;
    const Point& p;
    ~StackGuard() { set.erase(p); }
};

bool bbox_contained(const std::pair<Point, Point>& inner, const std::pair<Point, Point>& outer) {
    for (std::size_t i = 0; i < inner.first.size(); ++i)
        if (inner.first[i] < outer.first[i] || inner.second[i] > outer.second[i]) return false;
    return true;
}

}  // namespace

Complex PropagationInverse::operator()(const Point& nu) {
    auto it = memo_.find(nu);
    if (it != memo_.end()) return it->second;
    if (on_stack_.count(nu))
        throw DependencyCycleError("propagation inverse: cyclic dependency between rows");
    on_stack_.insert(nu);
    StackGuard guard{on_stack_, nu};
    auto row = propagation_row(nu, hp_, m_);
    auto box_nu = polytope_bbox(nu);
    Complex diag = 0.0;
    Complex acc = 0.0;
    for (const RowEntry& e : row) {
        if (e.mu == nu) {
            diag = e.coeff;
            continue;
        }
        // Triangularity confines dependencies to the polytope of nu; the
        // bounding-box containment keeps the recursion inside a finite set.
        if (!bbox_contained(polytope_bbox(e.mu), box_nu))
            throw InternalError("propagation inverse: dependency escapes the polytope box");
        acc += e.coeff * (*this)(e.mu);
    }
    if (diag == Complex(0.0, 0.0))
        throw InternalError("propagation inverse: vanishing diagonal coefficient");
    Complex g = (f_(nu) - acc) / diag;
    memo_.emplace(nu, g);
    return g;
}

Complex difference_reflection(int j, const Evaluator& f, const Point& lambda,
                              const HeckeParams& hp, int m) {
    const int n = static_cast<int>(lambda.size());
    Complex tj = hp.letter_pair(j, n).first;
    int a = a_value(j, lambda, m);
    Complex t_signed = a >= 0 ? tj : 1.0 / tj;
    return tj * f(lambda) + t_signed * (f(simple_reflection(j, lambda, m)) - f(lambda));
}

namespace {

Complex tau_sq_of_canonical(const Point& p, const HeckeParams& hp, int m) {
    auto [plus, word] = canonicalize(p, m);
    Complex t = tau_word(word, hp, static_cast<int>(p.size()));
    return t * t;
}

}  // namespace

Complex deformed_laplacian_explicit(const Evaluator& f, const Point& lambda,
                                    const HeckeParams& hp, int m) {
    const int n = static_cast<int>(lambda.size());
    auto [plus, word] = canonicalize(lambda, m);
    Complex out = 0.0;
    for (int j = 0; j < n; ++j)
        for (int sign : {+1, -1}) {
            Point target = lambda;
            target[j] += sign;
            out += tau_sq_of_canonical(apply_word(word, target, m), hp, m) * f(target);
        }
    Complex tau2 = hp.tau * hp.tau;
    Complex diag = hp.taun * (hp.taun_hat - 1.0 / hp.taun_hat) *
                       q_int(plus.multiplicity(0), tau2) +
                   hp.tau0 * (hp.tau0_hat - 1.0 / hp.tau0_hat) *
                       q_int(plus.multiplicity(m), tau2);
    return out + diag * f(lambda);
}

std::vector<Point> orbit_e1r(int n, int r) {
    if (r < 1 || r > n) throw DomainError("orbit_e1r: r out of range [1,n]");
    std::vector<Point> orbit;
    std::vector<int> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + r, 1);
    std::sort(mask.begin(), mask.end());
    do {
        std::vector<int> pos;
        for (int i = 0; i < n; ++i)
            if (mask[i]) pos.push_back(i);
        for (unsigned s = 0; s < (1u << r); ++s) {
            Point v(n, 0);
            for (int i = 0; i < r; ++i) v[pos[i]] = (s >> i) & 1u ? -1 : 1;
            orbit.push_back(std::move(v));
        }
    } while (std::next_permutation(mask.begin(), mask.end()));
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

Eigen::MatrixXcd quantum_integral_matrix(int r, int n, int m, const HeckeParams& hp) {
    states::StateIndex idx(n, m);
    auto orbit = orbit_e1r(n, r);
    Eigen::MatrixXcd H(idx.dim(), idx.dim());
    for (int col = 0; col < idx.dim(); ++col) {
        Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(idx.dim());
        delta[col] = 1.0;
        LatticeFunction h = LatticeFunction::invariant_closure(n, m, delta);
        PropagationInverse g(h.evaluator(), hp, m);
        for (int row = 0; row < idx.dim(); ++row) {
            Complex acc = 0.0;
            for (const Point& mu : orbit) {
                Point x = idx.at(row).parts();
                for (int i = 0; i < n; ++i) x[i] -= mu[i];
                acc += g(x);
            }
            H(row, col) = acc;
        }
    }
    return H;
}

Eigen::MatrixXcd hamiltonian_difference_form(int n, int m, const HeckeParams& hp) {
    states::StateIndex idx(n, m);
    Complex tau2 = hp.tau * hp.tau;
    Complex taun2 = hp.taun * hp.taun;
    Complex tau02 = hp.tau0 * hp.tau0;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(idx.dim(), idx.dim());
    for (int row = 0; row < idx.dim(); ++row) {
        const BoundedPartition& lam = idx.at(row);
        const std::vector<int>& parts = lam.parts();
        int m0 = lam.multiplicity(0);
        int mm = lam.multiplicity(m);
        H(row, row) = hp.taun * (hp.taun_hat - 1.0 / hp.taun_hat) * q_int(m0, tau2) +
                      hp.tau0 * (hp.tau0_hat - 1.0 / hp.tau0_hat) * q_int(mm, tau2);
        for (int j = 0; j < n; ++j) {
            Complex v = q_int(lam.multiplicity(parts[j]), tau2);
            if (parts[j] == 0) v *= 1.0 + taun2 * int_pow(tau2, m0 - 1);
            if (parts[j] == m) v *= 1.0 + tau02 * int_pow(tau2, mm - 1);
            if (parts[j] < m && (j == 0 || parts[j - 1] > parts[j])) {
                std::vector<int> up = parts;
                ++up[j];
                H(row, idx.index_of(up)) += v;
            }
            if (parts[j] > 0 && (j == n - 1 || parts[j + 1] < parts[j])) {
                std::vector<int> dn = parts;
                --dn[j];
                H(row, idx.index_of(dn)) += v;
            }
        }
    }
    return H;
}

std::vector<W0Element> enumerate_w0(int n) {
    std::vector<W0Element> out;
    std::unordered_map<Point, int, PointHash> seen;
    W0Element id;
    id.targets.resize(n);
    for (int i = 0; i < n; ++i) id.targets[i] = i + 1;
    seen.emplace(id.targets, 0);
    out.push_back(id);
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int cur = frontier.front();
        frontier.pop_front();
        for (int j = 1; j <= n; ++j) {
            // right multiplication: (w s_j)(x) = w(s_j x)
            W0Element next = out[cur];
            if (j < n) {
                for (int i = 0; i < n; ++i) {
                    int src = std::abs(next.targets[i]) - 1;
                    if (src == j - 1)
                        next.targets[i] = next.targets[i] > 0 ? j + 1 : -(j + 1);
                    else if (src == j)
                        next.targets[i] = next.targets[i] > 0 ? j : -j;
                }
            } else {
                for (int i = 0; i < n; ++i)
                    if (std::abs(next.targets[i]) == n) next.targets[i] = -next.targets[i];
            }
            if (seen.count(next.targets)) continue;
            next.word = out[cur].word;
            next.word.push_back(j);
            seen.emplace(next.targets, static_cast<int>(out.size()));
            frontier.push_back(static_cast<int>(out.size()));
            out.push_back(std::move(next));
        }
    }
    return out;
}

Evaluator symmetrized_wave_evaluator(const std::vector<double>& xi, const HeckeParams& hp,
                                     int m) {
    const int n = static_cast<int>(xi.size());
    auto group = enumerate_w0(n);
    auto terms = std::make_shared<std::vector<std::pair<Complex, Evaluator>>>();
    for (const auto& w : group) {
        AffineWord word{w.word};
        Complex tw = tau_word(word, hp, n);
        terms->push_back({tw, apply_integral_word(word, plane_wave(xi), hp, m)});
    }
    return Evaluator([terms](const Point& p) {
        Complex acc = 0.0;
        for (const auto& [tw, ev] : *terms) acc += tw * ev(p);
        return acc;
    });
}

LatticeFunction symmetrized_wave(const std::vector<double>& xi, const Box& window,
                                 const HeckeParams& hp, int m) {
    Evaluator phi = symmetrized_wave_evaluator(xi, hp, m);
    LatticeFunction::Map values;
    window.for_each([&](const Point& p) { values[p] = phi(p); });
    return LatticeFunction::finite(std::move(values));
}

Complex affine_hl_value(const std::vector<double>& xi, const Point& lambda, const HeckeParams& hp,
                        int m) {
    return propagation(symmetrized_wave_evaluator(xi, hp, m), lambda, hp, m);
}

Complex poincare_series(const BoundedPartition& lambda, const HeckeParams& hp) {
    Complex tau2 = hp.tau * hp.tau;
    Complex r = q_pochhammer(-hp.taun * hp.taun, tau2, lambda.multiplicity(0)) *
                q_pochhammer(-hp.tau0 * hp.tau0, tau2, lambda.multiplicity(lambda.m()));
    for (int l = 0; l <= lambda.m(); ++l) r *= q_factorial(lambda.multiplicity(l), tau2);
    return r;
}

namespace {

// Affine transformation x -> L(x) + t with L a signed permutation; encoded
// like W0Element targets plus an integer shift.
struct AffineMap {
    std::vector<int> targets;
    std::vector<int> shift;

    bool operator==(const AffineMap& o) const {
        return targets == o.targets && shift == o.shift;
    }
};

struct AffineMapHash {
    std::size_t operator()(const AffineMap& a) const noexcept {
        PointHash h;
        return h(a.targets) * 1000003u ^ h(a.shift);
    }
};

AffineMap compose_with_reflection(const AffineMap& w, int j, int n, int m) {
    // (w s_j)(x) = w(s_j(x)); s_j = (L_j, t_j) with t_j = 2m e_1 for j = 0.
    AffineMap out = w;
    if (j == 0) {
        for (int i = 0; i < n; ++i)
            if (std::abs(out.targets[i]) == 1) {
                out.shift[i] += 2 * m * (out.targets[i] > 0 ? 1 : -1);
                out.targets[i] = -out.targets[i];
            }
    } else if (j == n) {
        for (int i = 0; i < n; ++i)
            if (std::abs(out.targets[i]) == n) out.targets[i] = -out.targets[i];
    } else {
        for (int i = 0; i < n; ++i) {
            int src = std::abs(out.targets[i]) - 1;
            if (src == j - 1)
                out.targets[i] = out.targets[i] > 0 ? j + 1 : -(j + 1);
            else if (src == j)
                out.targets[i] = out.targets[i] > 0 ? j : -j;
        }
    }
    return out;
}

}  // namespace

Complex poincare_series_bruteforce(const BoundedPartition& lambda, const HeckeParams& hp,
                                   std::size_t cap) {
    const int n = lambda.n();
    const int m = lambda.m();

    // Parabolic generators of the stabilizer W_lambda: the 0-block acts by a
    // finite hyperoctahedral group at the top indices, each interior block of
    // equal parts by a symmetric group, and the m-block by a hyperoctahedral
    // group involving s_0.
    std::vector<int> gens;
    int m0 = lambda.multiplicity(0);
    int mm = lambda.multiplicity(m);
    for (int j = n - m0 + 1; j <= n; ++j) gens.push_back(j);
    for (int l = 1; l <= m - 1; ++l) {
        int ml = lambda.multiplicity(l);
        if (ml < 2) continue;
        int before = 0;  // parts strictly larger than l
        for (int x : lambda.parts())
            if (x > l) ++before;
        for (int j = before + 1; j <= before + ml - 1; ++j) gens.push_back(j);
    }
    for (int j = 0; j <= mm - 1; ++j) gens.push_back(j);

    AffineMap id;
    id.targets.resize(n);
    id.shift.assign(n, 0);
    for (int i = 0; i < n; ++i) id.targets[i] = i + 1;

    struct Counts {
        int c0 = 0, cmid = 0, cn = 0;
    };
    std::unordered_map<AffineMap, Counts, AffineMapHash> seen;
    seen.emplace(id, Counts{});
    std::deque<AffineMap> frontier{id};
    Complex total = 0.0;
    while (!frontier.empty()) {
        AffineMap cur = frontier.front();
        frontier.pop_front();
        Counts cc = seen.at(cur);
        total += int_pow(hp.tau0 * hp.tau0, cc.c0) * int_pow(hp.tau * hp.tau, cc.cmid) *
                 int_pow(hp.taun * hp.taun, cc.cn);
        for (int j : gens) {
            AffineMap next = compose_with_reflection(cur, j, n, m);
            if (seen.count(next)) continue;
            Counts nc = cc;
            if (j == 0)
                ++nc.c0;
            else if (j == n)
                ++nc.cn;
            else
                ++nc.cmid;
            seen.emplace(next, nc);
            frontier.push_back(std::move(next));
            if (seen.size() > cap)
                throw CapacityError("poincare_series_bruteforce: stabilizer closure exceeds cap");
        }
    }
    return total;
}

ProbeFunction::ProbeFunction(int n, int m, std::uint64_t seed) : m_(m) {
    state_ = std::make_shared<State>();
    state_->core = Box{Point(n, -m), Point(n, 2 * m)};
    state_->window = state_->core;
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 12345);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    state_->core.for_each(
        [&](const Point& p) { state_->values[p] = Complex(unit(rng), unit(rng)); });
}

Evaluator ProbeFunction::evaluator() const {
    auto state = state_;
    // No memo sharing issues: growth only extends the known-zero region, so
    // previously successful evaluations stay valid.
    return Evaluator([state](const Point& p) -> Complex {
        auto it = state->values.find(p);
        if (it != state->values.end()) return it->second;
        if (state->window.contains(p)) return 0.0;
        throw InsufficientSupportError(p);
    });
}

bool ProbeFunction::grow() {
    if (growths_ >= 8) return false;
    ++growths_;
    state_->window = state_->window.grown(2 * m_ + 2);
    return true;
}

double with_window_growth(ProbeFunction& f, const std::function<double()>& body) {
    while (true) {
        try {
            return body();
        } catch (const InsufficientSupportError&) {
            if (!f.grow()) throw;
        }
    }
}

double DahaReport::worst() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.max_residual);
    return w;
}

namespace {

// One alternating-sum relation: sum_i coeff_i * chain_i(f) == scalar * f,
// with each chain a product of atoms applied rightmost-first.
struct Atom {
    enum Kind { Refl, ReflInv, Trans } kind;
    int j = 0;
    Point mu;
};

Evaluator apply_chain(const std::vector<Atom>& chain, Evaluator f, const HeckeParams& hp, int m) {
    Evaluator g = std::move(f);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        switch (it->kind) {
            case Atom::Refl: g = integral_reflection(it->j, g, hp, m); break;
            case Atom::ReflInv: g = integral_reflection_inverse(it->j, g, hp, m); break;
            case Atom::Trans: g = translate(it->mu, g); break;
        }
    }
    return g;
}

struct Relation {
    std::string name;
    std::vector<std::pair<Complex, std::vector<Atom>>> terms;
    Complex identity_coeff = 0.0;
};

Atom R(int j) { return Atom{Atom::Refl, j, {}}; }
Atom Rinv(int j) { return Atom{Atom::ReflInv, j, {}}; }
Atom T(Point mu) { return Atom{Atom::Trans, 0, std::move(mu)}; }

Point unit_vec(int n, int i, int sign = 1) {
    Point e(n, 0);
    e[i] = sign;
    return e;
}

std::vector<Relation> build_relations(int n, const HeckeParams& hp) {
    std::vector<Relation> rels;
    auto pair_of = [&](int j) { return hp.letter_pair(j, n); };

    for (int j = 0; j <= n; ++j) {
        Complex tj = pair_of(j).first;
        rels.push_back({"quadratic[" + std::to_string(j) + "]",
                        {{1.0, {R(j), R(j)}}, {-(tj - 1.0 / tj), {R(j)}}},
                        1.0});
    }
    if (n >= 2) {
        auto braid4 = [&](int a, int b) {
            rels.push_back({"braid[" + std::to_string(a) + "," + std::to_string(b) + "]",
                            {{1.0, {R(a), R(b), R(a), R(b)}}, {-1.0, {R(b), R(a), R(b), R(a)}}},
                            0.0});
        };
        braid4(0, 1);
        braid4(n - 1, n);
        for (int j = 1; j <= n - 2; ++j)
            rels.push_back({"braid[" + std::to_string(j) + "," + std::to_string(j + 1) + "]",
                            {{1.0, {R(j), R(j + 1), R(j)}}, {-1.0, {R(j + 1), R(j), R(j + 1)}}},
                            0.0});
        for (int j = 0; j <= n; ++j)
            for (int k = j + 2; k <= n; ++k)
                rels.push_back({"braid[" + std::to_string(j) + "," + std::to_string(k) + "]",
                                {{1.0, {R(j), R(k)}}, {-1.0, {R(k), R(j)}}},
                                0.0});
    }

    // cross relations with X_k -> t_{e_k}
    Complex t0h = hp.tau0_hat;
    rels.push_back({"cross[0,X1]",
                    {{1.0, {R(0), T(unit_vec(n, 0))}}, {-1.0, {T(unit_vec(n, 0, -1)), Rinv(0)}}},
                    1.0 / t0h - t0h});
    Complex tnh = hp.taun_hat;
    rels.push_back({"cross[n,Xn]",
                    {{1.0, {R(n), T(unit_vec(n, n - 1, -1))}},
                     {-1.0, {T(unit_vec(n, n - 1)), Rinv(n)}}},
                    1.0 / tnh - tnh});
    for (int j = 1; j <= n - 1; ++j)
        rels.push_back({"cross[" + std::to_string(j) + "]",
                        {{1.0, {R(j), T(unit_vec(n, j))}},
                         {-1.0, {T(unit_vec(n, j - 1)), Rinv(j)}}},
                        0.0});
    for (int j = 0; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            bool commutes = std::abs(j - k) > 1 || (j == n && k == n - 1);
            if (!commutes) continue;
            rels.push_back({"cross[" + std::to_string(j) + ",X" + std::to_string(k) + "]",
                            {{1.0, {R(j), T(unit_vec(n, k - 1))}},
                             {-1.0, {T(unit_vec(n, k - 1)), R(j)}}},
                            0.0});
        }
    if (n >= 2)
        rels.push_back({"translations commute",
                        {{1.0, {T(unit_vec(n, 0)), T(unit_vec(n, 1))}},
                         {-1.0, {T(unit_vec(n, 1)), T(unit_vec(n, 0))}}},
                        0.0});
    return rels;
}

}  // namespace

DahaReport check_daha_relations(int n, int m, const HeckeParams& hp, int trials, double tol,
                                std::uint64_t seed) {
    if (trials < 1) throw DomainError("check_daha_relations requires trials >= 1");
    DahaReport report{n, m, tol, {}};
    auto relations = build_relations(n, hp);
    for (const auto& rel : relations)
        report.checks.push_back({rel.name, 0.0, static_cast<long>(trials)});

    // deterministic probe points inside [-m, 2m]^n
    LowDiscrepancy ld(seed);
    std::vector<Point> probes;
    probes.push_back(Point(n, 0));
    probes.push_back(Point(n, m));
    for (int k = 0; static_cast<int>(probes.size()) < 8 + n; ++k) {
        Point p(n);
        for (int i = 0; i < n; ++i)
            p[i] = -m + static_cast<int>(ld.component(k, i) * (3 * m + 1));
        probes.push_back(std::move(p));
    }

    for (int t = 0; t < trials; ++t) {
        ProbeFunction probe(n, m, seed * 1000 + t);
        for (std::size_t ri = 0; ri < relations.size(); ++ri) {
            const Relation& rel = relations[ri];
            double res = with_window_growth(probe, [&]() {
                Evaluator f = probe.evaluator();
                std::vector<Evaluator> applied;
                applied.reserve(rel.terms.size());
                for (const auto& [c, chain] : rel.terms) applied.push_back(apply_chain(chain, f, hp, m));
                double worst = 0.0;
                for (const Point& p : probes) {
                    // Defect normalized by the largest term magnitude: deep in
                    // the window the chains amplify the probe values by powers
                    // of the tau's, and the backward-error form is what double
                    // precision can certify at 1e-12.
                    Complex v = 0.0;
                    double scale = 1.0;
                    for (std::size_t i = 0; i < rel.terms.size(); ++i) {
                        Complex term = rel.terms[i].first * applied[i](p);
                        scale = std::max(scale, std::abs(term));
                        v += term;
                    }
                    v -= rel.identity_coeff * f(p);
                    worst = std::max(worst, std::abs(v) / scale);
                }
                return worst;
            });
            report.checks[ri].max_residual = std::max(report.checks[ri].max_residual, res);
        }
    }
    return report;
}

}  // namespace qbethe::hecke
