#include "qbethe/hall_littlewood.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qbethe/qseries.hpp"
#include "qbethe/states.hpp"

using namespace qbethe;
using hl::SpectralPoint;
using states::BoundedPartition;

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double PI = 3.14159265358979323846;

// Fourier extraction oracle: coefficient of e^{i nu . xi} in a trigonometric
// polynomial, sampled on a shifted tensor grid (grid size K per axis must
// exceed twice the largest frequency).
Complex fourier_coefficient(const std::function<Complex(const std::vector<double>&)>& f, int n,
                            const std::vector<int>& nu, int K) {
    std::vector<double> shift(n);
    for (int i = 0; i < n; ++i) shift[i] = 0.31 + 0.17 * i;
    std::vector<int> k(n, 0);
    Complex acc = 0.0;
    long grid = 1;
    for (int i = 0; i < n; ++i) grid *= K;
    for (long g = 0; g < grid; ++g) {
        long gg = g;
        std::vector<double> xi(n);
        double phase = 0.0;
        for (int i = 0; i < n; ++i) {
            k[i] = gg % K;
            gg /= K;
            xi[i] = 2.0 * PI * k[i] / K + shift[i];
            phase -= nu[i] * xi[i];
        }
        acc += f(xi) * std::exp(I * phase);
    }
    return acc / static_cast<double>(grid);
}

std::vector<double> random_regular_xi(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.15, PI - 0.15);
    while (true) {
        std::vector<double> xi(n);
        for (int i = 0; i < n; ++i) xi[i] = u(rng);
        if (SpectralPoint{xi}.is_regular(1e-3)) return xi;
    }
}

}  // namespace

TEST_CASE("scattering coefficient: closed forms") {
    // n = 1, trivial numerators
    double xi = 0.9;
    Complex expected = 1.0 / (1.0 - std::exp(-2.0 * I * xi));
    CHECK(std::abs(hl::c_coefficient({xi}, 0, 0, 0) - expected) < 1e-15);

    // n = 1 at xi = pi/2 with a = 0.5: (1 + 0.5 i)/2
    Complex v = hl::c_coefficient({PI / 2}, 0.0, 0.5, 0.0);
    CHECK(std::abs(v - Complex(0.5, 0.25)) < 1e-15);

    // pair pole
    CHECK_THROWS_AS(hl::c_coefficient({1.0, 1.0}, 0.3, 0.2, 0.1), PoleError);
    CHECK_THROWS_AS(hl::c_coefficient({PI}, 0.3, 0.2, 0.1), PoleError);
}

TEST_CASE("P at the zero partition matches the closed normalization") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            auto xi = random_regular_xi(n, rng);
            double q = 0.4, a = 0.5, ah = -0.3;
            Complex p = hl::hl_polynomial(BoundedPartition(std::vector<int>(n, 0), 2),
                                          SpectralPoint{xi}, q, a, ah);
            Complex expected = q_pochhammer(a * ah, q, n) * q_factorial(n, q);
            CHECK(std::abs(p - expected) < 1e-10 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("n = 1 reduces to a two-term sum") {
    double xi = 1.1, q = 0.3, a = 0.4, ah = -0.6;
    for (int l = 0; l <= 3; ++l) {
        Complex direct = hl::c_coefficient({xi}, q, a, ah) * std::exp(I * (double)l * xi) +
                         hl::c_coefficient({-xi}, q, a, ah) * std::exp(-I * (double)l * xi);
        Complex p = hl::hl_polynomial(BoundedPartition({l}, 3), SpectralPoint{{xi}}, q, a, ah);
        CHECK(std::abs(p - direct) < 1e-13);
    }
}

TEST_CASE("leading monomial coefficient via Fourier extraction") {
    double q = 0.35, a = 0.45, ah = -0.25;
    // n = 1
    for (int l = 0; l <= 2; ++l) {
        BoundedPartition lam({l}, 2);
        auto f = [&](const std::vector<double>& xi) {
            return hl::hl_polynomial(lam, SpectralPoint{xi}, q, a, ah);
        };
        Complex lead = fourier_coefficient(f, 1, {l}, 2 * 2 + 3);
        Complex expected = q_pochhammer(a * ah, q, lam.multiplicity(0)) *
                           q_factorial(lam.multiplicity(0), q) *
                           q_factorial(lam.multiplicity(1), q) * q_factorial(lam.multiplicity(2), q);
        CHECK(std::abs(lead - expected) < 1e-9);
    }
    // n = 2
    for (std::vector<int> parts : {std::vector<int>{1, 0}, {2, 1}, {1, 1}, {0, 0}}) {
        BoundedPartition lam(parts, 2);
        auto f = [&](const std::vector<double>& xi) {
            return hl::hl_polynomial(lam, SpectralPoint{xi}, q, a, ah);
        };
        Complex lead = fourier_coefficient(f, 2, parts, 2 * 2 + 3);
        Complex expected = q_pochhammer(a * ah, q, lam.multiplicity(0));
        for (int l = 0; l <= 2; ++l) expected *= q_factorial(lam.multiplicity(l), q);
        CHECK(std::abs(lead - expected) < 1e-9);
    }
}

TEST_CASE("W0 symmetry and realness") {
    std::mt19937_64 rng(5);
    double q = -0.45, a = 0.3, ah = 0.55;
    for (int n : {2, 3}) {
        auto xi = random_regular_xi(n, rng);
        BoundedPartition lam(n == 2 ? std::vector<int>{2, 1} : std::vector<int>{2, 1, 0}, 3);
        Complex base = hl::hl_polynomial(lam, SpectralPoint{xi}, q, a, ah);
        CHECK(std::abs(base.imag()) < 1e-10 * std::max(1.0, std::abs(base.real())));

        auto group = hl::enumerate_signed_permutations(n);
        std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
        for (int t = 0; t < 5; ++t) {
            auto w = group[pick(rng)];
            Complex img = hl::hl_polynomial(lam, SpectralPoint{w.apply(xi)}, q, a, ah);
            CHECK(std::abs(img - base) < 1e-10 * std::max(1.0, std::abs(base)));
        }
        // value at -xi equals value at xi
        std::vector<double> neg(xi);
        for (double& x : neg) x = -x;
        Complex conj_val = hl::hl_polynomial(lam, SpectralPoint{neg}, q, a, ah);
        CHECK(std::abs(conj_val - base) < 1e-10 * std::max(1.0, std::abs(base)));
    }
}

TEST_CASE("q = 0 determinant formula matches the direct sum") {
    std::mt19937_64 rng(23);
    double a = 0.5, ah = -0.35;
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m)
            for (const auto& lam : states::enumerate_states(n, m)) {
                for (int trial = 0; trial < (n == 3 ? 3 : 10); ++trial) {
                    auto xi = random_regular_xi(n, rng);
                    Complex det = hl::hl_q0_determinant(lam, SpectralPoint{xi}, a, ah);
                    Complex sum = hl::hl_polynomial(lam, SpectralPoint{xi}, 0.0, a, ah);
                    CHECK(std::abs(det - sum) < 1e-10 * std::max(1.0, std::abs(sum)));
                }
            }
}

TEST_CASE("q = 0 determinant base cases") {
    // n = 1 is the single block p_{lambda_1}
    double a = 0.25, ah = 0.6, xi = 1.3;
    for (int l = 0; l <= 2; ++l) {
        Complex det = hl::hl_q0_determinant(BoundedPartition({l}, 2), SpectralPoint{{xi}}, a, ah);
        CHECK(std::abs(det - hl::q0_block(l, xi, a, ah)) < 1e-14);
    }
    // Dirichlet-type normalization at a = ahat = 0 and lambda = 0^n
    std::vector<double> xi2 = {2.0, 1.0};
    Complex det = hl::hl_q0_determinant(BoundedPartition({0, 0}, 2), SpectralPoint{xi2}, 0, 0);
    Complex sum = hl::hl_polynomial(BoundedPartition({0, 0}, 2), SpectralPoint{xi2}, 0, 0, 0);
    CHECK(std::abs(det - sum) < 1e-12);
    CHECK(std::abs(sum - 1.0) < 1e-12);  // [n]_0! = 1 and (0;0)_n = 1
    // coinciding cosines are rejected
    CHECK_THROWS_AS(
        hl::hl_q0_determinant(BoundedPartition({1, 0}, 2), SpectralPoint{{1.0, -1.0}}, a, ah),
        PoleError);
}

TEST_CASE("group enumeration size and cost guard") {
    CHECK(hl::enumerate_signed_permutations(3).size() == 48);
    CHECK(hl::enumerate_signed_permutations(6).size() == 46080);

    std::vector<double> xi = {2.9, 2.3, 1.9, 1.3, 0.8, 0.4};
    BoundedPartition lam({3, 2, 2, 1, 1, 0}, 3);
    auto start = std::chrono::steady_clock::now();
    Complex v = hl::hl_polynomial(lam, SpectralPoint{xi}, 0.4, 0.3, -0.2);
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(std::isfinite(v.real()));
    CHECK(elapsed < 1.0);
}
