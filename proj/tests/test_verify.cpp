#include "qbethe/verify.hpp"

#include <cmath>

#include "doctest.h"

using namespace qbethe;
using states::ModelParams;

namespace {

ModelParams params_for(double q, double am, double ahm, double ap, double ahp) {
    ModelParams p;
    p.q = q;
    p.a_minus = am;
    p.a_hat_minus = ahm;
    p.a_plus = ap;
    p.a_hat_plus = ahp;
    return p;
}

}  // namespace

TEST_CASE("spectrum: full rank and eigen residuals at the reference point") {
    ModelParams p = params_for(0.5, 0.3, -0.2, 0.4, -0.1);
    auto rep = verify::compute_spectrum(2, 2, p);
    CHECK(rep.dim == 6);
    CHECK(rep.rank == 6);
    CHECK(rep.singular_ratio > 1e-8);
    CHECK(rep.max_eigen_residual < 1e-8);
    for (const auto& r : rep.records) {
        CHECK(r.in_alcove);
        CHECK(r.gaps_ok);
        CHECK(r.iterations <= 50);
        CHECK(r.max_bae_residual < 1e-8);
    }
}

TEST_CASE("spectrum: Dirichlet eigenvalues for a single particle") {
    constexpr double PI = 3.14159265358979323846;
    auto rep = verify::compute_spectrum(1, 2, ModelParams{});
    REQUIRE(rep.dim == 3);
    // enumeration is descending: mu = (2), (1), (0) -> k = 3, 2, 1
    CHECK(rep.records[0].E[0] == doctest::Approx(2.0 * std::cos(3.0 * PI / 4.0)));
    CHECK(rep.records[1].E[0] == doctest::Approx(2.0 * std::cos(2.0 * PI / 4.0)));
    CHECK(rep.records[2].E[0] == doctest::Approx(2.0 * std::cos(PI / 4.0)));
    CHECK(rep.max_eigen_residual < 1e-12);
}

TEST_CASE("spectrum: empty sector") {
    auto rep = verify::compute_spectrum(0, 3, params_for(0.4, 0.1, 0.2, 0.3, 0.4));
    CHECK(rep.dim == 1);
    CHECK(rep.rank == 1);
    CHECK(rep.max_eigen_residual == 0.0);
}

TEST_CASE("pieri residuals vanish at the Bethe roots") {
    auto rep = verify::check_pieri(2, 2, params_for(0.5, 0.3, -0.2, 0.4, -0.1));
    CHECK(rep.max_residual < 1e-8);
    CHECK(rep.max_residual_q0 < 1e-8);
}

TEST_CASE("parameter grids are deterministic and in range") {
    auto a = verify::param_grid_strict(20, 7);
    auto b = verify::param_grid_strict(20, 7);
    for (int i = 0; i < 20; ++i) {
        CHECK(a[i].q == b[i].q);
        CHECK(a[i].a_hat_plus == b[i].a_hat_plus);
        a[i].validate(true);
        CHECK(std::abs(std::abs(a[i].a_minus) - std::abs(a[i].a_hat_minus)) > 1e-3);
        CHECK(std::abs(std::abs(a[i].a_plus) - std::abs(a[i].a_hat_plus)) > 1e-3);
    }
    for (const auto& p : verify::param_grid_wide(20, 3)) p.validate();
    auto d = verify::param_grid_strict(5, 8);
    CHECK(d[0].q != a[0].q);
}

TEST_CASE("suite dispatch") {
    verify::SuiteOptions opt;
    auto reports = verify::run_suites({"poincare"}, opt);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].suite == "poincare");
    CHECK(reports[0].pass());
    CHECK_THROWS_AS(verify::run_suites({"nope"}, opt), UsageError);
}

TEST_CASE("report serialization") {
    ModelParams p = params_for(0.5, 0.3, -0.2, 0.4, -0.1);
    auto spec = verify::compute_spectrum(1, 2, p);
    auto j = verify::to_json(spec);
    CHECK(j["rank"] == 3);
    CHECK(j["records"].size() == 3);
    CHECK(j["records"][0].contains("bae_residual"));
    CHECK(j.contains("gram_offdiag_mass"));

    auto pj = verify::to_json(verify::check_pieri(1, 2, p));
    CHECK(pj.contains("max_residual_q0"));

    bethe::BetheSolution s = bethe::solve_root(states::BoundedPartition({1, 0}, 2), p, 2);
    auto sj = verify::to_json(s);
    CHECK(sj["mu"] == std::vector<int>{1, 0});
    CHECK(sj["E"].size() == 2);
}
