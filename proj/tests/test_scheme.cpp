#include <catch_amalgamated.hpp>

#include "splayer/error.hpp"
#include "splayer/linalg.hpp"
#include "splayer/mesh.hpp"
#include "splayer/problem.hpp"
#include "splayer/scheme.hpp"

#include <cmath>
#include <random>

using namespace splayer;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ProblemSpec ex(BuiltinExample id, double eps, double mu) { return builtin_example(id).with_parameters(eps, mu); }

Mesh sb_mesh(const ProblemSpec& spec, int n) { return shishkin_bakhvalov_mesh(derive_regime(spec), n, spec.d); }

}  // namespace

TEST_CASE("rows on a uniform mesh follow the difference formulas", "[scheme]") {
    const auto spec = ex(BuiltinExample::Ex1, 0.01, 0.1);
    const auto mesh = uniform_mesh(8, 0.5);
    const auto sys = assemble(spec, mesh);
    REQUIRE(sys.size() == 9);
    const double h = 0.125;
    const double e = 0.01 / (h * h);

    CHECK(sys.diag[0] == 1.0);
    CHECK(sys.rhs[0] == 2.0);
    CHECK(sys.diag[8] == 1.0);
    CHECK(sys.rhs[8] == 1.0);

    // Left rows: a = -2, backward difference.
    CHECK_THAT(sys.lower[1], WithinRel(-(e + 0.2 / h), 1e-14));
    CHECK_THAT(sys.diag[1], WithinRel(2 * e + 0.2 / h + 1.0, 1e-14));
    CHECK_THAT(sys.upper[1], WithinRel(-e, 1e-14));
    CHECK(sys.rhs[1] == 1.0);

    // Right rows: a = 2, forward difference.
    CHECK_THAT(sys.lower[6], WithinRel(-e, 1e-14));
    CHECK_THAT(sys.diag[6], WithinRel(2 * e + 0.2 / h + 1.0, 1e-14));
    CHECK_THAT(sys.upper[6], WithinRel(-(e + 0.2 / h), 1e-14));
    CHECK(sys.rhs[6] == -1.0);

    CHECK(sys.interface_row == 4);
    CHECK(sys.lower[4] == -8.0);
    CHECK(sys.diag[4] == 16.0);
    CHECK(sys.upper[4] == -8.0);
    CHECK(sys.rhs[4] == 0.0);

    // b = 1 > 0 makes row 1 strictly dominant.
    CHECK(sys.diag[1] > std::abs(sys.lower[1]) + std::abs(sys.upper[1]));
}

TEST_CASE("interior rows reproduce b on constants", "[scheme]") {
    for (auto id : {BuiltinExample::Ex1, BuiltinExample::Ex2}) {
        const auto spec = ex(id, 1e-6, 1e-3);
        const auto mesh = sb_mesh(spec, 64);
        const auto sys = assemble(spec, mesh);
        const std::vector<double> ones(sys.size(), 1.0);
        const auto a1 = apply_operator(sys, ones);
        for (std::size_t i = 1; i + 1 < sys.size(); ++i) {
            if (static_cast<std::ptrdiff_t>(i) == sys.interface_row) {
                CHECK_THAT(a1[i], WithinAbs(0.0, 1e-12 * sys.diag[i]));
                continue;
            }
            CHECK_THAT(a1[i], WithinAbs(spec.b(mesh.points[i]), 1e-12 * sys.diag[i]));
        }
    }
}

TEST_CASE("interface row annihilates linear sequences", "[scheme][property]") {
    std::mt19937 rng(3u);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    const auto spec = ex(BuiltinExample::Ex2, 1e-10, 1e-3);
    for (int n : {16, 64, 256}) {
        const auto mesh = sb_mesh(spec, n);
        const auto sys = assemble(spec, mesh);
        for (int k = 0; k < 10; ++k) {
            const double p = coef(rng);
            const double q = coef(rng);
            std::vector<double> y(mesh.points.size());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = p * mesh.points[i] + q;
            const auto r = apply_operator(sys, y);
            const auto mid = static_cast<std::size_t>(sys.interface_row);
            const double scale = sys.diag[mid] * (std::abs(p) + std::abs(q));
            CHECK_THAT(r[mid], WithinAbs(0.0, 1e-11 * scale));
        }
    }
}

TEST_CASE("apply_operator basics", "[scheme]") {
    const auto spec = ex(BuiltinExample::Ex1, 1e-4, 1e-4);
    const auto sys = assemble(spec, uniform_mesh(16, 0.5));
    const std::vector<double> zero(sys.size(), 0.0);
    for (double v : apply_operator(sys, zero)) CHECK(v == 0.0);
    std::vector<double> y(sys.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::sin(double(i));
    const auto r = apply_operator(sys, y);
    CHECK(r[0] == y[0]);
    CHECK(r.back() == y.back());
    CHECK_THROWS_AS(apply_operator(sys, std::vector<double>(3)), ConfigError);
}

TEST_CASE("assemble rejects a mesh that misses d", "[scheme]") {
    auto spec = ex(BuiltinExample::Ex1, 1e-4, 1e-4);
    spec.d = 0.4;
    CHECK_THROWS_AS(assemble(spec, uniform_mesh(16, 0.5)), ConfigError);
}

TEST_CASE("assemble reports non-finite coefficients", "[scheme]") {
    auto spec = ex(BuiltinExample::Ex1, 1e-4, 1e-4);
    spec.f_right = Coefficient::parse("1/(x-0.75)");
    CHECK_THROWS_AS(assemble(spec, uniform_mesh(8, 0.5)), EvalError);
}

TEST_CASE("M-matrix witness on the examples", "[scheme]") {
    for (auto id : {BuiltinExample::Ex1, BuiltinExample::Ex2}) {
        for (auto [eps, mu] : {std::pair{1e-6, 1e-10}, std::pair{1e-12, 1e-4}, std::pair{1e-2, 1e-2}}) {
            for (int n : {16, 128, 1024}) {
                const auto spec = ex(id, eps, mu);
                const auto rep = check_m_matrix(assemble(spec, sb_mesh(spec, n)));
                CHECK(rep.is_sign_valid);
                CHECK(rep.is_diag_dominant);
                CHECK(rep.failing_rows == 0);
                CHECK(rep.worst_margin > 0.0);
            }
        }
    }
}

TEST_CASE("M-matrix witness with b = 0 is non-strict but valid", "[scheme]") {
    auto spec = ex(BuiltinExample::Ex1, 1e-3, 1e-2);
    spec.b = Coefficient::constant(0.0);
    const auto rep = check_m_matrix(assemble(spec, uniform_mesh(32, 0.5)));
    CHECK(rep.is_sign_valid);
    CHECK(rep.is_diag_dominant);
    CHECK_THAT(rep.worst_margin, WithinAbs(0.0, 1e-14));
}

TEST_CASE("M-matrix witness flags bad rows", "[scheme]") {
    const auto spec = ex(BuiltinExample::Ex1, 1e-3, 1e-2);
    auto sys = assemble(spec, uniform_mesh(16, 0.5));
    sys.upper[3] = 0.5;
    auto rep = check_m_matrix(sys);
    CHECK_FALSE(rep.is_sign_valid);
    CHECK(rep.failing_rows == 1);

    sys = assemble(spec, uniform_mesh(16, 0.5));
    sys.diag[5] = 0.5 * std::abs(sys.lower[5]);
    rep = check_m_matrix(sys);
    CHECK(rep.is_sign_valid);
    CHECK_FALSE(rep.is_diag_dominant);

    sys = assemble(spec, uniform_mesh(16, 0.5));
    sys.upper[0] = -1.0;
    CHECK_FALSE(check_m_matrix(sys).is_sign_valid);
}

TEST_CASE("discrete comparison: nonpositive data gives a nonpositive solution", "[scheme][property]") {
    std::mt19937 rng(2718u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> log_eps(-10.0, -1.0);
    std::uniform_real_distribution<double> log_mu(-10.0, -1.0);
    for (int k = 0; k < 100; ++k) {
        auto spec = ex(k % 2 == 0 ? BuiltinExample::Ex1 : BuiltinExample::Ex2, std::pow(10.0, log_eps(rng)),
                       std::pow(10.0, log_mu(rng)));
        const double fl = unit(rng);
        const double fr = unit(rng);
        const double w = 1.0 + 20.0 * unit(rng);
        spec.f_left = Coefficient([fl, w](double x) { return fl * (1.0 + std::sin(w * x)); }, "f_left");
        spec.f_right = Coefficient([fr, w](double x) { return fr * (1.0 + std::cos(w * x)); }, "f_right");
        spec.y0 = -unit(rng);
        spec.y1 = -unit(rng);
        const int n = 16 << (k % 5);
        const auto sys = assemble(spec, sb_mesh(spec, n));
        for (double r : sys.rhs) REQUIRE(r <= 0.0);
        const auto sol = solve_thomas(sys);
        for (double y : sol.y) CHECK(y <= 0.0);
    }
}
