#include <catch_amalgamated.hpp>

#include "splayer/analysis.hpp"
#include "splayer/error.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace splayer;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

ManufacturedSolution cosine() {
    return {
        Coefficient([](double x) { return std::cos(pi * x); }, "cos(pi*x)"),
        Coefficient([](double x) { return -pi * std::sin(pi * x); }, "-pi*sin(pi*x)"),
        Coefficient([](double x) { return -pi * pi * std::cos(pi * x); }, "-pi^2*cos(pi*x)"),
    };
}

ProblemSpec ex(BuiltinExample id, double eps, double mu) { return builtin_example(id).with_parameters(eps, mu); }

const std::vector<int> kColumns{64, 128, 256, 512, 1024};

}  // namespace

TEST_CASE("double-mesh error compares shared nodes", "[analysis]") {
    const auto spec = ex(BuiltinExample::Ex1, 1e-6, 1e-10);
    const auto mesh = shishkin_bakhvalov_mesh(derive_regime(spec), 64, 0.5);
    const auto res = double_mesh_error(spec, mesh);
    REQUIRE(res.coarse.y.size() == 65);
    REQUIRE(res.fine.y.size() == 129);
    CHECK(res.error > 0.0);
    CHECK(res.error == std::abs(res.coarse.y[res.worst_index] - res.fine.y[2 * res.worst_index]));
    CHECK(res.coarse.y[0] == 2.0);
    CHECK(res.fine.y[128] == 1.0);
    CHECK(res.coarse.residual_inf <= 1e-10);
    CHECK(res.fine.residual_inf <= 1e-10);

    const auto again = double_mesh_error(spec, mesh);
    CHECK(again.error == res.error);
    CHECK(again.coarse.y == res.coarse.y);
}

TEST_CASE("regenerated fine mesh uses interpolation", "[analysis]") {
    const auto spec = ex(BuiltinExample::Ex1, 1e-6, 1e-10);
    const auto r = derive_regime(spec);
    const auto coarse = shishkin_bakhvalov_mesh(r, 64, 0.5);
    const auto bis = double_mesh_error(spec, coarse, refine_double(coarse));
    CHECK(bis.error == double_mesh_error(spec, coarse).error);
    const auto regen = double_mesh_error(spec, coarse, shishkin_bakhvalov_mesh(r, 128, 0.5));
    CHECK(regen.error > 0.0);
    CHECK(std::isfinite(regen.error));
}

TEST_CASE("order is the base-2 log ratio", "[analysis]") {
    CHECK(convergence_order(0.4, 0.2) == 1.0);
    CHECK(convergence_order(1.0, 0.25) == 2.0);
    const auto spec = ex(BuiltinExample::Ex1, 1e-6, 1e-10);
    const std::vector<double> mu{1e-10};
    const std::vector<int> n{64, 128};
    const auto t = convergence_table(spec, SweepParam::Mu, mu, n);
    REQUIRE(t.orders[0].size() == 1);
    const double e64 = *t.errors[0][0];
    const double e128 = *t.errors[0][1];
    CHECK(*t.orders[0][0] == std::log2(e64) - std::log2(e128));
    CHECK_THAT(*t.orders[0][0], WithinAbs(std::log2(e64 / e128), 1e-12));
}

TEST_CASE("double-mesh errors decrease with N for both examples", "[analysis]") {
    const std::vector<double> mu{1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14, 1e-17};
    for (auto id : {BuiltinExample::Ex1, BuiltinExample::Ex2}) {
        const auto t = convergence_table(ex(id, 1e-6, 1.0), SweepParam::Mu, mu, kColumns);
        for (std::size_t r = 0; r < t.rows(); ++r) {
            for (std::size_t c = 0; c < kColumns.size(); ++c) {
                REQUIRE(t.errors[r][c]);
                CHECK(*t.errors[r][c] > 0.0);
                if (c > 0) CHECK(*t.errors[r][c] < *t.errors[r][c - 1]);
            }
        }
    }
}

TEST_CASE("epsilon sweeps keep mu fixed", "[analysis]") {
    const std::vector<double> eps{1e-4, 1e-8, 1e-12};
    const auto t = convergence_table(ex(BuiltinExample::Ex2, 1.0, 1e-4), SweepParam::Epsilon, eps, kColumns);
    CHECK(t.sweep_param == SweepParam::Epsilon);
    CHECK(t.fixed_value == 1e-4);
    CHECK(t.param_values == eps);
    // Small epsilon rows are preasymptotic at N=64; only the trend is checked.
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (const auto& o : t.orders[r]) REQUIRE(o);
        CHECK(*t.errors[r].back() < *t.errors[r].front());
        CHECK(*t.orders[r].back() > 0.5);
    }
}

TEST_CASE("tables do not depend on the thread count", "[analysis]") {
    const std::vector<double> mu{1e-4, 1e-8, 1e-12};
    const auto spec = ex(BuiltinExample::Ex2, 1e-8, 1.0);
    SweepSettings one;
    one.threads = 1;
    SweepSettings many;
    many.threads = 7;
    const auto a = convergence_table(spec, SweepParam::Mu, mu, kColumns, one);
    const auto b = convergence_table(spec, SweepParam::Mu, mu, kColumns, many);
    CHECK(a.errors == b.errors);
    CHECK(a.orders == b.orders);
}

TEST_CASE("failing rows are recorded per cell", "[analysis]") {
    const std::vector<double> mu{1e-6, -1.0};
    const std::vector<int> n{64, 128};
    const auto t = convergence_table(ex(BuiltinExample::Ex1, 1e-6, 1.0), SweepParam::Mu, mu, n);
    CHECK(t.errors[0][0]);
    CHECK(t.failures[0][0].empty());
    CHECK_FALSE(t.errors[1][0]);
    CHECK_FALSE(t.failures[1][1].empty());
    CHECK_FALSE(t.orders[1][0]);
}

TEST_CASE("N columns must double", "[analysis]") {
    const std::vector<double> mu{1e-6};
    const auto spec = ex(BuiltinExample::Ex1, 1e-6, 1.0);
    CHECK_THROWS_AS(convergence_table(spec, SweepParam::Mu, mu, std::vector<int>{64, 192}), ConfigError);
    CHECK_THROWS_AS(convergence_table(spec, SweepParam::Mu, mu, std::vector<int>{}), ConfigError);
}

TEST_CASE("mesh comparison runs both families", "[analysis]") {
    const std::vector<double> mu{1e-8};
    const auto spec = ex(BuiltinExample::Ex1, 1e-8, 1.0);
    const auto cmp = compare_meshes(spec, SweepParam::Mu, mu, kColumns);
    CHECK(cmp.shishkin.mesh_family == MeshFamily::Shishkin);
    CHECK(cmp.shishkin_bakhvalov.mesh_family == MeshFamily::ShishkinBakhvalov);
    SweepSettings s;
    s.family = MeshFamily::ShishkinBakhvalov;
    const auto direct = convergence_table(spec, SweepParam::Mu, mu, kColumns, s);
    CHECK(direct.errors == cmp.shishkin_bakhvalov.errors);
    s.family = MeshFamily::Shishkin;
    CHECK(convergence_table(spec, SweepParam::Mu, mu, kColumns, s).errors == cmp.shishkin.errors);
}

TEST_CASE("manufactured source reproduces the operator", "[analysis]") {
    const auto base = ex(BuiltinExample::Ex2, 1e-2, 1e-2);
    const auto exact = cosine();
    const auto spec = manufactured_problem(base, exact);
    CHECK(spec.y0 == 1.0);
    CHECK_THAT(spec.y1, WithinAbs(-1.0, 1e-15));
    for (double x : {0.1, 0.3, 0.49}) {
        const double want = 1e-2 * exact.d2y(x) + 1e-2 * base.a_left(x) * exact.dy(x) - base.b(x) * exact.y(x);
        CHECK(spec.f_left(x) == want);
    }
    for (double x : {0.51, 0.7, 0.99}) {
        const double want = 1e-2 * exact.d2y(x) + 1e-2 * base.a_right(x) * exact.dy(x) - base.b(x) * exact.y(x);
        CHECK(spec.f_right(x) == want);
    }
}

TEST_CASE("manufactured cosine converges at first order", "[analysis]") {
    const std::vector<double> mu{1e-2};
    const auto t = manufactured_convergence(ex(BuiltinExample::Ex1, 1e-2, 1.0), cosine(), SweepParam::Mu, mu,
                                            kColumns);
    CHECK(t.exact_reference);
    for (std::size_t c = 1; c < kColumns.size(); ++c) CHECK(*t.errors[0][c] < *t.errors[0][c - 1]);
    CHECK_THAT(*t.orders[0][3], WithinAbs(1.0, 0.1));
}

TEST_CASE("constants are reproduced exactly", "[analysis]") {
    const ManufacturedSolution c{Coefficient::constant(0.75), Coefficient::constant(0.0), Coefficient::constant(0.0)};
    const std::vector<double> mu{1e-2, 1e-8};
    const auto t = manufactured_convergence(ex(BuiltinExample::Ex2, 1e-6, 1.0), c, SweepParam::Mu, mu, kColumns);
    for (const auto& row : t.errors) {
        for (const auto& e : row) {
            REQUIRE(e);
            CHECK(*e <= 1e-10);
        }
    }
}

TEST_CASE("linear solutions are reproduced exactly", "[analysis]") {
    // One-sided differences and the second difference are exact on linear functions.
    const ManufacturedSolution lin{Coefficient([](double x) { return 2.0 * x - 1.0; }, "2*x-1"),
                                   Coefficient::constant(2.0), Coefficient::constant(0.0)};
    const std::vector<double> mu{1e-1, 1e-6};
    const auto t = manufactured_convergence(ex(BuiltinExample::Ex1, 1e-4, 1.0), lin, SweepParam::Mu, mu, kColumns);
    for (const auto& row : t.errors) {
        for (const auto& e : row) {
            REQUIRE(e);
            CHECK(*e <= 1e-10);
        }
    }
}

TEST_CASE("double-mesh mode names", "[analysis]") {
    CHECK(double_mesh_mode_from_string("bisect") == DoubleMeshMode::Bisect);
    CHECK(double_mesh_mode_from_string("regenerate") == DoubleMeshMode::Regenerate);
    CHECK_THROWS_AS(double_mesh_mode_from_string("nested"), ConfigError);
    CHECK(to_string(DoubleMeshMode::Regenerate) == "regenerate");
}
