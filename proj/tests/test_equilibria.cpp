#include <doctest.h>

#include <cmath>
#include <random>

#include "exnet/dynamics.hpp"
#include "exnet/equilibria.hpp"
#include "exnet/error.hpp"

using namespace exnet;

namespace {

DirectedGraph three_cycle() { return DirectedGraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

Matrix fd_jacobian(const CompiledNetwork& net, const Vector& y, double h = 1e-6) {
    const auto n = y.size();
    Matrix J(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Vector a = y, b = y;
        a[j] += h;
        b[j] -= h;
        J.col(j) = (rhs_y(net, a) - rhs_y(net, b)) / (2 * h);
    }
    return J;
}

}  // namespace

TEST_CASE("piecewise templates refine to themselves with spectrum -1") {
    const auto [ap, wp] = theorem_params(0.4);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = random_constrained_graph(3 + seed % 8, 0.3, seed, false);
        const auto net = compile_weights(g, wp, ActivationKind::PiecewiseAffine, ap);
        for (Vertex k = 0; k < g.size(); ++k) {
            const auto t = predicted_equilibrium(net, k);
            const auto eq = refine_equilibrium(net, t.components, {}, k);
            CHECK(eq.converged);
            CHECK(eq.iterations == 0);
            CHECK(eq.state == t.components);
            CHECK(eq.residual_norm <= 1e-14);
            CHECK(eq.stability == Stability::Stable);
            CHECK((jacobian(net, eq.state) + Matrix::Identity(net.size(), net.size())).cwiseAbs().maxCoeff() == 0.0);
            for (const auto& e : eq.eigenvalues) CHECK(std::abs(e - std::complex<double>(-1.0, 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("smooth 3-cycle template refines nearby") {
    const auto net = compile_weights(three_cycle(), WeightParams{});
    for (Vertex k = 0; k < 3; ++k) {
        const auto t = predicted_equilibrium(net, k);
        const auto eq = refine_equilibrium(net, t.components, {}, k);
        CHECK(eq.converged);
        CHECK(eq.residual_norm < 1e-12);
        CHECK(eq.stability == Stability::Stable);
        CHECK((eq.state - t.components).lpNorm<Eigen::Infinity>() < 10 * 0.05);
        REQUIRE(eq.vertex_label.has_value());
        CHECK(*eq.vertex_label == k);
    }
}

TEST_CASE("smooth templates below the fold are stable on random graphs") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto g = random_constrained_graph(3 + seed % 6, 0.3, seed, false);
        const auto net = compile_weights(g, WeightParams{});
        const auto eqs = refine_all_templates(net);
        REQUIRE(eqs.size() == g.size());
        for (Vertex k = 0; k < g.size(); ++k) {
            CHECK(eqs[k].stability == Stability::Stable);
            CHECK((eqs[k].state - predicted_equilibrium(net, k).components).lpNorm<Eigen::Infinity>() < 0.5);
            CHECK(rhs_y(net, eqs[k].state).lpNorm<Eigen::Infinity>() < 1e-12);
        }
    }
}

TEST_CASE("origin is an equilibrium when w_t = 0") {
    const auto net = compile_weights(three_cycle(), WeightParams{});
    const auto eq = refine_equilibrium(net, Vector::Zero(3));
    CHECK(eq.converged);
    CHECK(eq.state.lpNorm<Eigen::Infinity>() < 1e-3);
    CHECK(eq.stability == Stability::Stable);
    CHECK_FALSE(eq.vertex_label.has_value());
}

TEST_CASE("jacobian agrees with finite differences") {
    const auto net = compile_weights(three_cycle(), WeightParams{});
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
        Vector y(3);
        for (int i = 0; i < 3; ++i) y[i] = u(rng);
        CHECK((jacobian(net, y) - fd_jacobian(net, y)).cwiseAbs().maxCoeff() < 1e-6);
    }
    WeightParams zero{0.0, 0.0, 0.0, 0.0, {}};
    const auto z = compile_weights(DirectedGraph(3), zero);
    CHECK(jacobian(z, Vector::Constant(3, 0.5)) == -Matrix::Identity(3, 3));
}

TEST_CASE("jacobian at a piecewise kink throws") {
    const auto [ap, wp] = theorem_params(0.4);
    const auto net = compile_weights(three_cycle(), wp, ActivationKind::PiecewiseAffine, ap);
    Vector y = Vector::Constant(3, 0.0);
    y[1] = kink_high(ap);
    CHECK_THROWS_AS(jacobian(net, y), Error);
}

TEST_CASE("classify_stability") {
    using C = std::complex<double>;
    CHECK(classify_stability({C(-1), C(-1), C(-1)}) == Stability::Stable);
    CHECK(classify_stability({C(0.2), C(-1), C(-1)}) == Stability::Saddle);
    CHECK(classify_stability({C(0.2), C(0.3)}) == Stability::Unstable);
    CHECK(classify_stability({C(1e-10), C(-1)}) == Stability::Undetermined);
}

TEST_CASE("rest_state past the fold falls back to the template") {
    WeightParams wp;
    wp.w_p = 0.305;
    const auto net = compile_weights(three_cycle(), wp);
    CHECK(rest_state(net, 0) == predicted_equilibrium(net, 0).components);
    CHECK_THROWS_AS(refine_all_templates(net), Error);
}
