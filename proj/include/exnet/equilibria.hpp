#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "exnet/network.hpp"

namespace exnet {

enum class Stability { Stable, Saddle, Unstable, Undetermined };

std::string_view to_string(Stability s);

struct Equilibrium {
    Vector state;
    std::optional<Vertex> vertex_label;
    double residual_norm = 0.0;  // sup norm of the vector field
    std::vector<std::complex<double>> eigenvalues;
    Stability stability = Stability::Undetermined;
    int iterations = 0;
    bool converged = false;
};

struct NewtonOptions {
    double tol = 1e-12;
    int max_iter = 100;
    /// Real parts within +-margin of zero make the stability verdict Undetermined.
    double margin = 1e-8;
};

/// Entry (i,j) = -delta_ij + w_ij phi'(y_j). Throws KinkPoint for the
/// piecewise activation if a component sits exactly on a corner.
Matrix jacobian(const CompiledNetwork& net, const Vector& y);

std::vector<std::complex<double>> eigenvalues(const Matrix& m);

Stability classify_stability(const std::vector<std::complex<double>>& eigs, double margin = 1e-8);

/**
 * Damped Newton on rhs_y = 0 starting at guess.
 *
 * Each step is halved (at most 20 times) while the sup-norm residual
 * grows. For the piecewise activation, components within 1e-12 of a
 * corner are nudged 1e-9 towards the guess's side before differentiating.
 * Non-convergence is reported through Equilibrium::converged with the
 * best iterate returned; a singular Newton matrix throws SingularJacobian.
 */
Equilibrium refine_equilibrium(const CompiledNetwork& net, const Vector& guess, const NewtonOptions& opts = {},
                               std::optional<Vertex> label = std::nullopt);

/// Refines predicted_equilibrium(net, k) for every vertex. Throws
/// EquilibriumMissing if any template fails to converge to a stable point.
/// Starting state at vertex k: the refined template when Newton converges
/// to a stable point, the raw template otherwise (past a fold).
Vector rest_state(const CompiledNetwork& net, Vertex k, const NewtonOptions& opts = {});

std::vector<Equilibrium> refine_all_templates(const CompiledNetwork& net, const NewtonOptions& opts = {});

}  // namespace exnet
