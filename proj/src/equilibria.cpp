#include "exnet/equilibria.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "exnet/dynamics.hpp"
#include "exnet/error.hpp"

namespace exnet {

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::Saddle: return "Saddle";
        case Stability::Unstable: return "Unstable";
        case Stability::Undetermined: return "Undetermined";
    }
    return "?";
}

Matrix jacobian(const CompiledNetwork& net, const Vector& y) {
    const auto n = static_cast<Eigen::Index>(net.size());
    if (y.size() != n) throw Error(ErrorKind::DimensionMismatch, "state length does not match network");
    Matrix jac = -Matrix::Identity(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double d = phi_derivative(net.activation, net.activation_params, y[j]);
        if (d != 0.0) jac.col(j) += d * net.weights.col(j);
    }
    return jac;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
    Eigen::EigenSolver<Matrix> solver(m, false);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Stability classify_stability(const std::vector<std::complex<double>>& eigs, double margin) {
    bool neg = false, pos = false;
    for (const auto& e : eigs) {
        if (std::abs(e.real()) <= margin) return Stability::Undetermined;
        (e.real() < 0.0 ? neg : pos) = true;
    }
    if (neg && pos) return Stability::Saddle;
    return pos ? Stability::Unstable : Stability::Stable;
}

namespace {

// Jacobian with piecewise corners nudged off the kink towards the reference side.
Matrix safe_jacobian(const CompiledNetwork& net, const Vector& y, const Vector& reference) {
    if (net.activation == ActivationKind::Smooth) return jacobian(net, y);
    Vector shifted = y;
    const double kinks[2] = {kink_low(net.activation_params), kink_high(net.activation_params)};
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        for (const double k : kinks) {
            if (std::abs(y[j] - k) < 1e-12) {
                const double side = reference[j] >= k ? 1.0 : -1.0;
                shifted[j] = k + side * 1e-9;
            }
        }
    }
    return jacobian(net, shifted);
}

double sup_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

Equilibrium refine_equilibrium(const CompiledNetwork& net, const Vector& guess, const NewtonOptions& opts,
                               std::optional<Vertex> label) {
    if (!(opts.tol > 0.0)) throw Error(ErrorKind::DomainError, "Newton tolerance must be positive");
    Equilibrium eq;
    eq.vertex_label = label;
    Vector y = guess;
    Vector f = rhs_y(net, y);
    double res = sup_norm(f);

    int it = 0;
    for (; it < opts.max_iter && !(res < opts.tol); ++it) {
        const Matrix jac = safe_jacobian(net, y, guess);
        Eigen::FullPivLU<Matrix> lu(jac);
        if (!lu.isInvertible())
            throw Error(ErrorKind::SingularJacobian, "singular Newton matrix at iteration " + std::to_string(it));
        const Vector dx = lu.solve(-f);

        double lambda = 1.0;
        Vector trial = y + dx;
        Vector f_trial = rhs_y(net, trial);
        for (int halvings = 0; halvings < 20 && !(sup_norm(f_trial) <= res); ++halvings) {
            lambda *= 0.5;
            trial = y + lambda * dx;
            f_trial = rhs_y(net, trial);
        }
        const double res_trial = sup_norm(f_trial);
        if (!(res_trial <= res) && lambda < 1.0) {
            // Line search stalled; keep the best iterate.
            break;
        }
        y = std::move(trial);
        f = std::move(f_trial);
        res = res_trial;
    }

    eq.state = y;
    eq.residual_norm = res;
    eq.iterations = it;
    eq.converged = res < opts.tol;
    eq.eigenvalues = eigenvalues(safe_jacobian(net, y, guess));
    eq.stability = classify_stability(eq.eigenvalues, opts.margin);
    return eq;
}

std::vector<Equilibrium> refine_all_templates(const CompiledNetwork& net, const NewtonOptions& opts) {
    std::vector<Equilibrium> out;
    out.reserve(net.size());
    for (Vertex k = 0; k < net.size(); ++k) {
        const auto tpl = predicted_equilibrium(net, k);
        auto eq = refine_equilibrium(net, tpl.components, opts, k);
        if (!eq.converged || eq.stability != Stability::Stable)
            throw Error(ErrorKind::EquilibriumMissing,
                        "no stable equilibrium near template for vertex " + std::to_string(k + 1) +
                            " (residual " + std::to_string(eq.residual_norm) + ", " +
                            std::string(to_string(eq.stability)) + ")");
        out.push_back(std::move(eq));
    }
    return out;
}

Vector rest_state(const CompiledNetwork& net, Vertex k, const NewtonOptions& opts) {
    const auto guess = predicted_equilibrium(net, k).components;
    try {
        auto eq = refine_equilibrium(net, guess, opts, k);
        if (eq.converged && eq.stability == Stability::Stable && (eq.state - guess).lpNorm<Eigen::Infinity>() < 0.25)
            return eq.state;
    } catch (const Error&) {
    }
    return guess;
}

}  // namespace exnet
