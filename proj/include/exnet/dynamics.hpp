#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exnet/error.hpp"
#include "exnet/network.hpp"

namespace exnet {

/// Time-stamped samples stored row-major: row i holds the state at times[i].
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }

    const std::vector<double>& times() const noexcept { return times_; }
    double time(std::size_t i) const { return times_[i]; }
    Eigen::Map<const Vector> state(std::size_t i) const {
        return Eigen::Map<const Vector>(values_.data() + i * dim_, static_cast<Eigen::Index>(dim_));
    }
    double value(std::size_t i, std::size_t cell) const { return values_[i * dim_ + cell]; }
    Vector back() const { return state(size() - 1); }

    void push(double t, const Vector& y);

    std::string solver;
    double dt = 0.0;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const Trajectory& a, const Trajectory& b) {
        return a.dim_ == b.dim_ && a.times_ == b.times_ && a.values_ == b.values_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Thrown when a state component leaves the network's bounded region or
/// becomes non-finite. Carries everything integrated up to that point.
class NonFiniteStateError : public Error {
public:
    NonFiniteStateError(const std::string& what, Trajectory partial)
        : Error(ErrorKind::NonFiniteState, what), partial_(std::move(partial)) {}

    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// External drive I(t). An empty function is the input-free system.
using InputSignal = std::function<void(double t, Vector& out)>;

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

struct IntegrationOptions {
    double dt = 1e-3;
    /// Record every stride-th step; the final state is always recorded.
    std::size_t stride = 1;
};

/// dy_i/dt = -y_i + sum_j w_ij phi(y_j) + I_i, written into out.
void rhs_y(const CompiledNetwork& net, const Vector& y, const Vector* input, Vector& out);
Vector rhs_y(const CompiledNetwork& net, const Vector& y, const Vector* input = nullptr);

/// Vector field in the activation coordinates J = phi(y); smooth activation only,
/// every J_i strictly inside (0,1).
Vector rhs_J(const CompiledNetwork& net, const Vector& J);

Vector y_to_J(const ActivationParams& p, const Vector& y);
Vector J_to_y(const ActivationParams& p, const Vector& J);

/// Classical RK4 step on the y-system, reusing its stage buffers.
class Rk4Stepper {
public:
    Rk4Stepper(const CompiledNetwork& net, double dt, InputSignal input = {});

    void step(double t, Vector& y);
    double dt() const noexcept { return dt_; }

private:
    void eval(double t, const Vector& y, Vector& out);

    const CompiledNetwork& net_;
    double dt_;
    InputSignal input_;
    Vector k1_, k2_, k3_, k4_, tmp_, drive_;
};

/// Euler-Maruyama step y += f(y) dt + sigma sqrt(dt) xi, xi ~ N(0, I).
class EulerMaruyamaStepper {
public:
    EulerMaruyamaStepper(const CompiledNetwork& net, double dt, const NoiseSpec& noise);

    void step(Vector& y);

private:
    const CompiledNetwork& net_;
    double dt_;
    double scale_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
    Vector f_;
};

Trajectory integrate_ode(const CompiledNetwork& net, const Vector& y0, double t0, double t1,
                         const InputSignal& input = {}, const IntegrationOptions& opts = {});

/// Explicit Euler, the sigma = 0 limit of integrate_sde.
Trajectory integrate_euler(const CompiledNetwork& net, const Vector& y0, double t0, double t1,
                           const IntegrationOptions& opts = {});

Trajectory integrate_sde(const CompiledNetwork& net, const Vector& y0, double t0, double t1,
                         const NoiseSpec& noise, const IntegrationOptions& opts = {});

/// RK4 on rhs_J. Throws DomainError if any component leaves (0,1).
Trajectory integrate_J(const CompiledNetwork& net, const Vector& J0, double t0, double t1,
                       const IntegrationOptions& opts = {});

}  // namespace exnet
