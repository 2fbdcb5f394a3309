#include "exnet/dynamics.hpp"

#include <cmath>
#include <string>

namespace exnet {

void Trajectory::push(double t, const Vector& y) {
    if (dim_ == 0 && times_.empty()) dim_ = static_cast<std::size_t>(y.size());
    times_.push_back(t);
    values_.insert(values_.end(), y.data(), y.data() + y.size());
}

namespace {

void require_dim(const CompiledNetwork& net, Eigen::Index n, const char* what) {
    if (static_cast<std::size_t>(n) != net.size())
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has length " + std::to_string(n) +
                                                      ", network has " + std::to_string(net.size()) + " cells");
}

void require_smooth(const CompiledNetwork& net) {
    if (net.activation != ActivationKind::Smooth)
        throw Error(ErrorKind::WrongActivation, "J coordinates need the smooth activation");
}

std::size_t step_count(double t0, double t1, double dt) {
    if (!(dt > 0.0)) throw Error(ErrorKind::DomainError, "dt must be positive");
    if (!(t1 > t0)) return 0;
    return static_cast<std::size_t>(std::llround((t1 - t0) / dt));
}

// Returns false if any component is non-finite or beyond bound.
bool state_ok(const Vector& y, double bound) {
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (!std::isfinite(y[i]) || std::abs(y[i]) > bound) return false;
    return true;
}

[[noreturn]] void blow_up(Trajectory&& traj, double t) {
    throw NonFiniteStateError("state left the bounded region at t=" + std::to_string(t), std::move(traj));
}

template <typename Step>
Trajectory run(const CompiledNetwork& net, const Vector& y0, double t0, double t1, const IntegrationOptions& opts,
               const char* solver, Step&& step) {
    require_dim(net, y0.size(), "initial state");
    const std::size_t n = step_count(t0, t1, opts.dt);
    const std::size_t stride = opts.stride == 0 ? 1 : opts.stride;
    const double bound = state_bound(net);

    Trajectory traj(net.size());
    traj.solver = solver;
    traj.dt = opts.dt;
    Vector y = y0;
    traj.push(t0, y);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = t0 + static_cast<double>(i) * opts.dt;
        step(t, y);
        const double t_next = t0 + static_cast<double>(i + 1) * opts.dt;
        if (!state_ok(y, bound)) {
            traj.push(t_next, y);
            blow_up(std::move(traj), t_next);
        }
        if ((i + 1) % stride == 0 || i + 1 == n) traj.push(t_next, y);
    }
    return traj;
}

}  // namespace

void rhs_y(const CompiledNetwork& net, const Vector& y, const Vector* input, Vector& out) {
    require_dim(net, y.size(), "state");
    const auto n = y.size();
    out = -y;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double a = phi(net.activation, net.activation_params, y[j]);
        // Saturated-off cells contribute nothing; common for the piecewise kind.
        if (a != 0.0) out.noalias() += a * net.weights.col(j);
    }
    if (input != nullptr) {
        require_dim(net, input->size(), "input");
        out += *input;
    }
}

Vector rhs_y(const CompiledNetwork& net, const Vector& y, const Vector* input) {
    Vector out(y.size());
    rhs_y(net, y, input, out);
    return out;
}

Vector rhs_J(const CompiledNetwork& net, const Vector& J) {
    require_smooth(net);
    require_dim(net, J.size(), "J state");
    const auto& p = net.activation_params;
    Vector drive = net.weights * J;
    Vector out(J.size());
    for (Eigen::Index i = 0; i < J.size(); ++i) {
        const double ji = J[i];
        out[i] = ji * (1.0 - ji) / p.epsilon * (drive[i] - phi_inverse_smooth(p, ji));
    }
    return out;
}

Vector y_to_J(const ActivationParams& p, const Vector& y) {
    return y.unaryExpr([&](double v) { return phi(ActivationKind::Smooth, p, v); });
}

Vector J_to_y(const ActivationParams& p, const Vector& J) {
    return J.unaryExpr([&](double v) { return phi_inverse_smooth(p, v); });
}

Rk4Stepper::Rk4Stepper(const CompiledNetwork& net, double dt, InputSignal input)
    : net_(net), dt_(dt), input_(std::move(input)) {
    const auto n = static_cast<Eigen::Index>(net.size());
    k1_.resize(n);
    k2_.resize(n);
    k3_.resize(n);
    k4_.resize(n);
    tmp_.resize(n);
    drive_ = Vector::Zero(n);
}

void Rk4Stepper::eval(double t, const Vector& y, Vector& out) {
    if (input_) {
        input_(t, drive_);
        rhs_y(net_, y, &drive_, out);
    } else {
        rhs_y(net_, y, nullptr, out);
    }
}

void Rk4Stepper::step(double t, Vector& y) {
    const double h = dt_;
    eval(t, y, k1_);
    tmp_ = y + 0.5 * h * k1_;
    eval(t + 0.5 * h, tmp_, k2_);
    tmp_ = y + 0.5 * h * k2_;
    eval(t + 0.5 * h, tmp_, k3_);
    tmp_ = y + h * k3_;
    eval(t + h, tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

EulerMaruyamaStepper::EulerMaruyamaStepper(const CompiledNetwork& net, double dt, const NoiseSpec& noise)
    : net_(net), dt_(dt), scale_(noise.sigma * std::sqrt(dt)), rng_(noise.seed), f_(net.size()) {
    if (noise.sigma < 0.0) throw Error(ErrorKind::DomainError, "noise amplitude must be non-negative");
}

void EulerMaruyamaStepper::step(Vector& y) {
    rhs_y(net_, y, nullptr, f_);
    y += dt_ * f_;
    if (scale_ == 0.0) return;
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += scale_ * normal_(rng_);
}

Trajectory integrate_ode(const CompiledNetwork& net, const Vector& y0, double t0, double t1,
                         const InputSignal& input, const IntegrationOptions& opts) {
    Rk4Stepper stepper(net, opts.dt, input);
    return run(net, y0, t0, t1, opts, "rk4", [&](double t, Vector& y) { stepper.step(t, y); });
}

Trajectory integrate_euler(const CompiledNetwork& net, const Vector& y0, double t0, double t1,
                           const IntegrationOptions& opts) {
    Vector f(net.size());
    return run(net, y0, t0, t1, opts, "euler", [&](double, Vector& y) {
        rhs_y(net, y, nullptr, f);
        y += opts.dt * f;
    });
}

Trajectory integrate_sde(const CompiledNetwork& net, const Vector& y0, double t0, double t1,
                         const NoiseSpec& noise, const IntegrationOptions& opts) {
    EulerMaruyamaStepper stepper(net, opts.dt, noise);
    auto traj = run(net, y0, t0, t1, opts, "euler-maruyama", [&](double, Vector& y) { stepper.step(y); });
    traj.seed = noise.seed;
    return traj;
}

Trajectory integrate_J(const CompiledNetwork& net, const Vector& J0, double t0, double t1,
                       const IntegrationOptions& opts) {
    require_smooth(net);
    require_dim(net, J0.size(), "initial J state");
    const std::size_t n = step_count(t0, t1, opts.dt);
    const std::size_t stride = opts.stride == 0 ? 1 : opts.stride;
    const double h = opts.dt;

    Trajectory traj(net.size());
    traj.solver = "rk4-J";
    traj.dt = h;
    Vector J = J0;
    traj.push(t0, J);
    for (std::size_t i = 0; i < n; ++i) {
        const Vector k1 = rhs_J(net, J);
        const Vector k2 = rhs_J(net, J + 0.5 * h * k1);
        const Vector k3 = rhs_J(net, J + 0.5 * h * k2);
        const Vector k4 = rhs_J(net, J + h * k3);
        J += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t_next = t0 + static_cast<double>(i + 1) * h;
        for (Eigen::Index c = 0; c < J.size(); ++c)
            if (!(J[c] > 0.0 && J[c] < 1.0))
                throw Error(ErrorKind::DomainError, "J left (0,1) at t=" + std::to_string(t_next));
        if ((i + 1) % stride == 0 || i + 1 == n) traj.push(t_next, J);
    }
    return traj;
}

}  // namespace exnet
