#include "exnet/activation.hpp"

#include <cmath>
#include <string>

#include "exnet/error.hpp"

namespace exnet {

std::string_view to_string(ActivationKind kind) {
    return kind == ActivationKind::Smooth ? "smooth" : "piecewise";
}

ActivationKind activation_from_string(std::string_view name) {
    if (name == "smooth") return ActivationKind::Smooth;
    if (name == "piecewise") return ActivationKind::PiecewiseAffine;
    throw Error(ErrorKind::ParseError, "unknown activation '" + std::string(name) + "'");
}

namespace {

// Branches keep the exponent non-positive so exp never overflows.
double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

double phi(ActivationKind kind, const ActivationParams& p, double y) {
    const double u = y - p.theta;
    if (kind == ActivationKind::Smooth) return logistic(u / p.epsilon);
    if (u < -2.0 * p.epsilon) return 0.0;
    if (u > 2.0 * p.epsilon) return 1.0;
    return u / (4.0 * p.epsilon) + 0.5;
}

double phi_derivative(ActivationKind kind, const ActivationParams& p, double y) {
    const double u = y - p.theta;
    if (kind == ActivationKind::Smooth) {
        const double s = logistic(u / p.epsilon);
        return s * (1.0 - s) / p.epsilon;
    }
    const double edge = 2.0 * p.epsilon;
    if (y == kink_low(p) || y == kink_high(p) || u == -edge || u == edge)
        throw Error(ErrorKind::KinkPoint, "piecewise activation is not differentiable at y=" +
                                              std::to_string(y));
    return std::abs(u) < edge ? 1.0 / (4.0 * p.epsilon) : 0.0;
}

double phi_inverse_smooth(const ActivationParams& p, double x) {
    if (!(x > 0.0 && x < 1.0))
        throw Error(ErrorKind::DomainError, "inverse activation needs x in (0,1), got " + std::to_string(x));
    return p.theta - p.epsilon * std::log((1.0 - x) / x);
}

}  // namespace exnet
