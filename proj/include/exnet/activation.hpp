#pragma once

#include <string_view>

namespace exnet {

enum class ActivationKind { Smooth, PiecewiseAffine };

std::string_view to_string(ActivationKind kind);
ActivationKind activation_from_string(std::string_view name);

/// Slope scale epsilon (> 0) and threshold theta shared by every cell.
struct ActivationParams {
    double epsilon = 0.05;
    double theta = 0.5;
};

/// Logistic sigmoid 1/(1+exp(-(y-theta)/eps)) or its piecewise-affine
/// counterpart that is linear on |y-theta| <= 2 eps and saturates outside.
/// Both give 1/2 at theta.
double phi(ActivationKind kind, const ActivationParams& p, double y);

/// Analytic derivative; peaks at 1/(4 eps) at theta. For the piecewise
/// kind the corners theta +- 2 eps throw KinkPoint.
double phi_derivative(ActivationKind kind, const ActivationParams& p, double y);

/// theta - eps * log((1-x)/x), defined on the open interval (0,1).
double phi_inverse_smooth(const ActivationParams& p, double x);

/// Lower/upper corners of the piecewise-affine ramp.
inline double kink_low(const ActivationParams& p) { return p.theta - 2.0 * p.epsilon; }
inline double kink_high(const ActivationParams& p) { return p.theta + 2.0 * p.epsilon; }

}  // namespace exnet
