#pragma once

#include <array>
#include <functional>

#include "tv/asymptotics.hpp"
#include "tv/weights.hpp"

namespace tv {

enum class Branch { NORMAL, SHEAR, FINAL };
enum class ActionVariant { NORMAL, SHEAR };

/// Coefficients of Delta(u,v) = det(I - T) = 1 - a1 u - a2 v - a3 uv
/// - a4 u^2 v - a5 u v^2 - a6 u^2 v^2 for the escape-path transfer matrix.
/// Index 0 unused.
struct AlphaCoeffs {
    std::array<double, 7> a{};
    double operator[](int i) const { return a[static_cast<size_t>(i)]; }
};

AlphaCoeffs alpha_coeffs(const VertexWeights& w);

/// A point of the escape-path action domain: rescaled coordinates (ell, m)
/// and the step-density variables p3..p6 (p[0] = p3).
struct ActionPoint {
    double ell;
    double m;
    std::array<double, 4> p{};
};

/// Entropy-plus-log-weight action of the escape path. The SHEAR variant
/// replaces ell by 1 - ell (the caller supplies the inverted-model alphas).
/// Throws std::domain_error outside the feasible region.
double action(const ActionPoint& ap, const AlphaCoeffs& alphas, ActionVariant variant);

struct ActionMax {
    double value;
    std::array<double, 4> p;
    int iterations;
};

/// Stationary point of the action over p3..p6 at fixed (ell, m): damped
/// Newton on the stationarity system (gradient norm < 1e-10), with a
/// bisection fallback on the 1-D reduction when only p3 is active.
/// Throws std::runtime_error with the last iterate on non-convergence.
ActionMax maximize_action(double ell, double m, const AlphaCoeffs& alphas,
                          ActionVariant variant);

/// d/d(ell) of the maximized action, by central differences with
/// h = 1e-6 max(ell,1) and one Richardson extrapolation step.
double action_dl(double ell, double m, const AlphaCoeffs& alphas, ActionVariant variant);

/// Numeric tangent-method slope at this tau: solves the stationarity
/// condition tau = (w0/w1) exp(dS/dl) for m at ell = r(tau) by bracketed
/// root-finding, then forms r/m (NORMAL) or 1 - (1-r)/m (SHEAR/FINAL).
double slope_numeric(double tau, const AngleParams& p, Branch branch);

/// Closed-form slope S_n, S_s or S_f exactly as printed; FINAL is the
/// mu -> -mu shear form.
double closed_slopes(double xi, const AngleParams& p, Branch branch);
/// Matching closed-form r along the branch (FINAL uses mu -> -mu).
double closed_r(double xi, const AngleParams& p, Branch branch);
/// tau along the branch (FINAL uses the tilde parametrization).
double branch_tau(double xi, const AngleParams& p, Branch branch);

// ---------------------------------------------------------------------------
// Envelope of the tangent-line family.

enum class Orientation { X_TANGENT, Y_TANGENT };

struct EnvelopePoint {
    double x, y;
};

using CurveFn = std::function<Dual<double>(Dual<double>)>;

/// Thrown where S'(xi) vanishes; the caller samples around it.
struct CuspError : std::runtime_error {
    double xi;
    explicit CuspError(double xi_)
        : std::runtime_error("envelope: vanishing S' (cusp) at xi = " + std::to_string(xi_)),
          xi(xi_) {}
};

/// Envelope point of the family y + S(xi)(x-1) - R(xi) = 0 (X_TANGENT):
/// (1 + R'/S', R - S R'/S'); coordinates swapped for Y_TANGENT.
EnvelopePoint envelope(const CurveFn& R, const CurveFn& S, double xi,
                       Orientation orientation = Orientation::X_TANGENT);

// Generic closed-form branch bodies, usable with double, Dual<double>,
// std::complex<double> and Dual<std::complex<double>> scalars.

template <class T, class M>
T slope_normal_t(const T& xi, double eta, double lambda, M mu) {
    const T hp = T(0.5) * (T(lambda - eta) + T(mu));
    const T hq = T(0.5) * (T(lambda + 3 * eta) + T(mu));
    const T pll = sin(xi + T(lambda + eta)) * sin(xi + T(lambda - eta));
    const T pmm = sin(xi + hp) * sin(xi + hq);
    const T pss = sin(xi) * sin(xi + T(2 * eta));
    return pll * (pss + pmm) / (pss * (pll + pmm));
}

template <class T, class M>
T slope_shear_t(const T& xi, double eta, double lambda, M mu) {
    const T hp = T(0.5) * (T(lambda - eta) + T(mu));
    const T hq = T(0.5) * (T(lambda + 3 * eta) + T(mu));
    const T pll = sin(xi + T(lambda + eta)) * sin(xi + T(lambda - eta));
    const T pmm = sin(xi + hp) * sin(xi + hq);
    return pll * sin(T(2.0) * xi + hp) * sin(hq) /
           (sin(T(2 * eta) - xi) * sin(xi) * (pll + pmm));
}

}  // namespace tv
