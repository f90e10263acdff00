#pragma once

#include <cmath>
#include <stdexcept>

#include "tv/dual.hpp"
#include "tv/weights.hpp"

namespace tv {

/// alpha = pi / (pi - 2*eta)
double alpha_of_eta(double eta);

namespace detail {

template <class T>
struct scalar_of {
    using type = T;
};
template <class T>
struct scalar_of<Dual<T>> {
    using type = typename scalar_of<T>::type;
};

template <class T>
double magnitude(const T& x) {
    using std::abs;
    return abs(x);
}
template <class T>
double magnitude(const Dual<T>& x) {
    return magnitude(x.v);
}

}  // namespace detail

/// cot(x) - alpha*cot(alpha*x), with the pole-cancelled series
/// (alpha^2-1)/3 x + (alpha^4-1)/45 x^3 used for |x| < 1e-4 where direct
/// evaluation loses ~8 digits to cancellation.
template <class T>
T cot_gap(const T& x, double alpha) {
    if (detail::magnitude(x) < 1e-4) {
        const double a2 = alpha * alpha;
        return x * T((a2 - 1.0) / 3.0) + x * x * x * T((a2 * a2 - 1.0) / 45.0);
    }
    return cot(x) - T(alpha) * cot(T(alpha) * x);
}

/// cot(xi+lambda-eta) - cot(xi) + alpha cot(alpha xi) - alpha cot(alpha(xi+lambda-eta))
template <class T>
T cot_bracket(const T& xi, double lambda, double eta, double alpha) {
    return cot_gap(xi + T(lambda - eta), alpha) - cot_gap(xi, alpha);
}

namespace detail {

inline void check_range(double xi, double lo, double hi, const char* what) {
    if (!(xi > lo && xi < hi))
        throw std::range_error(std::string(what) + ": xi outside evaluation range");
}
template <class T>
void check_xi(const T&, double, double, const char*) {}
inline void check_xi(double xi, double lo, double hi, const char* what) {
    check_range(xi, lo, hi, what);
}
inline void check_xi(const Dual<double>& xi, double lo, double hi, const char* what) {
    check_range(xi.v, lo, hi, what);
}

}  // namespace detail

/// sigma(xi) = sin(l+e) sin(xi+l-e) / (sin(l-e) sin(xi+l+e))
template <class T>
T sigma_xi_t(const T& xi, double eta, double lambda) {
    return T(std::sin(lambda + eta)) * sin(xi + T(lambda - eta)) /
           (T(std::sin(lambda - eta)) * sin(xi + T(lambda + eta)));
}

/// f(sigma(xi)), extended continuously to xi = 0 with value 0.
template <class T>
T f_sigma_t(const T& xi, double eta, double lambda) {
    const double alpha = alpha_of_eta(eta);
    detail::check_xi(xi, -1e-9, M_PI - lambda - eta, "f_sigma");
    // sin(alpha xi)/sin(xi) -> alpha as xi -> 0
    T ratio;
    if (detail::magnitude(xi) < 1e-5) {
        const double a2 = alpha * alpha;
        ratio = T(alpha) * (T(1.0) - xi * xi * T((a2 - 1.0) / 6.0));
    } else {
        ratio = sin(T(alpha) * xi) / sin(xi);
    }
    return log(T(std::sin(alpha * (lambda - eta))) * sin(xi + T(lambda - eta)) * ratio /
               (T(alpha * std::sin(lambda - eta)) * sin(T(alpha) * (xi + T(lambda - eta)))));
}

/// tau(xi) of the general refined correspondence.
template <class T, class M>
T tau_xi_t(const T& xi, double eta, double lambda, M mu) {
    const T hp = T(0.5) * (T(lambda - eta) + T(mu));       // (l-e+m)/2
    const T hq = T(0.5) * (T(lambda + 3 * eta) + T(mu));   // (l+3e+m)/2
    return sin(T(lambda + eta)) * sin(hq) * sin(xi + T(lambda - eta)) * sin(xi + hp) /
           (sin(T(lambda - eta)) * sin(hp) * sin(xi + T(lambda + eta)) * sin(xi + hq));
}

/// r(tau(xi)): cot-bracket times the sine-ratio factor.
template <class T, class M>
T r_xi_t(const T& xi, double eta, double lambda, M mu) {
    const double alpha = alpha_of_eta(eta);
    const T hp = T(0.5) * (T(lambda - eta) + T(mu));
    const T hq = T(0.5) * (T(lambda + 3 * eta) + T(mu));
    const T pll = sin(xi + T(lambda + eta)) * sin(xi + T(lambda - eta));
    const T pmm = sin(xi + hp) * sin(xi + hq);
    return cot_bracket(xi, lambda, eta, alpha) * pll * pmm /
           (T(std::sin(2 * eta)) * (pll + pmm));
}

// Double-precision front ends with domain checks (the spec operations).
double sigma_xi(double xi, const AngleParams& p);
double f_sigma(double xi, const AngleParams& p);
double tau_xi(double xi, const AngleParams& p);
double r_xi(double xi, const AngleParams& p);
double tilde_tau_xi(double xi, const AngleParams& p);
double tilde_r_xi(double xi, const AngleParams& p);

}  // namespace tv
