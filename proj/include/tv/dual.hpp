#pragma once

#include <cmath>
#include <complex>

namespace tv {

/// Forward-mode first-order dual number: carries a value and the derivative
/// of that value with respect to a single seed variable.  Instantiated with
/// double for real curve work and std::complex<double> for the imaginary-mu
/// limit checks.
template <class T>
struct Dual {
    T v{};  // value
    T d{};  // derivative w.r.t. the seed variable

    Dual() = default;
    Dual(T value) : v(value), d(T(0)) {}
    Dual(T value, T deriv) : v(value), d(deriv) {}

    Dual operator-() const { return {-v, -d}; }

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
};

template <class T>
Dual<T> seed(T value) { return Dual<T>(value, T(1)); }

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.v * b.d + a.d * b.v};
}
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}

template <class T> Dual<T> operator+(const Dual<T>& a, T b) { return {a.v + b, a.d}; }
template <class T> Dual<T> operator+(T a, const Dual<T>& b) { return {a + b.v, b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, T b) { return {a.v - b, a.d}; }
template <class T> Dual<T> operator-(T a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, T b) { return {a.v * b, a.d * b}; }
template <class T> Dual<T> operator*(T a, const Dual<T>& b) { return {a * b.v, a * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, T b) { return {a.v / b, a.d / b}; }
template <class T> Dual<T> operator/(T a, const Dual<T>& b) {
    T q = a / b.v;
    return {q, -q * b.d / b.v};
}

// double-scalar mixing for complex duals
inline Dual<std::complex<double>> operator*(double a, const Dual<std::complex<double>>& b) {
    return {a * b.v, a * b.d};
}
inline Dual<std::complex<double>> operator/(const Dual<std::complex<double>>& a, double b) {
    return {a.v / b, a.d / b};
}

using std::cos;
using std::log;
using std::sin;
using std::tan;

template <class T> Dual<T> sin(const Dual<T>& x) { return {sin(x.v), cos(x.v) * x.d}; }
template <class T> Dual<T> cos(const Dual<T>& x) { return {cos(x.v), -sin(x.v) * x.d}; }
template <class T> Dual<T> log(const Dual<T>& x) { return {log(x.v), x.d / x.v}; }

/// cot with the derivative -1/sin^2
template <class T> T cot(T x) { return cos(x) / sin(x); }
template <class T> Dual<T> cot(const Dual<T>& x) {
    T s = sin(x.v);
    return {cos(x.v) / s, -x.d / (s * s)};
}

}  // namespace tv
