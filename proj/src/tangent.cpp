#include "tv/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tv {

AlphaCoeffs alpha_coeffs(const VertexWeights& w) {
    if (!(w[0] > 0)) throw std::domain_error("alpha_coeffs: omega0 must be positive");
    const double o0 = w[0], o1 = w[1], o2 = w[2], o3 = w[3], o4 = w[4], o5 = w[5], o6 = w[6];
    AlphaCoeffs a;
    a.a[1] = o1 / o0;
    a.a[2] = o6 / o0;
    a.a[3] = (o0 * o3 + o4 * o4 - o1 * o6) / (o0 * o0);
    a.a[4] = (o2 * o2 - o1 * o3) / (o0 * o0);
    a.a[5] = (o5 * o5 - o6 * o3) / (o0 * o0);
    a.a[6] = (2 * o2 * o4 * o5 + o1 * o6 * o3 - o3 * o4 * o4 - o1 * o5 * o5 - o6 * o2 * o2) /
             (o0 * o0 * o0);
    return a;
}

namespace {

// step-count coefficients of (W, U, V) for p3..p6
constexpr double CW[4] = {1, 2, 2, 3};
constexpr double CU[4] = {1, 2, 1, 2};
constexpr double CV[4] = {1, 1, 2, 2};

struct Uvw {
    double W, U, V;
};

Uvw uvw_at(double ell, double m, const std::array<double, 4>& p) {
    double sw = 0, su = 0, sv = 0;
    for (int i = 0; i < 4; ++i) {
        sw += CW[i] * p[i];
        su += CU[i] * p[i];
        sv += CV[i] * p[i];
    }
    return {ell + m - sw, ell - su, m - sv};
}

bool feasible(double ell, double m, const std::array<double, 4>& p, const AlphaCoeffs& al) {
    const Uvw q = uvw_at(ell, m, p);
    if (!(q.W > 0 && q.U > 0 && q.V > 0)) return false;
    for (int i = 0; i < 4; ++i) {
        const double a = al[i + 3];
        if (a == 0.0) {
            if (p[i] != 0.0) return false;
        } else if (p[i] != 0.0 && !(p[i] / a > 0)) {
            return false;
        }
    }
    return true;
}

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

}  // namespace

double action(const ActionPoint& ap, const AlphaCoeffs& alphas, ActionVariant variant) {
    const double ell = (variant == ActionVariant::SHEAR) ? 1.0 - ap.ell : ap.ell;
    if (!feasible(ell, ap.m, ap.p, alphas))
        throw std::domain_error("action: point outside the feasible region");
    const Uvw q = uvw_at(ell, ap.m, ap.p);
    double s = xlogx(q.W) - q.U * std::log(q.U / alphas[1]) - q.V * std::log(q.V / alphas[2]);
    for (int i = 0; i < 4; ++i)
        if (ap.p[i] != 0.0) s -= ap.p[i] * std::log(ap.p[i] / alphas[i + 3]);
    return s;
}

namespace {

// Stationarity residuals (the gradient of the action in the active p's).
void residuals(double ell, double m, const std::array<double, 4>& p, const AlphaCoeffs& al,
               const std::vector<int>& act, double* res) {
    const Uvw q = uvw_at(ell, m, p);
    const double lw = std::log(q.W), lu = std::log(q.U / al[1]), lv = std::log(q.V / al[2]);
    for (size_t k = 0; k < act.size(); ++k) {
        const int i = act[k];
        res[k] = -CW[i] * lw + CU[i] * lu + CV[i] * lv - std::log(p[i] / al[i + 3]);
    }
}

// Explicit fixed-point values p_i = alpha_i U^a V^b / (alpha1^a alpha2^b W^c).
void fixed_point(const Uvw& q, const AlphaCoeffs& al, const std::vector<int>& act,
                 std::array<double, 4>& p) {
    for (int i : act) {
        p[i] = al[i + 3] * std::pow(q.U / al[1], CU[i]) * std::pow(q.V / al[2], CV[i]) /
               std::pow(q.W, CW[i]);
    }
}

bool solve_linear(std::vector<std::vector<double>>& a, std::vector<double>& b) {
    const size_t k = b.size();
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (size_t cc = col; cc < k; ++cc) a[r][cc] -= f * a[col][cc];
            b[r] -= f * b[col];
        }
    }
    for (size_t i = 0; i < k; ++i) b[i] /= a[i][i];
    return true;
}

double max_abs(const double* v, size_t k) {
    double r = 0;
    for (size_t i = 0; i < k; ++i) r = std::max(r, std::abs(v[i]));
    return r;
}

}  // namespace

ActionMax maximize_action(double ell, double m, const AlphaCoeffs& alphas,
                          ActionVariant variant) {
    const double le = (variant == ActionVariant::SHEAR) ? 1.0 - ell : ell;
    if (!(le > 0 && m > 0))
        throw std::domain_error("maximize_action: requires ell, m > 0 (variant-adjusted)");

    std::vector<int> act;
    for (int i = 0; i < 4; ++i)
        if (alphas[i + 3] != 0.0) act.push_back(i);

    std::array<double, 4> p{0, 0, 0, 0};
    ActionMax out{};
    if (act.empty()) {
        out.value = action({ell, m, p}, alphas, variant);
        out.p = p;
        return out;
    }

    // start from the explicit fixed point of the empty configuration, damped
    // into the feasible region
    fixed_point({le + m, le, m}, alphas, act, p);
    for (int tries = 0; tries < 200 && !feasible(le, m, p, alphas); ++tries)
        for (int i : act) p[i] *= 0.5;

    const size_t k = act.size();
    std::vector<double> res(k), rhs(k);
    std::vector<std::vector<double>> jac(k, std::vector<double>(k));

    // single active variable: bracketed bisection on the monotone residual
    if (k == 1) {
        const int i = act[0];
        const double sgn = alphas[i + 3] > 0 ? 1.0 : -1.0;
        // |p_i| bounded by positivity of W, U, V
        double hi = std::min({(le + m) / CW[i], le / CU[i], m / CV[i]}) * 0.999999;
        double lo = hi * 1e-300;
        auto res1 = [&](double q) {
            p[i] = sgn * q;
            residuals(le, m, p, alphas, act, res.data());
            return res[0];
        };
        // residual -> +inf as q -> 0; find hi with negative residual
        double a = lo, b = hi;
        if (res1(b) > 0) {
            // stationary point sits against the boundary; tighten
            for (int it = 0; it < 200 && res1(b) > 0; ++it) b = lo + (b - lo) * 0.99;
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            (res1(mid) > 0 ? a : b) = mid;
        }
        p[i] = sgn * 0.5 * (a + b);
        residuals(le, m, p, alphas, act, res.data());
        out.value = action({ell, m, p}, alphas, variant);
        out.p = p;
        out.iterations = 200;
        if (max_abs(res.data(), 1) > 1e-9)
            throw std::runtime_error("maximize_action: 1-D bisection did not converge");
        return out;
    }

    // damped Newton on the stationarity system
    int it = 0;
    for (; it < 200; ++it) {
        residuals(le, m, p, alphas, act, res.data());
        const double rn = max_abs(res.data(), k);
        if (rn < 1e-11) break;
        const Uvw q = uvw_at(le, m, p);
        for (size_t r = 0; r < k; ++r) {
            for (size_t c = 0; c < k; ++c) {
                const int i = act[r], j = act[c];
                jac[r][c] = CW[i] * CW[j] / q.W - CU[i] * CU[j] / q.U - CV[i] * CV[j] / q.V;
                if (r == c) jac[r][c] -= 1.0 / p[i];
            }
            rhs[r] = -res[r];
        }
        auto jc = jac;
        auto dc = rhs;
        if (!solve_linear(jc, dc)) break;
        double t = 1.0;
        std::array<double, 4> pn = p;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (size_t r = 0; r < k; ++r) pn[act[r]] = p[act[r]] + t * dc[r];
            if (feasible(le, m, pn, alphas)) {
                std::vector<double> rn2(k);
                residuals(le, m, pn, alphas, act, rn2.data());
                if (max_abs(rn2.data(), k) < rn || t < 1e-6) {
                    p = pn;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!moved) break;
    }
    residuals(le, m, p, alphas, act, res.data());
    if (max_abs(res.data(), k) > 1e-10) {
        // damped fixed-point fallback, then one more Newton polish
        for (int fp = 0; fp < 5000; ++fp) {
            const Uvw q = uvw_at(le, m, p);
            std::array<double, 4> target = p;
            fixed_point(q, alphas, act, target);
            for (int i : act) p[i] = 0.7 * p[i] + 0.3 * target[i];
            if (!feasible(le, m, p, alphas))
                for (int i : act) p[i] *= 0.5;
        }
        residuals(le, m, p, alphas, act, res.data());
        if (max_abs(res.data(), k) > 1e-10) {
            std::ostringstream os;
            os << "maximize_action: no convergence; last iterate p = (";
            for (int i = 0; i < 4; ++i) os << p[i] << (i < 3 ? ", " : ")");
            throw std::runtime_error(os.str());
        }
    }
    out.value = action({ell, m, p}, alphas, variant);
    out.p = p;
    out.iterations = it;
    return out;
}

double action_dl(double ell, double m, const AlphaCoeffs& alphas, ActionVariant variant) {
    const double le = (variant == ActionVariant::SHEAR) ? 1.0 - ell : ell;
    double h = 1e-6 * std::max(le, 1.0);
    h = std::min(h, 0.45 * le);
    auto smax = [&](double l) { return maximize_action(l, m, alphas, variant).value; };
    auto central = [&](double hh) { return (smax(ell + hh) - smax(ell - hh)) / (2 * hh); };
    const double d1 = central(h), d2 = central(h / 2);
    return (4 * d2 - d1) / 3;  // Richardson
}

namespace {

// Finds xi in [lo, hi] with f(xi) == target by scan + bisection.
template <class F>
double invert_on(F&& f, double lo, double hi, double target, const char* what) {
    const int K = 256;
    double xa = lo, fa = f(xa) - target;
    if (std::abs(fa) < 1e-14) return xa;
    double xb = xa, fb = fa;
    bool found = false;
    for (int i = 1; i <= K; ++i) {
        xb = lo + (hi - lo) * i / K;
        fb = f(xb) - target;
        if (std::abs(fb) < 1e-14) return xb;
        if (fa * fb < 0) {
            found = true;
            break;
        }
        xa = xb;
        fa = fb;
    }
    if (!found) throw std::range_error(std::string(what) + ": target not bracketed");
    for (int it = 0; it < 200; ++it) {
        const double xm = 0.5 * (xa + xb);
        const double fm = f(xm) - target;
        if (fm == 0) return xm;
        if (fa * fm < 0) {
            xb = xm;
        } else {
            xa = xm;
            fa = fm;
        }
    }
    return 0.5 * (xa + xb);
}

double solve_m(double tau, double r, const AlphaCoeffs& alphas, ActionVariant variant,
               double w0_over_w1) {
    auto F = [&](double m) {
        return std::log(w0_over_w1) + action_dl(r, m, alphas, variant) - std::log(tau);
    };
    // bracket over a log grid in m
    double m_lo = 1e-8, f_lo = F(m_lo);
    double m_hi = m_lo, f_hi = f_lo;
    bool found = false;
    for (double m = 2e-8; m < 1e9; m *= 1.6) {
        m_hi = m;
        f_hi = F(m);
        if (f_lo * f_hi < 0) {
            found = true;
            break;
        }
        m_lo = m_hi;
        f_lo = f_hi;
    }
    if (!found) throw std::range_error("slope_numeric: stationarity root not bracketed in m");
    for (int it = 0; it < 120; ++it) {
        const double mm = 0.5 * (m_lo + m_hi);
        const double fm = F(mm);
        if (fm == 0) return mm;
        if (f_lo * fm < 0) {
            m_hi = mm;
        } else {
            m_lo = mm;
            f_lo = fm;
        }
    }
    return 0.5 * (m_lo + m_hi);
}

struct BranchRange {
    double lo, hi;
};

BranchRange branch_range(const AngleParams& p, Branch b) {
    switch (b) {
        case Branch::NORMAL: return {0.0, M_PI - p.lambda - p.eta};
        case Branch::SHEAR: return {-(p.lambda - p.eta + p.mu) / 2, 0.0};
        default: return {-(p.lambda - p.eta - p.mu) / 2, 0.0};
    }
}

void check_branch_range(double xi, const AngleParams& p, Branch b, const char* what) {
    const BranchRange r = branch_range(p, b);
    if (!(xi >= r.lo - 1e-12 && xi <= r.hi + 1e-12))
        throw std::range_error(std::string(what) + ": xi outside branch range");
}

}  // namespace

double slope_numeric(double tau, const AngleParams& p, Branch branch) {
    require_admissible(p);
    const AngleParams q = (branch == Branch::FINAL) ? p.with_mu_negated() : p;
    const VertexWeights w = compute_weights(q);
    const double w0w1 = w[0] / w[1];
    const BranchRange br = branch_range(q, branch == Branch::FINAL ? Branch::SHEAR
                                                                   : branch);
    const double eps = 1e-9;
    const double xi = invert_on([&](double x) { return tau_xi(x, q); }, br.lo + eps,
                                br.hi - eps, tau, "slope_numeric(tau inversion)");
    const double r = r_xi(xi, q);
    if (branch == Branch::NORMAL) {
        const AlphaCoeffs al = alpha_coeffs(w);
        const double m = solve_m(tau, r, al, ActionVariant::NORMAL, w0w1);
        return r / m;
    }
    const AlphaCoeffs al = alpha_coeffs(inverted_weights(w));
    const double m = solve_m(tau, r, al, ActionVariant::SHEAR, w0w1);
    return 1.0 - (1.0 - r) / m;
}

double closed_slopes(double xi, const AngleParams& p, Branch branch) {
    check_branch_range(xi, p, branch, "closed_slopes");
    switch (branch) {
        case Branch::NORMAL: return slope_normal_t(xi, p.eta, p.lambda, p.mu);
        case Branch::SHEAR: return slope_shear_t(xi, p.eta, p.lambda, p.mu);
        default: return slope_shear_t(xi, p.eta, p.lambda, -p.mu);
    }
}

double closed_r(double xi, const AngleParams& p, Branch branch) {
    check_branch_range(xi, p, branch, "closed_r");
    const AngleParams q = (branch == Branch::FINAL) ? p.with_mu_negated() : p;
    return r_xi_t(xi, q.eta, q.lambda, q.mu);
}

double branch_tau(double xi, const AngleParams& p, Branch branch) {
    check_branch_range(xi, p, branch, "branch_tau");
    const AngleParams q = (branch == Branch::FINAL) ? p.with_mu_negated() : p;
    return tau_xi_t(xi, q.eta, q.lambda, q.mu);
}

EnvelopePoint envelope(const CurveFn& R, const CurveFn& S, double xi, Orientation orientation) {
    const Dual<double> rd = R(seed(xi));
    const Dual<double> sd = S(seed(xi));
    if (std::abs(sd.d) < 1e-11 * std::max(1.0, std::abs(rd.d))) throw CuspError(xi);
    const double ratio = rd.d / sd.d;
    const double tangent_coord = 1.0 + ratio;
    const double other = rd.v - sd.v * ratio;
    if (orientation == Orientation::X_TANGENT) return {tangent_coord, other};
    return {other, tangent_coord};
}

}  // namespace tv
