#include "tv/asymptotics.hpp"

namespace tv {

double alpha_of_eta(double eta) {
    if (!(eta > 0 && eta < M_PI / 2))
        throw std::domain_error("alpha_of_eta: eta must lie in (0, pi/2)");
    return M_PI / (M_PI - 2 * eta);
}

namespace {
void check_wide(double xi, const AngleParams& p, const char* what) {
    detail::check_range(xi, -(p.lambda - p.eta), M_PI - p.lambda - p.eta, what);
}
}  // namespace

double sigma_xi(double xi, const AngleParams& p) {
    check_wide(xi, p, "sigma_xi");
    return sigma_xi_t(xi, p.eta, p.lambda);
}

double f_sigma(double xi, const AngleParams& p) { return f_sigma_t(xi, p.eta, p.lambda); }

double tau_xi(double xi, const AngleParams& p) {
    check_wide(xi, p, "tau_xi");
    return tau_xi_t(xi, p.eta, p.lambda, p.mu);
}

double r_xi(double xi, const AngleParams& p) {
    check_wide(xi, p, "r_xi");
    return r_xi_t(xi, p.eta, p.lambda, p.mu);
}

double tilde_tau_xi(double xi, const AngleParams& p) { return tau_xi(xi, p.with_mu_negated()); }

double tilde_r_xi(double xi, const AngleParams& p) { return r_xi(xi, p.with_mu_negated()); }

}  // namespace tv
