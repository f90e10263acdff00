#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tv/lattice.hpp"
#include "tv/weights.hpp"

namespace tv {

/// Compensated (Neumaier) accumulator.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

/// Exact partition data refined by the uppermost-path boundary observables.
/// Vectors are 1-based in L (index 0 unused).
struct RefinedPartition {
    int n = 0;
    double total = 0.0;
    std::vector<double> byHitH, byHitD;  // hit of column x = n, last step - or \.
    std::vector<double> byTopV, byTopD;  // exit of row y = n, next step | or \.

    explicit RefinedPartition(int n_ = 0)
        : n(n_), byHitH(n_ + 1, 0.0), byHitD(n_ + 1, 0.0), byTopV(n_ + 1, 0.0),
          byTopD(n_ + 1, 0.0) {}

    /// sum_L byHitH[L] * t^(L-1) etc.
    double hit_poly_h(double t) const;
    double hit_poly_d(double t) const;
    double top_poly_v(double t) const;
    double top_poly_d(double t) const;
};

/// Per-node weight hook: (x, y, pattern code) -> weight. Enables the modified
/// last-column weights used by the theta-route checks.
using WeightOracle = std::function<double(int, int, uint8_t)>;

WeightOracle make_uniform_oracle();
WeightOracle make_oracle(const PatternWeights& pw);
WeightOracle make_oracle(const VertexWeights& w);
/// 20V oracle with the w -> w*theta modification (theta = exp(2*i*chi)) in the
/// last column x = n of an n x n grid.
WeightOracle make_theta_oracle_20v(const AngleParams& p, double chi, int n);

/// 6V vertex weight for a diagonal-free pattern: a (empty/full), b (N->S,
/// W->E), c (N->E, W->S).
double sixv_weight(double a, double b, double c, uint8_t pattern);

/// Exact enumeration via row-frontier memoized dynamic programming (the
/// production path). Throws std::length_error when n exceeds the cap.
RefinedPartition enumerate_20v(int n, BoundaryCondition bc, const WeightOracle& oracle,
                               int cap = 4);
/// Naive full depth-first enumeration; oracle for the DP implementation.
RefinedPartition enumerate_20v_dfs(int n, BoundaryCondition bc, const WeightOracle& oracle,
                                   int cap = 4);
/// All valid configurations (for exact MCMC distributions at small n).
std::vector<Configuration> enumerate_configs(int n, BoundaryCondition bc, int cap = 4);

/// 6V model with DWBC; lastColumnScale multiplies (a, b, c) in column x = n.
RefinedPartition enumerate_6v(int n, double a, double b, double c,
                              std::array<double, 3> lastColumnScale = {1.0, 1.0, 1.0},
                              int cap = 6);

/// |Z20V - pref^(n^2) Z6V| / rhs  (Thm 2.1 identity).
double verify_thm1(int n, const AngleParams& p);

/// Worst relative error of the refined identity (and its tilde variant) over
/// the sigma samples; sigma values at poles of tau(sigma) are skipped.
double verify_thm2(int n, const AngleParams& p, const std::vector<double>& sigmas);

/// Relative error of the theta-modified unraveling identity at this chi
/// (theta = exp(2*i*chi)).
double verify_theta_route(int n, const AngleParams& p, double chi);

}  // namespace tv
