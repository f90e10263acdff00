#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace tv {

/// Integrable angle parameters (eta, lambda, mu), all in radians.
/// Admissible range: 0 < eta < lambda < pi - eta  and  eta - lambda < mu < lambda - eta,
/// which keeps every vertex weight strictly positive.
struct AngleParams {
    double eta;
    double lambda;
    double mu;

    AngleParams with_mu_negated() const { return {eta, lambda, -mu}; }
};

/// Returns nullptr when admissible, otherwise a static string naming the
/// violated inequality.
const char* admissibility_violation(const AngleParams& p);
bool is_admissible(const AngleParams& p);
/// Throws std::domain_error naming the violated inequality.
void require_admissible(const AngleParams& p);

/// Real 6V weight triples on the three Kagome sublattices, phases stripped.
/// Index 0,1,2 <-> sublattice 1,2,3.
struct KagomeTriple {
    std::array<double, 3> a;
    std::array<double, 3> b;
    std::array<double, 3> c;
};

/// The seven 20V vertex weights omega_0..omega_6, unnormalized.
struct VertexWeights {
    std::array<double, 7> w{};
    double operator[](int i) const { return w[static_cast<size_t>(i)]; }
    double& operator[](int i) { return w[static_cast<size_t>(i)]; }
    double max() const;
};

KagomeTriple kagome_triple(const AngleParams& p);
VertexWeights compute_weights(const AngleParams& p);
VertexWeights omega_from_kagome(const KagomeTriple& t);

/// (a1b2c3 + c1c2b3 - b1a2c3,  c1b2b3 + a1c2c3 - c1a2a3,  c1b2c3 + a1c2b3 - b1c2a3)
std::array<double, 3> yang_baxter_residuals(const KagomeTriple& t);

/// omega0 <-> omega1, omega2 <-> omega4; omega3, omega5, omega6 fixed.
VertexWeights inverted_weights(const VertexWeights& w);

// ---------------------------------------------------------------------------
// Vertex patterns.
//
// A pattern is the pair (inbound subset of {N,NW,W}, outbound subset of
// {E,SE,S}) at a node, encoded in 6 bits: in bits 0..2, out bits 3..5.
// Exactly 20 codes are valid (|in| == |out|).
namespace pat {
constexpr uint8_t IN_N = 1, IN_NW = 2, IN_W = 4;
constexpr uint8_t OUT_E = 1, OUT_SE = 2, OUT_S = 4;

constexpr uint8_t make(uint8_t in, uint8_t out) { return static_cast<uint8_t>(in | (out << 3)); }
constexpr uint8_t in_bits(uint8_t code) { return code & 7; }
constexpr uint8_t out_bits(uint8_t code) { return (code >> 3) & 7; }
}  // namespace pat

bool pattern_valid(uint8_t code);
/// Toggles every edge slot; maps valid patterns to valid patterns.
uint8_t pattern_complement(uint8_t code);
/// Weight class 0..6 of a valid pattern (-1 for invalid codes).
int pattern_class(uint8_t code);
/// All 20 valid pattern codes.
const std::vector<uint8_t>& all_patterns();

/// Pattern -> weight lookup for a given weight system.
struct PatternWeights {
    std::array<double, 64> value{};
    double operator()(uint8_t code) const { return value[code]; }
};
PatternWeights vertex_weight_map(const VertexWeights& w);

// ---------------------------------------------------------------------------
// Refined correspondence maps.

struct RefinedMap {
    double tau;
    double g;
};

/// Closed-form (tau(sigma), g(sigma)) of the refined 20V/6V identity.
/// The tilde variant is obtained by calling with mu negated.
/// Throws std::domain_error at poles of the map.
RefinedMap refined_map(double sigma, const AngleParams& p);

/// Bracket ratios w -> w*theta for the modified last column, theta = exp(2*i*chi).
/// The common per-factor phase exp(i*chi) is stripped; the c-ratios have unit
/// modulus and strip to 1.
struct ThetaScales {
    double a1, b1, c1;  // sublattice 1 ratios
    double a3, b3, c3;  // sublattice 3 ratios
};
ThetaScales theta_scales(double chi, const AngleParams& p);

struct ThetaRelations {
    double sigma;
    double tau;
    double g;
};

/// sigma[theta], tau[theta], g(sigma[theta]) from ratios of the modified
/// Kagome weights, theta = exp(2*i*chi) with chi real (chi = 0 <-> theta = 1).
/// Eliminating chi reproduces refined_map.
ThetaRelations theta_relations(double chi, const AngleParams& p);

}  // namespace tv
