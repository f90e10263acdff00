#include "tv/weights.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace tv {

const char* admissibility_violation(const AngleParams& p) {
    if (!(p.eta > 0)) return "eta > 0";
    if (!(p.lambda > p.eta)) return "lambda > eta";
    if (!(p.lambda < M_PI - p.eta)) return "lambda < pi - eta";
    if (!(p.mu > p.eta - p.lambda)) return "mu > eta - lambda";
    if (!(p.mu < p.lambda - p.eta)) return "mu < lambda - eta";
    return nullptr;
}

bool is_admissible(const AngleParams& p) { return admissibility_violation(p) == nullptr; }

void require_admissible(const AngleParams& p) {
    if (const char* v = admissibility_violation(p))
        throw std::domain_error(std::string("inadmissible angle parameters: violated ") + v);
}

double VertexWeights::max() const { return *std::max_element(w.begin(), w.end()); }

KagomeTriple kagome_triple(const AngleParams& p) {
    require_admissible(p);
    const double e = p.eta, l = p.lambda, m = p.mu;
    KagomeTriple t;
    t.a = {std::sin(l + e), std::sin((l + 3 * e - m) / 2), std::sin((l + 3 * e + m) / 2)};
    t.b = {std::sin(l - e), std::sin((l - e - m) / 2), std::sin((l - e + m) / 2)};
    t.c = {std::sin(2 * e), std::sin(2 * e), std::sin(2 * e)};
    return t;
}

VertexWeights compute_weights(const AngleParams& p) {
    require_admissible(p);
    const double e = p.eta, l = p.lambda, m = p.mu;
    const double s2e = std::sin(2 * e);
    VertexWeights w;
    w[0] = std::sin(l + e) * std::sin((l + 3 * e + m) / 2) * std::sin((l + 3 * e - m) / 2);
    w[1] = std::sin(l - e) * std::sin((l - e + m) / 2) * std::sin((l + 3 * e - m) / 2);
    w[2] = s2e * std::sin(l - e) * std::sin((l + 3 * e - m) / 2);
    w[3] = s2e * s2e * s2e +
           std::sin(l + e) * std::sin((l - e + m) / 2) * std::sin((l - e - m) / 2);
    w[4] = s2e * std::sin((l + 3 * e + m) / 2) * std::sin((l + 3 * e - m) / 2);
    w[5] = s2e * std::sin(l - e) * std::sin((l + 3 * e + m) / 2);
    w[6] = std::sin(l - e) * std::sin((l + 3 * e + m) / 2) * std::sin((l - e - m) / 2);
    return w;
}

VertexWeights omega_from_kagome(const KagomeTriple& t) {
    const auto& a = t.a;
    const auto& b = t.b;
    const auto& c = t.c;
    VertexWeights w;
    w[0] = a[0] * a[1] * a[2];
    w[1] = b[0] * a[1] * b[2];
    w[2] = b[0] * a[1] * c[2];
    w[3] = a[0] * b[1] * b[2] + c[0] * c[1] * c[2];
    w[4] = c[0] * a[1] * a[2];
    w[5] = b[0] * c[1] * a[2];
    w[6] = b[0] * b[1] * a[2];
    return w;
}

std::array<double, 3> yang_baxter_residuals(const KagomeTriple& t) {
    const auto& a = t.a;
    const auto& b = t.b;
    const auto& c = t.c;
    return {a[0] * b[1] * c[2] + c[0] * c[1] * b[2] - b[0] * a[1] * c[2],
            c[0] * b[1] * b[2] + a[0] * c[1] * c[2] - c[0] * a[1] * a[2],
            c[0] * b[1] * c[2] + a[0] * c[1] * b[2] - b[0] * c[1] * a[2]};
}

VertexWeights inverted_weights(const VertexWeights& w) {
    VertexWeights r = w;
    std::swap(r[0], r[1]);
    std::swap(r[2], r[4]);
    return r;
}

bool pattern_valid(uint8_t code) {
    if (code >= 64) return false;
    return std::popcount(pat::in_bits(code)) == std::popcount(pat::out_bits(code));
}

uint8_t pattern_complement(uint8_t code) {
    return pat::make(pat::in_bits(code) ^ 7, pat::out_bits(code) ^ 7);
}

int pattern_class(uint8_t code) {
    if (!pattern_valid(code)) return -1;
    const uint8_t in = pat::in_bits(code), out = pat::out_bits(code);
    const int k = std::popcount(in);
    if (k == 0 || k == 3) return 0;
    if (k == 2) return pattern_class(pattern_complement(code));
    // single path through the node
    switch (in) {
        case pat::IN_N:
            return out == pat::OUT_S ? 1 : (out == pat::OUT_SE ? 2 : 4);
        case pat::IN_NW:
            return out == pat::OUT_SE ? 3 : (out == pat::OUT_S ? 2 : 5);
        default:  // IN_W
            return out == pat::OUT_E ? 6 : (out == pat::OUT_SE ? 5 : 4);
    }
}

const std::vector<uint8_t>& all_patterns() {
    static const std::vector<uint8_t> codes = [] {
        std::vector<uint8_t> v;
        for (uint8_t c = 0; c < 64; ++c)
            if (pattern_valid(c)) v.push_back(c);
        return v;
    }();
    return codes;
}

PatternWeights vertex_weight_map(const VertexWeights& w) {
    PatternWeights pw;
    pw.value.fill(0.0);
    for (uint8_t c : all_patterns()) pw.value[c] = w[pattern_class(c)];
    return pw;
}

RefinedMap refined_map(double sigma, const AngleParams& p) {
    const double e = p.eta, l = p.lambda, m = p.mu;
    const double den = sigma * std::sin(l - e) * std::sin((l - e - m) / 2) -
                       std::sin(l + e) * std::sin((l - 5 * e - m) / 2);
    if (std::abs(den) < 1e-14)
        throw std::domain_error("refined_map: pole of tau(sigma) at this sigma");
    const double num = sigma * std::sin(l - e) * std::sin((l + 3 * e - m) / 2) -
                       std::sin(l + e) * std::sin((l - e - m) / 2);
    RefinedMap r;
    r.tau = sigma * (num / den) * (std::sin((l + 3 * e + m) / 2) / std::sin((l - e + m) / 2));
    r.g = sigma * std::sin(2 * e) * std::sin((l + 3 * e + m) / 2) / den;
    return r;
}

ThetaScales theta_scales(double chi, const AngleParams& p) {
    const double e = p.eta, l = p.lambda, m = p.mu;
    auto ratio = [chi](double angle) {
        const double s = std::sin(angle);
        if (std::abs(s) < 1e-14 || std::abs(std::sin(angle - chi)) < 1e-14)
            throw std::domain_error("theta_scales: vanishing bracketed weight");
        return std::sin(angle - chi) / s;
    };
    ThetaScales s;
    s.a1 = ratio(l + e);
    s.b1 = ratio(l - e);
    s.c1 = 1.0;
    s.a3 = ratio((l + 3 * e + m) / 2);
    s.b3 = ratio((l - e + m) / 2);
    s.c3 = 1.0;
    return s;
}

ThetaRelations theta_relations(double chi, const AngleParams& p) {
    const ThetaScales s = theta_scales(chi, p);
    ThetaRelations r;
    r.sigma = s.b1 / s.a1;
    r.tau = (s.b1 * s.b3) / (s.a1 * s.a3);
    r.g = s.b1 / s.a3;
    return r;
}

}  // namespace tv
