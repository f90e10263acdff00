#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tv/weights.hpp"

namespace tv {

enum class BoundaryCondition { DWBC1, DWBC2, SIXV_DWBC };

const char* to_string(BoundaryCondition bc);

/// Edge-occupancy representation of a 20V (or 6V) configuration on the n x n
/// grid, nodes (x, y) with x, y in 1..n, x to the right, y upward.
///
/// Edge slots (all boolean, 1 = traversed by a path step):
///   H(i,j) horizontal (i,j)->(i+1,j),   i in 0..n, j in 1..n
///   V(i,j) vertical   (i,j+1)->(i,j),   i in 1..n, j in 0..n   (downward)
///   D(i,j) diagonal   (i,j+1)->(i+1,j), i in 0..n, j in 0..n   ((0,0),(n,n) unused)
///
/// i = 0 / i = n rows of H and j = 0 / j = n rows of V and the outer D slots
/// are the fixed boundary edges of the DWBC prescription.
struct Configuration {
    int n = 0;
    BoundaryCondition bc = BoundaryCondition::DWBC2;
    std::vector<uint8_t> h, v, d;

    Configuration() = default;
    Configuration(int n_, BoundaryCondition bc_);

    uint8_t& H(int i, int j) { return h[static_cast<size_t>(i) * n + (j - 1)]; }
    uint8_t H(int i, int j) const { return h[static_cast<size_t>(i) * n + (j - 1)]; }
    uint8_t& V(int i, int j) { return v[static_cast<size_t>(i - 1) * (n + 1) + j]; }
    uint8_t V(int i, int j) const { return v[static_cast<size_t>(i - 1) * (n + 1) + j]; }
    uint8_t& D(int i, int j) { return d[static_cast<size_t>(i) * (n + 1) + j]; }
    uint8_t D(int i, int j) const { return d[static_cast<size_t>(i) * (n + 1) + j]; }

    bool has_diagonals() const { return bc != BoundaryCondition::SIXV_DWBC; }

    /// The boundary value mandated by bc for a boundary slot; nullopt for
    /// interior slots.
    std::optional<uint8_t> boundary_h(int i, int j) const;
    std::optional<uint8_t> boundary_v(int i, int j) const;
    std::optional<uint8_t> boundary_d(int i, int j) const;

    /// Resets every boundary slot to the bc prescription (interior untouched).
    void apply_boundary();

    bool operator==(const Configuration& o) const = default;
    std::string key() const;  // canonical packed-bit string, for hashing
};

struct NodeRef {
    int x, y;
};

/// Thrown when a configuration violates the ice rule; carries the node.
struct InvalidConfiguration : std::runtime_error {
    NodeRef node;
    explicit InvalidConfiguration(NodeRef nd);
};

/// First violated node, or nullopt when valid (checks boundary slots too).
std::optional<NodeRef> find_violation(const Configuration& c);
bool is_valid(const Configuration& c);

/// Inbound/outbound pattern code at a node; throws InvalidConfiguration when
/// path conservation fails there.
uint8_t classify_vertex(const Configuration& c, int x, int y);

/// Product of the pattern weights over all n^2 nodes; throws on invalid input.
double config_weight(const Configuration& c, const PatternWeights& pw);

/// The extremal "diagonal" configuration: everything below the second
/// diagonal occupied (the unique maximally filled state for the given bc).
Configuration extremal_diagonal(int n, BoundaryCondition bc);

/// Plain occupancy transforms. Each alone leaves the path language (the
/// result is only meaningful through the composite or further mapping).
Configuration rotate180(const Configuration& c);
Configuration complement_edges(const Configuration& c);
/// rotate180 then complement: bijection DWBC1 <-> DWBC2, weight preserving.
Configuration rotate180_complement(const Configuration& c);
/// x <-> y reflection (occupancies re-read in path orientation); equivalent
/// to mu -> -mu in the weights.
Configuration transpose_xy(const Configuration& c);

// ---------------------------------------------------------------------------
// Shear representation (the "inverted" 20V model).
//
// Vertical edges are complemented and the lattice sheared so paths run from
// S/SW/W to E/NE/N. Only node-local structure is kept: patterns are encoded
// with in bits {W=1, SW=2, S=4} and out bits {E=1, NE=2, N=4}.
struct InvertedConfiguration {
    int n = 0;
    Configuration base;  // the DWBC2 pre-image

    uint8_t pattern(int x, int y) const;  // image pattern at original node (x,y)
    /// Weight class in the inverted model's labelling (omega-bar indices),
    /// i.e. after the up-down relabelling of the pattern.
    int weight_class(int x, int y) const;
};

InvertedConfiguration shear_image(const Configuration& c);

/// Weight of the image under the inverted weight system; equals the weight of
/// the pre-image under the original system.
double inverted_weight(const InvertedConfiguration& ic, const VertexWeights& original);

// ---------------------------------------------------------------------------
// Refined observables of the uppermost path.

enum class HitStep { H, D };
enum class TopStep { V, D };

struct HitPosition {
    int L;
    HitStep last;
};
struct TopExit {
    int L;
    TopStep first;
};

/// Node sequence of the uppermost path (kissing nodes resolved by the
/// non-crossing rank rule).
std::vector<NodeRef> trace_uppermost(const Configuration& c);

/// Where the uppermost path first meets the column x = n, and the step type
/// just before (first boundary hit, even if vertical steps follow).
HitPosition hit_position(const Configuration& c);
/// Where the uppermost path leaves the row y = n, and the step type just after.
TopExit top_exit_position(const Configuration& c);

// ---------------------------------------------------------------------------
// Serialization: text format, one 0/1 row per lattice line, per edge family.

std::string to_text(const Configuration& c);
Configuration from_text(const std::string& text);
void save_config(const Configuration& c, const std::string& path);
Configuration load_config(const std::string& path);

}  // namespace tv
