#include "tv/lattice.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tv {

const char* to_string(BoundaryCondition bc) {
    switch (bc) {
        case BoundaryCondition::DWBC1: return "DWBC1";
        case BoundaryCondition::DWBC2: return "DWBC2";
        default: return "SIXV_DWBC";
    }
}

Configuration::Configuration(int n_, BoundaryCondition bc_) : n(n_), bc(bc_) {
    h.assign(static_cast<size_t>(n + 1) * n, 0);
    v.assign(static_cast<size_t>(n) * (n + 1), 0);
    d.assign(static_cast<size_t>(n + 1) * (n + 1), 0);
    apply_boundary();
}

std::optional<uint8_t> Configuration::boundary_h(int i, int) const {
    if (i == 0) return 1;
    if (i == n) return 0;
    return std::nullopt;
}

std::optional<uint8_t> Configuration::boundary_v(int, int j) const {
    if (j == 0) return 1;
    if (j == n) return 0;
    return std::nullopt;
}

std::optional<uint8_t> Configuration::boundary_d(int i, int j) const {
    if (!has_diagonals()) return 0;
    if ((i == 0 && j == 0) || (i == n && j == n)) return 0;  // not lattice edges
    const uint8_t corner = (bc == BoundaryCondition::DWBC1) ? 1 : 0;
    if (i == 0) return (j == n) ? corner : 1;  // left boundary, j=n = upper-left
    if (j == 0) return (i == n) ? corner : 1;  // bottom boundary, i=n = lower-right
    if (i == n || j == n) return 0;            // right / top boundaries
    return std::nullopt;
}

void Configuration::apply_boundary() {
    for (int i = 0; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (auto b = boundary_h(i, j)) H(i, j) = *b;
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (auto b = boundary_v(i, j)) V(i, j) = *b;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (auto b = boundary_d(i, j)) D(i, j) = *b;
}

std::string Configuration::key() const {
    std::string k;
    k.reserve(h.size() + v.size() + d.size() + 8);
    k.push_back(static_cast<char>('0' + static_cast<int>(bc)));
    k.push_back(static_cast<char>(n));
    for (uint8_t b : h) k.push_back(static_cast<char>('0' + b));
    for (uint8_t b : v) k.push_back(static_cast<char>('0' + b));
    for (uint8_t b : d) k.push_back(static_cast<char>('0' + b));
    return k;
}

InvalidConfiguration::InvalidConfiguration(NodeRef nd)
    : std::runtime_error("ice rule violated at node (" + std::to_string(nd.x) + "," +
                         std::to_string(nd.y) + ")"),
      node(nd) {}

namespace {

uint8_t in_bits_at(const Configuration& c, int x, int y) {
    uint8_t in = 0;
    if (c.V(x, y)) in |= pat::IN_N;
    if (c.D(x - 1, y)) in |= pat::IN_NW;
    if (c.H(x - 1, y)) in |= pat::IN_W;
    return in;
}

uint8_t out_bits_at(const Configuration& c, int x, int y) {
    uint8_t out = 0;
    if (c.H(x, y)) out |= pat::OUT_E;
    if (c.D(x, y - 1)) out |= pat::OUT_SE;
    if (c.V(x, y - 1)) out |= pat::OUT_S;
    return out;
}

}  // namespace

std::optional<NodeRef> find_violation(const Configuration& c) {
    // boundary slots must match the prescription exactly
    for (int i = 0; i <= c.n; ++i)
        for (int j = 1; j <= c.n; ++j)
            if (auto b = c.boundary_h(i, j); b && c.H(i, j) != *b) return NodeRef{i, j};
    for (int i = 1; i <= c.n; ++i)
        for (int j = 0; j <= c.n; ++j)
            if (auto b = c.boundary_v(i, j); b && c.V(i, j) != *b) return NodeRef{i, j};
    for (int i = 0; i <= c.n; ++i)
        for (int j = 0; j <= c.n; ++j)
            if (auto b = c.boundary_d(i, j); b && c.D(i, j) != *b) return NodeRef{i, j};
    for (int x = 1; x <= c.n; ++x)
        for (int y = 1; y <= c.n; ++y)
            if (std::popcount(in_bits_at(c, x, y)) != std::popcount(out_bits_at(c, x, y)))
                return NodeRef{x, y};
    return std::nullopt;
}

bool is_valid(const Configuration& c) { return !find_violation(c).has_value(); }

uint8_t classify_vertex(const Configuration& c, int x, int y) {
    const uint8_t in = in_bits_at(c, x, y), out = out_bits_at(c, x, y);
    if (std::popcount(in) != std::popcount(out)) throw InvalidConfiguration(NodeRef{x, y});
    return pat::make(in, out);
}

double config_weight(const Configuration& c, const PatternWeights& pw) {
    double w = 1.0;
    for (int x = 1; x <= c.n; ++x)
        for (int y = 1; y <= c.n; ++y) w *= pw(classify_vertex(c, x, y));
    return w;
}

Configuration extremal_diagonal(int n, BoundaryCondition bc) {
    Configuration c(n, bc);
    const int dcut = (bc == BoundaryCondition::DWBC1) ? n : n - 1;
    for (int i = 0; i <= n; ++i)
        for (int j = 1; j <= n; ++j) c.H(i, j) = (i + j <= n) ? 1 : 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= n; ++j) c.V(i, j) = (i + j <= n) ? 1 : 0;
    if (c.has_diagonals()) {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) c.D(i, j) = (i + j <= dcut) ? 1 : 0;
        c.D(0, 0) = 0;
        c.D(n, n) = 0;
    }
    c.apply_boundary();
    return c;
}

Configuration rotate180(const Configuration& c) {
    BoundaryCondition bc = c.bc;
    if (bc == BoundaryCondition::DWBC1) bc = BoundaryCondition::DWBC2;
    else if (bc == BoundaryCondition::DWBC2) bc = BoundaryCondition::DWBC1;
    Configuration r(c.n, bc);
    const int n = c.n;
    for (int i = 0; i <= n; ++i)
        for (int j = 1; j <= n; ++j) r.H(i, j) = c.H(n - i, n + 1 - j);
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.V(i, j) = c.V(n + 1 - i, n - j);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.D(i, j) = c.D(n - i, n - j);
    return r;
}

Configuration complement_edges(const Configuration& c) {
    Configuration r = c;
    for (auto& b : r.h) b ^= 1;
    for (auto& b : r.v) b ^= 1;
    if (c.has_diagonals()) {
        for (auto& b : r.d) b ^= 1;
        r.D(0, 0) = 0;
        r.D(c.n, c.n) = 0;
    }
    return r;
}

Configuration rotate180_complement(const Configuration& c) {
    return complement_edges(rotate180(c));
}

Configuration transpose_xy(const Configuration& c) {
    // reflect occupancies across the main diagonal and re-read them in the
    // standard path orientation; node patterns transform as N<->E, W<->S,
    // NW<->SE, i.e. the omega1<->omega6, omega2<->omega5 (mu -> -mu) swap
    Configuration r(c.n, c.bc);
    const int n = c.n;
    for (int a = 0; a <= n; ++a)
        for (int b = 1; b <= n; ++b) r.H(a, b) = c.V(b, a);
    for (int a = 1; a <= n; ++a)
        for (int b = 0; b <= n; ++b) r.V(a, b) = c.H(b, a);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            if (!((a == 0 && b == 0) || (a == n && b == n))) r.D(a, b) = c.D(b, a);
    return r;
}

uint8_t InvertedConfiguration::pattern(int x, int y) const {
    const Configuration& c = base;
    uint8_t in = 0, out = 0;
    if (c.D(x - 1, y)) in |= 1;       // W'
    if (c.H(x - 1, y)) in |= 2;       // SW'
    if (!c.V(x, y - 1)) in |= 4;      // S' (complemented vertical, travels up)
    if (c.D(x, y - 1)) out |= 1;      // E'
    if (c.H(x, y)) out |= 2;          // NE'
    if (!c.V(x, y)) out |= 4;         // N'
    return pat::make(in, out);
}

int InvertedConfiguration::weight_class(int x, int y) const {
    const uint8_t p = pattern(x, y);
    uint8_t in = pat::in_bits(p);
    // up-down relabelling: W'->W, SW'->NW, S'->N (bit reverse); outs map in place
    uint8_t flipped_in = static_cast<uint8_t>(((in & 1) << 2) | (in & 2) | ((in & 4) >> 2));
    return pattern_class(pat::make(flipped_in, pat::out_bits(p)));
}

InvertedConfiguration shear_image(const Configuration& c) {
    if (c.bc != BoundaryCondition::DWBC2)
        throw std::domain_error("shear_image requires a DWBC2 configuration");
    if (auto bad = find_violation(c)) throw InvalidConfiguration(*bad);
    return InvertedConfiguration{c.n, c};
}

double inverted_weight(const InvertedConfiguration& ic, const VertexWeights& original) {
    const VertexWeights wbar = inverted_weights(original);
    double w = 1.0;
    for (int x = 1; x <= ic.n; ++x)
        for (int y = 1; y <= ic.n; ++y) w *= wbar[ic.weight_class(x, y)];
    return w;
}

std::vector<NodeRef> trace_uppermost(const Configuration& c) {
    // starting in-direction bit at node (1, n)
    uint8_t in_dir = (c.bc == BoundaryCondition::DWBC1) ? pat::IN_NW : pat::IN_W;
    int x = 1, y = c.n;
    std::vector<NodeRef> nodes;
    while (x <= c.n && y >= 1) {
        nodes.push_back({x, y});
        const uint8_t ins = in_bits_at(c, x, y);
        const uint8_t outs = out_bits_at(c, x, y);
        if (!(ins & in_dir)) throw InvalidConfiguration(NodeRef{x, y});
        // non-crossing rank rule: k-th inbound (N < NW < W) continues as the
        // k-th outbound (E < SE < S)
        const int rank = std::popcount(static_cast<uint8_t>(ins & (in_dir - 1)));
        uint8_t out_dir = 0;
        int seen = 0;
        for (uint8_t bit = 1; bit <= 4; bit <<= 1) {
            if (outs & bit) {
                if (seen == rank) {
                    out_dir = bit;
                    break;
                }
                ++seen;
            }
        }
        if (out_dir == 0) throw InvalidConfiguration(NodeRef{x, y});
        if (out_dir == pat::OUT_E) {
            ++x;
            in_dir = pat::IN_W;
        } else if (out_dir == pat::OUT_SE) {
            ++x;
            --y;
            in_dir = pat::IN_NW;
        } else {
            --y;
            in_dir = pat::IN_N;
        }
    }
    return nodes;
}

HitPosition hit_position(const Configuration& c) {
    uint8_t in_dir = (c.bc == BoundaryCondition::DWBC1) ? pat::IN_NW : pat::IN_W;
    int x = 1, y = c.n;
    while (x <= c.n && y >= 1) {
        if (x == c.n)
            return HitPosition{y, in_dir == pat::IN_NW ? HitStep::D : HitStep::H};
        const uint8_t ins = in_bits_at(c, x, y);
        const uint8_t outs = out_bits_at(c, x, y);
        if (!(ins & in_dir)) throw InvalidConfiguration(NodeRef{x, y});
        const int rank = std::popcount(static_cast<uint8_t>(ins & (in_dir - 1)));
        uint8_t out_dir = 0;
        int seen = 0;
        for (uint8_t bit = 1; bit <= 4; bit <<= 1)
            if (outs & bit) {
                if (seen++ == rank) {
                    out_dir = bit;
                    break;
                }
            }
        if (out_dir == pat::OUT_E) {
            ++x;
            in_dir = pat::IN_W;
        } else if (out_dir == pat::OUT_SE) {
            ++x;
            --y;
            in_dir = pat::IN_NW;
        } else {
            --y;
            in_dir = pat::IN_N;
        }
    }
    throw std::logic_error("uppermost path never reached the right boundary column");
}

TopExit top_exit_position(const Configuration& c) {
    // the uppermost path walks the top row until its first non-E step
    uint8_t in_dir = (c.bc == BoundaryCondition::DWBC1) ? pat::IN_NW : pat::IN_W;
    int x = 1;
    const int y = c.n;
    while (x <= c.n) {
        const uint8_t ins = in_bits_at(c, x, y);
        const uint8_t outs = out_bits_at(c, x, y);
        if (!(ins & in_dir)) throw InvalidConfiguration(NodeRef{x, y});
        const int rank = std::popcount(static_cast<uint8_t>(ins & (in_dir - 1)));
        uint8_t out_dir = 0;
        int seen = 0;
        for (uint8_t bit = 1; bit <= 4; bit <<= 1)
            if (outs & bit) {
                if (seen++ == rank) {
                    out_dir = bit;
                    break;
                }
            }
        if (out_dir == pat::OUT_SE) return TopExit{x, TopStep::D};
        if (out_dir == pat::OUT_S) return TopExit{x, TopStep::V};
        ++x;
        in_dir = pat::IN_W;
    }
    throw std::logic_error("uppermost path never left the top row");
}

std::string to_text(const Configuration& c) {
    std::ostringstream os;
    os << "20v v1\nn " << c.n << "\nbc " << to_string(c.bc) << "\n";
    os << "H\n";
    for (int j = c.n; j >= 1; --j) {
        for (int i = 0; i <= c.n; ++i) os << int(c.H(i, j));
        os << "\n";
    }
    os << "V\n";
    for (int j = c.n; j >= 0; --j) {
        for (int i = 1; i <= c.n; ++i) os << int(c.V(i, j));
        os << "\n";
    }
    os << "D\n";
    for (int j = c.n; j >= 0; --j) {
        for (int i = 0; i <= c.n; ++i) os << int(c.D(i, j));
        os << "\n";
    }
    return os.str();
}

Configuration from_text(const std::string& text) {
    std::istringstream is(text);
    std::string magic, ver, kw, bcs;
    int n = 0;
    is >> magic >> ver >> kw >> n;
    if (magic != "20v" || kw != "n" || n <= 0)
        throw std::runtime_error("bad configuration header");
    is >> kw >> bcs;
    BoundaryCondition bc;
    if (bcs == "DWBC1") bc = BoundaryCondition::DWBC1;
    else if (bcs == "DWBC2") bc = BoundaryCondition::DWBC2;
    else if (bcs == "SIXV_DWBC") bc = BoundaryCondition::SIXV_DWBC;
    else throw std::runtime_error("bad boundary condition: " + bcs);

    Configuration c(n, bc);
    auto read_block = [&](const std::string& name, auto setter, int jmax, int jmin, int imin,
                          int imax) {
        std::string tag, row;
        is >> tag;
        if (tag != name) throw std::runtime_error("expected block " + name);
        for (int j = jmax; j >= jmin; --j) {
            is >> row;
            if (static_cast<int>(row.size()) != imax - imin + 1)
                throw std::runtime_error("bad row length in block " + name);
            for (int i = imin; i <= imax; ++i) setter(i, j, row[i - imin] == '1');
        }
    };
    read_block("H", [&](int i, int j, bool b) { c.H(i, j) = b; }, n, 1, 0, n);
    read_block("V", [&](int i, int j, bool b) { c.V(i, j) = b; }, n, 0, 1, n);
    read_block("D", [&](int i, int j, bool b) { c.D(i, j) = b; }, n, 0, 0, n);
    return c;
}

void save_config(const Configuration& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << to_text(c);
}

Configuration load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_text(ss.str());
}

}  // namespace tv
