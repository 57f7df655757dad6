#include "satgame/strategies.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <random>
#include <tuple>
#include <utility>

#include "satgame/s4_abstract.hpp"

namespace satgame {

namespace {

std::vector<std::uint32_t> comp_masks(const Graph& g) {
    std::vector<std::uint32_t> out;
    for (const auto& comp : components(g)) {
        std::uint32_t m = 0;
        for (int v : comp) m |= 1u << v;
        out.push_back(m);
    }
    return out;
}

int mask_size(std::uint32_t m) { return std::popcount(m); }

std::vector<int> mask_vertices(std::uint32_t m) {
    std::vector<int> vs;
    for (int v = 0; v < Graph::max_vertices; ++v)
        if ((m >> v) & 1u) vs.push_back(v);
    return vs;
}

int comp_edge_count(const Graph& g, std::uint32_t m) {
    int twice = 0;
    for (int v : mask_vertices(m)) twice += std::popcount(g.row(v) & m);
    return twice / 2;
}

std::vector<int> isolated_of(const Graph& g) {
    std::vector<int> vs;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0) vs.push_back(v);
    return vs;
}

std::vector<int> comp_leaves(const Graph& g, std::uint32_t m) {
    std::vector<int> vs;
    for (int v : mask_vertices(m))
        if (g.degree(v) == 1) vs.push_back(v);
    return vs;
}

bool is_path_shape(ComponentShape s) {
    return s == ComponentShape::p3 || s == ComponentShape::p4 ||
           s == ComponentShape::p5_plus;
}

/// End-to-end edge turning an open path component into a cycle.
Move path_close_move(const Graph& g, std::uint32_t comp) {
    auto ends = comp_leaves(g, comp);
    if (ends.size() != 2) throw EngineError("path_close_move: not an open path");
    return Move::of(ends[0], ends[1]);
}

/// True when the claimed edge m merged two components (equivalently: m is a
/// bridge of the current graph).
bool move_joined_components(const Graph& g, Move m) {
    Graph h(g.vertex_count());
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if (g.has_edge(u, v) && !(u == m.u && v == m.v))
                h.add_edge_in_place(u, v);
    return (component_mask(h, m.u) & (1u << m.v)) == 0;
}

/// Hamiltonian cycle over one component, bitmask DP. Components above 12
/// vertices are treated as having none (never reached by the users here).
bool comp_has_ham_cycle(const Graph& g, std::uint32_t comp) {
    auto vs = mask_vertices(comp);
    int k = static_cast<int>(vs.size());
    if (k < 3 || k > 12) return false;
    std::array<std::uint16_t, 12> adj{};
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (g.has_edge(vs[i], vs[j])) {
                adj[i] |= std::uint16_t(1u << j);
                adj[j] |= std::uint16_t(1u << i);
            }
    std::vector<std::uint16_t> ends(std::size_t(1) << k, 0);
    ends[1] = 1;  // path from local vertex 0
    for (std::uint32_t mask = 1; mask < ends.size(); ++mask) {
        std::uint16_t e = ends[mask];
        if (!e) continue;
        for (int last = 0; last < k; ++last) {
            if (!((e >> last) & 1u)) continue;
            std::uint16_t nxt = adj[last] & ~mask;
            while (nxt) {
                int w = std::countr_zero(nxt);
                nxt &= nxt - 1;
                ends[mask | (1u << w)] |= std::uint16_t(1u << w);
            }
        }
    }
    return (ends.back() & adj[0]) != 0;
}

/// Components on <= 2 vertices count as hamiltonian (nothing to repair).
bool comp_hamiltonian(const Graph& g, std::uint32_t comp) {
    return mask_size(comp) <= 2 || comp_has_ham_cycle(g, comp);
}

std::vector<Move> legal_moves_inside(const GameSpec& spec,
                                     const GameState& state,
                                     std::uint32_t comp) {
    std::vector<Move> out;
    auto vs = mask_vertices(comp);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (state.graph.has_edge(vs[i], vs[j])) continue;
            Move m = Move::of(vs[i], vs[j]);
            if (is_move_legal(spec, state, m)) out.push_back(m);
        }
    return out;
}

/// Legal single edges that give the component a hamiltonian cycle.
std::vector<Move> ham_completing_moves(const GameSpec& spec,
                                       const GameState& state,
                                       std::uint32_t comp) {
    std::vector<Move> out;
    for (Move m : legal_moves_inside(spec, state, comp))
        if (comp_has_ham_cycle(add_edge(state.graph, m.u, m.v), comp))
            out.push_back(m);
    return out;
}

std::vector<Move> cross_moves(const GameSpec& spec, const GameState& state,
                              std::span<const int> a, std::span<const int> b) {
    std::vector<Move> out;
    for (int u : a)
        for (int v : b) {
            Move m = Move::of(u, v);
            if (is_move_legal(spec, state, m)) out.push_back(m);
        }
    return out;
}

/// A cross: center with two pendant leaves and one arm of length two.
struct Cross5 {
    int center = -1;
    int arm_mid = -1;
    int arm_end = -1;
    std::array<int, 2> leaves{-1, -1};
};

std::optional<Cross5> match_cross5(const Graph& g, std::uint32_t comp) {
    if (mask_size(comp) != 5 || comp_edge_count(g, comp) != 4)
        return std::nullopt;
    for (int c : mask_vertices(comp)) {
        if (g.degree(c) != 3) continue;
        Cross5 x;
        x.center = c;
        int nleaf = 0;
        for (int w : mask_vertices(g.row(c))) {
            if (g.degree(w) == 1 && nleaf < 2)
                x.leaves[nleaf++] = w;
            else if (g.degree(w) == 2)
                x.arm_mid = w;
            else
                return std::nullopt;
        }
        if (nleaf != 2 || x.arm_mid < 0) return std::nullopt;
        for (int w : mask_vertices(g.row(x.arm_mid)))
            if (w != c) x.arm_end = w;
        if (x.arm_end < 0 || g.degree(x.arm_end) != 1) return std::nullopt;
        return x;
    }
    return std::nullopt;
}

/// Caterpillar on six vertices: center with one pendant leaf and two arms of
/// length two. The repair edge connects the two arm middles.
std::optional<Move> match_caterpillar6(const Graph& g, std::uint32_t comp) {
    if (mask_size(comp) != 6 || comp_edge_count(g, comp) != 5)
        return std::nullopt;
    for (int c : mask_vertices(comp)) {
        if (g.degree(c) != 3) continue;
        int leaf = -1;
        std::vector<int> mids;
        for (int w : mask_vertices(g.row(c))) {
            if (g.degree(w) == 1)
                leaf = w;
            else if (g.degree(w) == 2)
                mids.push_back(w);
        }
        if (leaf < 0 || mids.size() != 2) return std::nullopt;
        for (int m : mids) {
            int tip = -1;
            for (int w : mask_vertices(g.row(m)))
                if (w != c) tip = w;
            if (tip < 0 || g.degree(tip) != 1) return std::nullopt;
        }
        return Move::of(mids[0], mids[1]);
    }
    return std::nullopt;
}

/// Triangle with a degree-three neighbor v carrying two pendant leaves; the
/// repair edge connects v to a triangle vertex it does not touch yet.
std::optional<Move> match_triangle6(const Graph& g, std::uint32_t comp) {
    if (mask_size(comp) != 6 || comp_edge_count(g, comp) != 6)
        return std::nullopt;
    for (int v : mask_vertices(comp)) {
        if (g.degree(v) != 3) continue;
        int anchor = -1, nleaf = 0;
        for (int w : mask_vertices(g.row(v))) {
            if (g.degree(w) == 1)
                ++nleaf;
            else
                anchor = w;
        }
        if (nleaf != 2 || anchor < 0 || g.degree(anchor) != 3) continue;
        std::vector<int> tri;
        for (int w : mask_vertices(g.row(anchor)))
            if (w != v) tri.push_back(w);
        if (tri.size() != 2 || !g.has_edge(tri[0], tri[1])) continue;
        if (g.degree(tri[0]) != 2 || g.degree(tri[1]) != 2) continue;
        return Move::of(v, std::min(tri[0], tri[1]));
    }
    return std::nullopt;
}

bool forbids_s4(const GameSpec& spec) {
    return !spec.forbidden.all_cycles &&
           spec.forbidden.single == PatternId::star(4);
}

bool forbids_path(const GameSpec& spec, int s) {
    return !spec.forbidden.all_cycles &&
           spec.forbidden.single == PatternId::path(s);
}

bool scores_path(const GameSpec& spec, int s) {
    return spec.score == PatternId::path(s);
}

/// Best move under the counter abstraction of the degree-capped game:
/// every successor is lifted to counters and valued exactly; ties fall back
/// to the least canonical child.
Move abstract_optimal_move(const GameSpec& spec, const GameState& state) {
    static thread_local AbstractSolver p3_solver{PatternId::path(3)};
    static thread_local AbstractSolver p4_solver{PatternId::path(4)};
    AbstractSolver& solver = spec.score.size == 3 ? p3_solver : p4_solver;
    const bool maximizing = state.to_move == Player::max;
    bool found = false;
    long long best = 0;
    std::vector<Move> best_moves;
    for (Move m : legal_moves(spec, state)) {
        GameState child = apply_move(spec, state, m);
        auto lift = abstract_from_graph(child.graph, spec.score, child.to_move);
        long long value =
            spec.n + lift.banked_deficit + solver.deficit(lift.state);
        if (!found || (maximizing ? value > best : value < best)) {
            best = value;
            best_moves.clear();
            found = true;
        }
        if (value == best) best_moves.push_back(m);
    }
    if (!found) throw EngineError("abstract_optimal_move: no legal moves");
    return canonical_least_among(state, best_moves);
}

// ---------------------------------------------------------------------------
// Baselines

struct FirstLegal final : Policy {
    std::string id() const override { return "first_legal"; }
    std::string describe() const override {
        return "always the lexicographically first legal edge";
    }
    bool applicable(const GameSpec&) const override { return true; }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        auto moves = legal_moves(spec, state);
        if (moves.empty()) throw EngineError("first_legal: no legal moves");
        return moves.front();
    }
};

struct UniformRandom final : Policy {
    std::uint64_t seed = 0;

    std::string id() const override { return "uniform_random"; }
    std::string describe() const override {
        return "uniform choice among legal edges, seed " + std::to_string(seed);
    }
    bool applicable(const GameSpec&) const override { return true; }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        auto moves = legal_moves(spec, state);
        if (moves.empty()) throw EngineError("uniform_random: no legal moves");
        std::mt19937_64 rng(seed ^
                            (0x9e3779b97f4a7c15ull * (history.size() + 1)));
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        return moves[pick(rng)];
    }
};

// ---------------------------------------------------------------------------
// Degree-capped games (forbidding S4): paths and cycles only.

/// Max grows one long path while untouched vertices are plentiful, then
/// finishes with exact counter-abstraction play.
struct MaxPathExtension final : Policy {
    std::string id() const override { return "max_path_extension"; }
    std::string describe() const override {
        return "grow a single path, switch to exact counter play for the "
               "endgame";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_s4(spec) && (scores_path(spec, 3) || scores_path(spec, 4));
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        const Graph& g = state.graph;
        auto iso = isolated_of(g);
        if (iso.size() < 7) return abstract_optimal_move(spec, state);
        std::vector<std::uint32_t> paths;
        for (auto m : comp_masks(g)) {
            auto s = classify_component(g, m);
            if (s == ComponentShape::k2 || is_path_shape(s)) paths.push_back(m);
        }
        if (paths.empty()) return Move::of(iso[0], iso[1]);
        if (paths.size() == 1) {
            auto ends = comp_leaves(g, paths[0]);
            std::array<int, 1> v{iso[0]};
            auto cand = cross_moves(spec, state, ends, v);
            return canonical_least_among(state, cand);
        }
        std::vector<Move> cand;
        for (std::size_t i = 0; i < paths.size(); ++i)
            for (std::size_t j = i + 1; j < paths.size(); ++j) {
                auto more = cross_moves(spec, state, comp_leaves(g, paths[i]),
                                        comp_leaves(g, paths[j]));
                cand.insert(cand.end(), more.begin(), more.end());
            }
        return canonical_least_among(state, cand);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

/// Mini under P3 scoring with matching parity: keep shrinking the live part
/// of the board by closing paths into cycles.
struct MiniReduction345 final : Policy {
    std::string id() const override { return "mini_reduction_345"; }
    std::string describe() const override {
        return "close every path that reaches four vertices; groom shorter "
               "pieces toward closable lengths";
    }
    bool applicable(const GameSpec& spec) const override {
        if (!forbids_s4(spec) || !scores_path(spec, 3) || spec.n < 6)
            return false;
        return (spec.n % 2 == 0) == (spec.starter == Player::mini);
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        const Graph& g = state.graph;
        auto iso = isolated_of(g);
        std::vector<std::uint32_t> p3s, k2s;
        std::uint32_t longest = 0;
        for (auto m : comp_masks(g)) {
            auto s = classify_component(g, m);
            if (s == ComponentShape::k2)
                k2s.push_back(m);
            else if (s == ComponentShape::p3)
                p3s.push_back(m);
            else if (is_path_shape(s) && mask_size(m) >= 4 &&
                     (longest == 0 || mask_size(m) > mask_size(longest)))
                longest = m;
        }
        if (longest != 0) return path_close_move(g, longest);
        if (!p3s.empty()) {
            if (p3s.size() >= 2 || !k2s.empty())
                return path_close_move(g, p3s[0]);
            if (!iso.empty()) {
                std::array<int, 1> v{iso[0]};
                auto cand =
                    cross_moves(spec, state, comp_leaves(g, p3s[0]), v);
                return canonical_least_among(state, cand);
            }
            return path_close_move(g, p3s[0]);
        }
        if (k2s.size() >= 2) {
            auto cand = cross_moves(spec, state, mask_vertices(k2s[0]),
                                    mask_vertices(k2s[1]));
            return canonical_least_among(state, cand);
        }
        if (k2s.size() == 1 && !iso.empty()) {
            std::array<int, 1> v{iso[0]};
            auto cand = cross_moves(spec, state, mask_vertices(k2s[0]), v);
            return canonical_least_among(state, cand);
        }
        if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

/// Mini under P4 scoring: punish every open path immediately, shortest first
/// (a closed triangle scores nothing).
struct MiniMatchingExtension final : Policy {
    std::string id() const override { return "mini_matching_extension"; }
    std::string describe() const override {
        return "close each open path as soon as it appears, triangles first";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_s4(spec) && scores_path(spec, 4);
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        const Graph& g = state.graph;
        std::uint32_t best = 0;
        int best_size = 0;
        for (auto m : comp_masks(g)) {
            if (!is_path_shape(classify_component(g, m))) continue;
            int sz = mask_size(m);
            // prefer the shortest open path (P3 before P4 before longer)
            if (best == 0 || sz < best_size) {
                best = m;
                best_size = sz;
            }
        }
        if (best != 0) return path_close_move(g, best);
        auto iso = isolated_of(g);
        if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

/// Mini under P5 scoring: cap every path at a cycle before it reaches five
/// vertices; keep spare material in closable shapes.
struct MiniP5S4 final : Policy {
    std::string id() const override { return "mini_p5s4"; }
    std::string describe() const override {
        return "close the longest open path; otherwise stock small paths";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_s4(spec) && scores_path(spec, 5);
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        const Graph& g = state.graph;
        std::uint32_t longest = 0;
        std::vector<std::uint32_t> k2s;
        for (auto m : comp_masks(g)) {
            auto s = classify_component(g, m);
            if (s == ComponentShape::k2)
                k2s.push_back(m);
            else if (is_path_shape(s) &&
                     (longest == 0 || mask_size(m) > mask_size(longest)))
                longest = m;
        }
        if (longest != 0) return path_close_move(g, longest);
        auto iso = isolated_of(g);
        if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
        if (!k2s.empty() && !iso.empty()) {
            std::array<int, 1> v{iso[0]};
            auto cand = cross_moves(spec, state, mask_vertices(k2s[0]), v);
            return canonical_least_among(state, cand);
        }
        if (k2s.size() >= 2) {
            auto cand = cross_moves(spec, state, mask_vertices(k2s[0]),
                                    mask_vertices(k2s[1]));
            return canonical_least_among(state, cand);
        }
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

/// Max moving second under P5 scoring, for n = 0,1 (mod 4): mirror fresh
/// edges, stretch any path the opponent touches, and close it once it spans
/// five vertices.
struct MaxP5S4Second final : Policy {
    std::string id() const override { return "max_p5s4_second"; }
    std::string describe() const override {
        return "mirror edge claims, stretch touched paths, close at five";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_s4(spec) && scores_path(spec, 5) &&
               spec.starter == Player::mini && spec.n >= 8 &&
               (spec.n % 4 == 0 || spec.n % 4 == 1);
    }
    bool uses_last_move() const override { return true; }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        const Graph& g = state.graph;
        bool short_cycle = false;
        std::uint32_t longest = 0;
        for (auto m : comp_masks(g)) {
            auto s = classify_component(g, m);
            if (s == ComponentShape::c5 || s == ComponentShape::cycle6_plus)
                return canonical_least_move(spec, state);  // goal on the board
            if (s == ComponentShape::c3 || s == ComponentShape::c4)
                short_cycle = true;
            if (is_path_shape(s) && mask_size(m) >= 5 &&
                (longest == 0 || mask_size(m) > mask_size(longest)))
                longest = m;
        }
        if (short_cycle)
            throw StrategyGap(
                "max_p5s4_second: a short cycle was closed; the mirroring "
                "analysis does not cover this line");
        if (longest != 0) return path_close_move(g, longest);
        if (history.empty())
            throw StrategyGap("max_p5s4_second: meant to move second");
        Move last = history.back();
        std::uint32_t m = component_mask(g, last.u);
        auto shape = classify_component(g, m);
        auto iso = isolated_of(g);
        if (shape == ComponentShape::k2) {
            if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
            if (iso.size() == 1) {
                std::array<int, 1> v{iso[0]};
                auto cand = cross_moves(spec, state, mask_vertices(m), v);
                return canonical_least_among(state, cand);
            }
            return canonical_least_move(spec, state);
        }
        if (is_path_shape(shape)) {
            auto ends = comp_leaves(g, m);
            for (auto other : comp_masks(g)) {
                if (other == m) continue;
                if (classify_component(g, other) != ComponentShape::k2)
                    continue;
                auto cand =
                    cross_moves(spec, state, ends, mask_vertices(other));
                if (!cand.empty()) return canonical_least_among(state, cand);
            }
            if (!iso.empty()) {
                std::array<int, 1> v{iso[0]};
                auto cand = cross_moves(spec, state, ends, v);
                return canonical_least_among(state, cand);
            }
            for (auto other : comp_masks(g)) {
                if (other == m) continue;
                if (!is_path_shape(classify_component(g, other))) continue;
                auto cand =
                    cross_moves(spec, state, ends, comp_leaves(g, other));
                if (!cand.empty()) return canonical_least_among(state, cand);
            }
            throw StrategyGap(
                "max_p5s4_second: no material left to stretch the path");
        }
        throw StrategyGap(
            "max_p5s4_second: unrecognized component after opponent move");
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

/// Mini under P6 scoring: everything closable gets closed at five vertices
/// or fewer; pairs of stray edges merge so they close later as one.
struct MiniP6S4 final : Policy {
    std::string id() const override { return "mini_p6s4"; }
    std::string describe() const override {
        return "close paths at five vertices or fewer, merge stray edges";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_s4(spec) && scores_path(spec, 6);
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        const Graph& g = state.graph;
        std::uint32_t best_short = 0, best_long = 0;
        std::vector<std::uint32_t> k2s;
        for (auto m : comp_masks(g)) {
            auto s = classify_component(g, m);
            if (s == ComponentShape::k2) {
                k2s.push_back(m);
                continue;
            }
            if (!is_path_shape(s)) continue;
            int sz = mask_size(m);
            if (sz <= 5) {
                if (best_short == 0 || sz > mask_size(best_short))
                    best_short = m;
            } else if (best_long == 0 || sz < mask_size(best_long)) {
                best_long = m;
            }
        }
        if (best_short != 0) return path_close_move(g, best_short);
        if (best_long != 0) return path_close_move(g, best_long);
        auto iso = isolated_of(g);
        if (k2s.size() >= 2) {
            auto cand = cross_moves(spec, state, mask_vertices(k2s[0]),
                                    mask_vertices(k2s[1]));
            return canonical_least_among(state, cand);
        }
        if (k2s.size() == 1 && !iso.empty()) {
            std::array<int, 1> v{iso[0]};
            auto cand = cross_moves(spec, state, mask_vertices(k2s[0]), v);
            return canonical_least_among(state, cand);
        }
        if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

// ---------------------------------------------------------------------------
// Cycle-free games: every final graph is a spanning tree.

/// Claims one edge per turn extending an embedded copy of a target tree by
/// its next vertex (breadth-first from vertex 0); the attached vertex is
/// always the least one outside the embedding's component, so each claim is
/// a legal cross-component edge. The embedding lives in concrete labels, so
/// this policy opts out of best-response memoization.
struct TreeBuilder final : Policy {
    Graph target;
    std::vector<int> order;        // embedding order of target vertices
    std::vector<int> parent;       // target-tree parent per target vertex

    explicit TreeBuilder(Graph t) : target(std::move(t)) {
        int k = target.vertex_count();
        if (k < 2) throw EngineError("treebuilder: target too small");
        if (!is_acyclic(target)) throw EngineError("treebuilder: target has a cycle");
        if (target.edge_count() != k - 1)
            throw EngineError("treebuilder: target is disconnected");
        parent.assign(k, -1);
        std::vector<bool> seen(k, false);
        order.push_back(0);
        seen[0] = true;
        for (std::size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            for (int w = 0; w < k; ++w)
                if (target.has_edge(v, w) && !seen[w]) {
                    seen[w] = true;
                    parent[w] = v;
                    order.push_back(w);
                }
        }
        if (static_cast<int>(order.size()) != k)
            throw EngineError("treebuilder: target is disconnected");
    }

    std::string id() const override { return "treebuilder"; }
    std::string describe() const override {
        return "embed a fixed target tree on " +
               std::to_string(target.vertex_count()) +
               " vertices, one leaf per turn";
    }
    bool applicable(const GameSpec& spec) const override {
        return spec.forbidden.all_cycles &&
               target.vertex_count() <= spec.n / 2 + 1;
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        const int t = target.vertex_count();
        const std::size_t h = history.size();
        std::vector<int> image(t, -1);
        int embedded = 0;
        for (std::size_t i = 0; i < h; ++i) {
            Move m = history[i];
            const bool mine = ((h - i) % 2) == 0;
            if (!mine) {
                if (i == 0) {  // adopt the opener's first edge as the root edge
                    image[order[0]] = std::min(m.u, m.v);
                    image[order[1]] = std::max(m.u, m.v);
                    embedded = 2;
                }
                continue;
            }
            if (embedded == 0) {
                image[order[0]] = std::min(m.u, m.v);
                image[order[1]] = std::max(m.u, m.v);
                embedded = 2;
            } else if (embedded < t) {
                int at = image[parent[order[embedded]]];
                int fresh;
                if (m.u == at)
                    fresh = m.v;
                else if (m.v == at)
                    fresh = m.u;
                else
                    throw StrategyGap(
                        "treebuilder: history does not follow this policy");
                image[order[embedded]] = fresh;
                ++embedded;
            }
        }
        if (embedded == 0) return Move::of(0, 1);
        if (embedded < t) {
            int at = image[parent[order[embedded]]];
            std::uint32_t comp = component_mask(state.graph, at);
            for (int v = 0; v < spec.n; ++v)
                if (!((comp >> v) & 1u)) return Move::of(v, at);
        }
        return canonical_least_move(spec, state);
    }
};

/// Mini in the cycle-free game: force internal vertices. Book play for the
/// first two of her turns, then each claim connects leaves of two different
/// components (or a leaf to any other component), minting non-leaves.
struct MiniNonleafMaker final : Policy {
    std::string id() const override { return "mini_nonleaf_maker"; }
    std::string describe() const override {
        return "connect leaves across components so internal vertices pile up";
    }
    bool applicable(const GameSpec& spec) const override {
        return spec.forbidden.all_cycles;
    }
    bool uses_last_move() const override { return true; }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        const Graph& g = state.graph;
        const std::size_t h = history.size();
        if (h == 0) return Move::of(0, 1);
        if (h == 1) {
            Move e1 = history[0];
            std::vector<int> outside;
            for (int v = 0; v < spec.n && outside.size() < 2; ++v)
                if (v != e1.u && v != e1.v) outside.push_back(v);
            if (outside.size() == 2) return Move::of(outside[0], outside[1]);
            return canonical_least_move(spec, state);
        }
        auto masks = comp_masks(g);
        auto iso = isolated_of(g);
        if (h == 2 || h == 3) {
            std::uint32_t p3 = 0, p4 = 0;
            std::vector<std::uint32_t> k2s;
            for (auto m : masks) {
                auto s = classify_component(g, m);
                if (s == ComponentShape::k2) k2s.push_back(m);
                if (s == ComponentShape::p3) p3 = m;
                if (s == ComponentShape::p4) p4 = m;
            }
            if (p4 != 0 && !iso.empty()) {  // stretch to five vertices
                std::array<int, 1> v{iso[0]};
                auto cand = cross_moves(spec, state, comp_leaves(g, p4), v);
                return canonical_least_among(state, cand);
            }
            if (p3 != 0 && !k2s.empty()) {  // leaf to leaf: a five-vertex path
                auto cand = cross_moves(spec, state, comp_leaves(g, p3),
                                        mask_vertices(k2s[0]));
                return canonical_least_among(state, cand);
            }
            if (p3 != 0 && !iso.empty()) {
                std::array<int, 1> v{iso[0]};
                auto cand = cross_moves(spec, state, comp_leaves(g, p3), v);
                return canonical_least_among(state, cand);
            }
            if (k2s.size() >= 2) {
                // join the two stale edges, leaving the opponent's fresh one
                Move last = history.back();
                std::vector<std::uint32_t> stale;
                for (auto m : k2s)
                    if (!((m >> last.u) & 1u)) stale.push_back(m);
                if (stale.size() < 2) stale = k2s;
                auto cand = cross_moves(spec, state, mask_vertices(stale[0]),
                                        mask_vertices(stale[1]));
                return canonical_least_among(state, cand);
            }
        }
        // generic: leaf-to-leaf across components, else leaf to any other
        // component, else open a fresh edge
        std::vector<Move> leaf_leaf;
        for (std::size_t i = 0; i < masks.size(); ++i)
            for (std::size_t j = i + 1; j < masks.size(); ++j) {
                auto more = cross_moves(spec, state, comp_leaves(g, masks[i]),
                                        comp_leaves(g, masks[j]));
                leaf_leaf.insert(leaf_leaf.end(), more.begin(), more.end());
            }
        if (!leaf_leaf.empty()) return canonical_least_among(state, leaf_leaf);
        std::vector<Move> leaf_any;
        for (auto m : masks) {
            auto leaves = comp_leaves(g, m);
            if (leaves.empty()) continue;
            for (int v = 0; v < spec.n; ++v)
                if (!((m >> v) & 1u)) {
                    for (int u : leaves) {
                        Move mv = Move::of(u, v);
                        if (is_move_legal(spec, state, mv))
                            leaf_any.push_back(mv);
                    }
                }
        }
        if (!leaf_any.empty()) return canonical_least_among(state, leaf_any);
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

/// Thin wrappers: tree building with the two targets the score bounds use.
struct MaxDoublestar final : Policy {
    std::string id() const override { return "max_doublestar"; }
    std::string describe() const override {
        return "build a balanced double star on floor(n/2)+1 vertices";
    }
    bool applicable(const GameSpec& spec) const override {
        return spec.forbidden.all_cycles && spec.n >= 6;
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        TreeBuilder inner(balanced_double_star_target(spec.n));
        return inner.select_move(spec, state, history);
    }
};

struct MiniPathbuilder final : Policy {
    std::string id() const override { return "mini_pathbuilder"; }
    std::string describe() const override {
        return "build a path on floor(n/2)+1 vertices";
    }
    bool applicable(const GameSpec& spec) const override {
        return spec.forbidden.all_cycles && spec.n >= 6;
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        TreeBuilder inner(path_target(spec.n));
        return inner.select_move(spec, state, history);
    }
};

// ---------------------------------------------------------------------------
// Path-5-forbidden games.

/// Shared stage logic: these strategies run a claiming stage while untouched
/// vertices remain, and the switch to free play is sticky once entered.
bool no_isolated(const Graph& g) { return isolated_of(g).empty(); }

/// Whether move index `i` belongs to the given seat (the starter moves at
/// even indices).  Replays must use this, not the current parity: stage
/// fingerprints are evaluated on either side's turn.
bool seat_plays_index(const GameSpec& spec, Player seat, std::size_t i) {
    return ((i % 2 == 0) ? spec.starter : other(spec.starter)) == seat;
}

/// Max scoring triangles with P5 forbidden: pair up fresh edges, convert
/// every opponent touch into a triangle or a dense four-vertex component.
struct MaxK3P5 final : Policy {
    std::string id() const override { return "max_k3p5"; }
    std::string describe() const override {
        return "answer in-component, densify four-vertex pieces, triangle "
               "every path";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_path(spec, 5) && spec.score == PatternId::triangle();
    }
    bool uses_last_move() const override { return true; }

    /// Whether a stage-1 turn taken in `before` (opponent just played `opp`)
    /// exits stage 1, either because no untouched vertex is left or because
    /// the rule that fires consumes the last one.
    static bool leaves_stage1(const GameSpec& spec, const Graph& before,
                              const std::optional<Move>& opp) {
        if (no_isolated(before)) return true;
        if (!opp) return false;  // opening claim
        std::uint32_t c = component_mask(before, opp->u);
        auto shape = classify_component(before, c);
        auto iso = isolated_of(before);
        if (shape == ComponentShape::k2) return iso.size() < 2;
        if (shape == ComponentShape::p3) return false;
        if (mask_size(c) == 4) {
            if (shape == ComponentShape::p4) return false;
            GameState st{before, Player::max};
            if (!legal_moves_inside(spec, st, c).empty()) return false;
            if (iso.size() >= 2) return false;
            return true;  // single vertex gets consumed, or free play begins
        }
        throw StrategyGap(
            "max_k3p5: unrecognized component after opponent move (replay): "
            "shape " + format_shape(shape) + " in\n" +
            format_graph_text(before));
    }

    bool stage2_reached(const GameSpec& spec,
                        std::span<const Move> history) const {
        const std::size_t h = history.size();
        Graph g(spec.n);
        bool sticky = false;
        for (std::size_t i = 0; i < h; ++i) {
            const bool mine = seat_plays_index(spec, Player::max, i);
            if (mine && !sticky)
                sticky = leaves_stage1(
                    spec, g,
                    i > 0 ? std::optional<Move>(history[i - 1]) : std::nullopt);
            g.add_edge_in_place(history[i].u, history[i].v);
        }
        return sticky;
    }

    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        if (stage2_reached(spec, history))
            return canonical_least_move(spec, state);
        const Graph& g = state.graph;
        auto iso = isolated_of(g);
        if (iso.empty()) return canonical_least_move(spec, state);
        if (history.empty()) return Move::of(iso[0], iso[1]);
        std::uint32_t c = component_mask(g, history.back().u);
        auto shape = classify_component(g, c);
        if (shape == ComponentShape::k2) {
            if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
            std::array<int, 1> v{iso[0]};
            auto cand = cross_moves(spec, state, mask_vertices(c), v);
            return canonical_least_among(state, cand);
        }
        if (shape == ComponentShape::p3 || shape == ComponentShape::p4)
            return path_close_move(g, c);
        if (mask_size(c) == 4) {
            auto inside = legal_moves_inside(spec, state, c);
            if (!inside.empty()) return canonical_least_among(state, inside);
            if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
            // one untouched vertex left: attach it to a stray edge or triangle
            for (auto m : comp_masks(g)) {
                if (classify_component(g, m) != ComponentShape::k2) continue;
                std::array<int, 1> v{iso[0]};
                auto cand = cross_moves(spec, state, mask_vertices(m), v);
                if (!cand.empty()) return canonical_least_among(state, cand);
            }
            for (auto m : comp_masks(g)) {
                if (classify_component(g, m) != ComponentShape::c3) continue;
                std::array<int, 1> v{iso[0]};
                auto cand = cross_moves(spec, state, mask_vertices(m), v);
                if (!cand.empty()) return canonical_least_among(state, cand);
            }
            return canonical_least_move(spec, state);  // free play from here
        }
        throw StrategyGap(
            "max_k3p5: unrecognized component after opponent move: shape " +
            format_shape(shape) + " in\n" + format_graph_text(g));
    }
    std::optional<std::string> fingerprint(
        const GameSpec& spec, const GameState&,
        std::span<const Move> history) const override {
        return stage2_reached(spec, history) ? "s2" : "s1";
    }
};

/// Mini scoring triangles with P5 forbidden: sweep untouched vertices into
/// spread-out trees so triangles never pay more than a constant over n/3.
struct MiniK3P5 final : Policy {
    std::string id() const override { return "mini_k3p5"; }
    std::string describe() const override {
        return "fan four-vertex components outward, soak up untouched "
               "vertices";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_path(spec, 5) && spec.score == PatternId::triangle();
    }

    static bool four_comp_fannable(ComponentShape s) {
        return s == ComponentShape::p4 || s == ComponentShape::k13 ||
               s == ComponentShape::paw;
    }

    /// First four-vertex component that can be fanned out; throws if the
    /// board has four-vertex components but none admits the fanning move.
    static std::uint32_t fannable_four_comp(const Graph& g) {
        bool any = false;
        for (auto m : comp_masks(g)) {
            if (mask_size(m) != 4) continue;
            any = true;
            if (four_comp_fannable(classify_component(g, m))) return m;
        }
        if (any)
            throw StrategyGap(
                "mini_k3p5: four-vertex component cannot be fanned out");
        return 0;
    }

    static bool leaves_stage1(const Graph& before) {
        if (no_isolated(before)) return true;
        if (fannable_four_comp(before) != 0) return false;
        for (auto m : comp_masks(before))
            if (classify_component(before, m) == ComponentShape::k2)
                return false;
        if (isolated_of(before).size() >= 2) return false;
        return true;  // nothing claimable: free play begins
    }

    bool stage2_reached(const GameSpec& spec,
                        std::span<const Move> history) const {
        const std::size_t h = history.size();
        Graph g(spec.n);
        bool sticky = false;
        for (std::size_t i = 0; i < h; ++i) {
            const bool mine = seat_plays_index(spec, Player::mini, i);
            if (mine && !sticky) sticky = leaves_stage1(g);
            g.add_edge_in_place(history[i].u, history[i].v);
        }
        return sticky;
    }

    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        if (stage2_reached(spec, history))
            return canonical_least_move(spec, state);
        const Graph& g = state.graph;
        auto iso = isolated_of(g);
        if (iso.empty()) return canonical_least_move(spec, state);
        if (std::uint32_t c = fannable_four_comp(g); c != 0) {
            int hub = -1, hub_deg = -1;
            for (int v : mask_vertices(c))
                if (g.degree(v) > hub_deg) {
                    hub = v;
                    hub_deg = g.degree(v);
                }
            Move m = Move::of(hub, iso[0]);
            if (!is_move_legal(spec, state, m))
                throw StrategyGap("mini_k3p5: fanning move is illegal here");
            return m;
        }
        for (auto m : comp_masks(g)) {
            if (classify_component(g, m) != ComponentShape::k2) continue;
            std::array<int, 1> v{iso[0]};
            auto cand = cross_moves(spec, state, mask_vertices(m), v);
            return canonical_least_among(state, cand);
        }
        if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(
        const GameSpec& spec, const GameState&,
        std::span<const Move> history) const override {
        return stage2_reached(spec, history) ? "s2" : "s1";
    }
};

/// Mini scoring P4 with P5 forbidden: everything open is closed into a
/// cycle-bearing shape that stops growing.
struct MiniP4P5 final : Policy {
    std::string id() const override { return "mini_p4p5"; }
    std::string describe() const override {
        return "seal paths into triangles and four-cycles before they spread";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_path(spec, 5) && scores_path(spec, 4);
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        const Graph& g = state.graph;
        std::uint32_t p3 = 0, p4 = 0, paw = 0, k2 = 0, c3 = 0;
        for (auto m : comp_masks(g)) {
            auto s = classify_component(g, m);
            if (s == ComponentShape::p3 && p3 == 0) p3 = m;
            if (s == ComponentShape::p4 && p4 == 0) p4 = m;
            if (s == ComponentShape::paw && paw == 0) paw = m;
            if (s == ComponentShape::k2 && k2 == 0) k2 = m;
            if (s == ComponentShape::c3 && c3 == 0) c3 = m;
        }
        if (p3 != 0) return path_close_move(g, p3);
        if (p4 != 0) return path_close_move(g, p4);
        if (paw != 0) {
            auto cand = ham_completing_moves(spec, state, paw);
            if (!cand.empty()) return canonical_least_among(state, cand);
        }
        auto iso = isolated_of(g);
        if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
        if (iso.size() == 1) {
            std::array<int, 1> v{iso[0]};
            if (k2 != 0) {
                auto cand = cross_moves(spec, state, mask_vertices(k2), v);
                if (!cand.empty()) return canonical_least_among(state, cand);
            }
            if (c3 != 0) {
                auto cand = cross_moves(spec, state, mask_vertices(c3), v);
                if (!cand.empty()) return canonical_least_among(state, cand);
            }
        }
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

// ---------------------------------------------------------------------------
// Component-bounding strategies for short-path-forbidden games.

/// Ordered pairs of components by joint size; used for the join phase once
/// untouched vertices run out.
std::optional<Move> smallest_pair_join(const GameSpec& spec,
                                       const GameState& state) {
    const Graph& g = state.graph;
    auto masks = comp_masks(g);
    std::vector<std::tuple<int, int, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (std::size_t j = i + 1; j < masks.size(); ++j) {
            int a = mask_size(masks[i]), b = mask_size(masks[j]);
            pairs.emplace_back(a + b, std::min(a, b), i, j);
        }
    std::sort(pairs.begin(), pairs.end());
    for (auto& [total, low, i, j] : pairs) {
        auto cand = cross_moves(spec, state, mask_vertices(masks[i]),
                                mask_vertices(masks[j]));
        if (!cand.empty()) return canonical_least_among(state, cand);
    }
    return std::nullopt;
}

/// Mini keeping components tiny when P4 is forbidden: close fresh paths into
/// triangles, otherwise open fresh edges.
struct MiniBoundedP4 final : Policy {
    std::string id() const override { return "mini_bounded_p4"; }
    std::string describe() const override {
        return "triangle every open path; components never pass three "
               "vertices";
    }
    bool applicable(const GameSpec& spec) const override {
        return forbids_path(spec, 4);
    }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        const Graph& g = state.graph;
        for (auto m : comp_masks(g))
            if (classify_component(g, m) == ComponentShape::p3)
                return path_close_move(g, m);
        auto iso = isolated_of(g);
        if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
        if (auto join = smallest_pair_join(spec, state)) return *join;
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

/// Shared body of the bounded-component strategies for forbidding P5 / P6:
/// repair whatever the opponent's move damaged (restoring a hamiltonian
/// cycle when one edge suffices, with bespoke answers for the few shapes
/// where none does), then claim or join by smallest.
struct MiniBoundedPathBase : Policy {
    virtual int forbidden_path() const = 0;

    bool applicable(const GameSpec& spec) const override {
        return forbids_path(spec, forbidden_path());
    }
    bool uses_last_move() const override { return true; }

    virtual std::optional<Move> special_repair(const Graph& g,
                                               std::uint32_t m) const = 0;
    /// Open-path shapes the strategy deliberately leaves standing.
    virtual bool keep_open(ComponentShape s) const {
        return s == ComponentShape::p3 || s == ComponentShape::p4;
    }

    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        const Graph& g = state.graph;
        if (!history.empty()) {
            Move last = history.back();
            std::uint32_t m = component_mask(g, last.u);
            bool joined = move_joined_components(g, last);
            if (joined && !comp_hamiltonian(g, m)) {
                if (auto fix = special_repair(g, m)) {
                    if (is_move_legal(spec, state, *fix)) return *fix;
                }
                auto ham = ham_completing_moves(spec, state, m);
                if (!ham.empty()) return canonical_least_among(state, ham);
                auto inside = legal_moves_inside(spec, state, m);
                if (!inside.empty()) return canonical_least_among(state, inside);
            } else if (!joined) {
                auto inside = legal_moves_inside(spec, state, m);
                if (!inside.empty()) return canonical_least_among(state, inside);
            }
        }
        // proactive: close own joins that fell short of a cycle
        for (auto m : comp_masks(g)) {
            auto s = classify_component(g, m);
            if (comp_hamiltonian(g, m) || keep_open(s)) continue;
            auto ham = ham_completing_moves(spec, state, m);
            if (!ham.empty()) return canonical_least_among(state, ham);
        }
        // densify hamiltonian components that still have room
        for (auto m : comp_masks(g)) {
            if (!comp_hamiltonian(g, m) || mask_size(m) <= 2) continue;
            auto inside = legal_moves_inside(spec, state, m);
            if (!inside.empty()) return canonical_least_among(state, inside);
        }
        auto iso = isolated_of(g);
        if (iso.size() >= 2) return Move::of(iso[0], iso[1]);
        if (auto join = smallest_pair_join(spec, state)) return *join;
        return canonical_least_move(spec, state);
    }
    std::optional<std::string> fingerprint(const GameSpec&, const GameState&,
                                           std::span<const Move>) const override {
        return "";
    }
};

struct MiniBoundedP5 final : MiniBoundedPathBase {
    std::string id() const override { return "mini_bounded_p5"; }
    std::string describe() const override {
        return "repair merged components toward cycles; sizes stay at four, "
               "once five";
    }
    int forbidden_path() const override { return 5; }
    std::optional<Move> special_repair(const Graph& g,
                                       std::uint32_t m) const override {
        if (auto x = match_cross5(g, m)) return Move::of(x->arm_end, x->center);
        return std::nullopt;
    }
};

struct MiniBoundedP6 final : MiniBoundedPathBase {
    std::string id() const override { return "mini_bounded_p6"; }
    std::string describe() const override {
        return "repair merged components toward cycles; sizes stay at six";
    }
    int forbidden_path() const override { return 6; }
    std::optional<Move> special_repair(const Graph& g,
                                       std::uint32_t m) const override {
        if (auto fix = match_caterpillar6(g, m)) return fix;
        if (auto fix = match_triangle6(g, m)) return fix;
        if (auto x = match_cross5(g, m))
            return Move::of(x->arm_end, std::min(x->leaves[0], x->leaves[1]));
        return std::nullopt;
    }
};

}  // namespace

// ---------------------------------------------------------------------------

std::string format_shape(ComponentShape s) {
    switch (s) {
        case ComponentShape::isolated_vertex: return "K1";
        case ComponentShape::k2: return "K2";
        case ComponentShape::p3: return "P3";
        case ComponentShape::p4: return "P4";
        case ComponentShape::p5_plus: return "P5+";
        case ComponentShape::k13: return "K1,3";
        case ComponentShape::c3: return "C3";
        case ComponentShape::c4: return "C4";
        case ComponentShape::c5: return "C5";
        case ComponentShape::cycle6_plus: return "C6+";
        case ComponentShape::k4_minus_e: return "K4-e";
        case ComponentShape::k4: return "K4";
        case ComponentShape::paw: return "paw";
        case ComponentShape::double_star: return "double star";
        case ComponentShape::tree_pattern: return "tree";
        case ComponentShape::other: return "other";
    }
    return "other";
}

ComponentShape classify_component(const Graph& g, std::uint32_t comp) {
    const int k = mask_size(comp);
    if (k == 0) throw EngineError("classify_component: empty mask");
    if (k == 1) return ComponentShape::isolated_vertex;
    if (k == 2) return ComponentShape::k2;
    const int m = comp_edge_count(g, comp);
    auto vs = mask_vertices(comp);
    int max_deg = 0;
    std::vector<int> internals;
    for (int v : vs) {
        int d = std::popcount(g.row(v) & comp);
        max_deg = std::max(max_deg, d);
        if (d >= 2) internals.push_back(v);
    }
    if (m == k - 1) {  // tree
        if (max_deg <= 2) {
            if (k == 3) return ComponentShape::p3;
            if (k == 4) return ComponentShape::p4;
            return ComponentShape::p5_plus;
        }
        if (k == 4 && max_deg == 3) return ComponentShape::k13;
        if (internals.size() == 2 && g.has_edge(internals[0], internals[1]))
            return ComponentShape::double_star;
        return ComponentShape::tree_pattern;
    }
    if (m == k && max_deg == 2) {
        if (k == 3) return ComponentShape::c3;
        if (k == 4) return ComponentShape::c4;
        if (k == 5) return ComponentShape::c5;
        return ComponentShape::cycle6_plus;
    }
    if (k == 3 && m == 3) return ComponentShape::c3;
    if (k == 4) {
        if (m == 4) return ComponentShape::paw;
        if (m == 5) return ComponentShape::k4_minus_e;
        if (m == 6) return ComponentShape::k4;
    }
    return ComponentShape::other;
}

Move canonical_least_among(const GameState& state,
                           std::span<const Move> candidates) {
    if (candidates.empty())
        throw EngineError("canonical_least_among: no candidates");
    bool found = false;
    std::pair<CanonicalKey, Move> best;
    Move pick{};
    for (Move m : candidates) {
        std::pair<CanonicalKey, Move> cand{
            canonical_key(add_edge(state.graph, m.u, m.v)), m};
        if (!found || cand < best) {
            best = std::move(cand);
            pick = m;
            found = true;
        }
    }
    return pick;
}

Move canonical_least_move(const GameSpec& spec, const GameState& state) {
    auto moves = legal_moves(spec, state);
    if (moves.empty()) throw EngineError("canonical_least_move: no legal moves");
    return canonical_least_among(state, moves);
}

Graph balanced_double_star_target(int n) {
    if (n < 6) throw EngineError("balanced_double_star_target: needs n >= 6");
    const int leaves = (n - 2) / 2;
    const int x = leaves / 2, y = leaves - x;
    Graph t(x + y + 2);
    t.add_edge_in_place(0, 1);
    for (int i = 0; i < x; ++i) t.add_edge_in_place(0, 2 + i);
    for (int i = 0; i < y; ++i) t.add_edge_in_place(1, 2 + x + i);
    return t;
}

Graph path_target(int n) {
    if (n < 6) throw EngineError("path_target: needs n >= 6");
    const int k = n / 2 + 1;
    Graph t(k);
    for (int i = 0; i + 1 < k; ++i) t.add_edge_in_place(i, i + 1);
    return t;
}

const std::vector<PolicyInfo>& policy_catalog() {
    static const std::vector<PolicyInfo> catalog = {
        {"first_legal", "lexicographically first legal edge", "any game"},
        {"uniform_random", "uniform choice among legal edges (seeded)",
         "any game"},
        {"max_path_extension",
         "grow one path, finish with exact counter play",
         "forbid S4, score P3 or P4, plays Max"},
        {"mini_reduction_345",
         "close paths at four-plus vertices, groom shorter pieces",
         "forbid S4, score P3, n >= 6 with matching parity, plays Mini"},
        {"mini_matching_extension",
         "close every open path immediately, shortest first",
         "forbid S4, score P4, plays Mini"},
        {"mini_p5s4", "close the longest open path, stock small paths",
         "forbid S4, score P5, plays Mini"},
        {"max_p5s4_second",
         "mirror claims, stretch touched paths, close at five vertices",
         "forbid S4, score P5, Mini starts, n >= 8 with n = 0,1 (mod 4), "
         "plays Max"},
        {"mini_p6s4", "close paths at five or fewer, merge stray edges",
         "forbid S4, score P6, plays Mini"},
        {"max_k3p5",
         "answer in-component, densify four-vertex pieces, triangle paths",
         "forbid P5, score K3, plays Max"},
        {"mini_k3p5", "fan four-vertex components, soak untouched vertices",
         "forbid P5, score K3, plays Mini"},
        {"mini_p4p5", "seal paths into triangles and four-cycles",
         "forbid P5, score P4, plays Mini"},
        {"mini_bounded_p4", "components never pass three vertices",
         "forbid P4, plays Mini"},
        {"mini_bounded_p5", "components stay at four vertices, once five",
         "forbid P5, plays Mini"},
        {"mini_bounded_p6", "components stay at six vertices",
         "forbid P6, plays Mini"},
        {"mini_nonleaf_maker", "connect leaves across components",
         "cycle-free game, plays Mini"},
        {"max_doublestar", "build a balanced double star on floor(n/2)+1",
         "cycle-free game, n >= 6, plays Max"},
        {"mini_pathbuilder", "build a path on floor(n/2)+1 vertices",
         "cycle-free game, n >= 6, plays Mini"},
        {"treebuilder", "embed a chosen target tree, one leaf per turn",
         "cycle-free game; parametric, see make_treebuilder"},
    };
    return catalog;
}

std::unique_ptr<Policy> make_policy(const std::string& id,
                                    std::uint64_t seed) {
    if (id == "first_legal") return std::make_unique<FirstLegal>();
    if (id == "uniform_random") {
        auto p = std::make_unique<UniformRandom>();
        p->seed = seed;
        return p;
    }
    if (id == "max_path_extension") return std::make_unique<MaxPathExtension>();
    if (id == "mini_reduction_345")
        return std::make_unique<MiniReduction345>();
    if (id == "mini_matching_extension")
        return std::make_unique<MiniMatchingExtension>();
    if (id == "mini_p5s4") return std::make_unique<MiniP5S4>();
    if (id == "max_p5s4_second") return std::make_unique<MaxP5S4Second>();
    if (id == "mini_p6s4") return std::make_unique<MiniP6S4>();
    if (id == "max_k3p5") return std::make_unique<MaxK3P5>();
    if (id == "mini_k3p5") return std::make_unique<MiniK3P5>();
    if (id == "mini_p4p5") return std::make_unique<MiniP4P5>();
    if (id == "mini_bounded_p4") return std::make_unique<MiniBoundedP4>();
    if (id == "mini_bounded_p5") return std::make_unique<MiniBoundedP5>();
    if (id == "mini_bounded_p6") return std::make_unique<MiniBoundedP6>();
    if (id == "mini_nonleaf_maker") return std::make_unique<MiniNonleafMaker>();
    if (id == "max_doublestar") return std::make_unique<MaxDoublestar>();
    if (id == "mini_pathbuilder") return std::make_unique<MiniPathbuilder>();
    if (id == "treebuilder")
        throw EngineError(
            "treebuilder needs a target tree: use make_treebuilder");
    throw EngineError("unknown policy id: " + id);
}

std::unique_ptr<Policy> make_treebuilder(Graph target) {
    return std::make_unique<TreeBuilder>(std::move(target));
}

}  // namespace satgame
