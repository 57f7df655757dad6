#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "satgame/engine.hpp"

namespace satgame {

/// Isomorphism class of one connected component, at the granularity the
/// policies reason in. Every component gets exactly one label.
enum class ComponentShape {
    isolated_vertex,
    k2,
    p3,
    p4,
    p5_plus,      // path on >= 5 vertices
    k13,          // star on 4 vertices
    c3,
    c4,
    c5,
    cycle6_plus,  // cycle on >= 6 vertices
    k4_minus_e,
    k4,
    paw,          // triangle with one pendant edge
    double_star,  // two adjacent internal vertices, everything else a leaf
    tree_pattern, // any other tree
    other,
};

std::string format_shape(ComponentShape s);

/// Classification of the component given by `comp` (a vertex bitmask).
ComponentShape classify_component(const Graph& g, std::uint32_t comp);

/// The executable meaning of "plays any legal move": the legal move whose
/// successor graph has the least canonical key, ties broken by the move
/// itself. Deterministic and label-independent.
Move canonical_least_move(const GameSpec& spec, const GameState& state);

/// Same selection rule over a non-empty candidate list (all must be legal).
Move canonical_least_among(const GameState& state,
                           std::span<const Move> candidates);

/// Catalog entry for the `policies` listing.
struct PolicyInfo {
    std::string id;
    std::string summary;
    std::string applicability;
};

const std::vector<PolicyInfo>& policy_catalog();

/// Instantiate a catalog policy by id; `seed` only feeds uniform_random.
/// treebuilder is parametric and must go through make_treebuilder.
std::unique_ptr<Policy> make_policy(const std::string& id,
                                    std::uint64_t seed = 0);

/// Greedy tree embedding for the cycle-free game: one claimed edge per turn
/// extends an embedded copy of `target` by the next leaf, attaching a vertex
/// of some other component in that role. Opts out of memoization (the
/// embedding is tied to concrete labels).
std::unique_ptr<Policy> make_treebuilder(Graph target);

/// Targets used by the double-star and path building policies: both live on
/// floor(n/2)+1 vertices, the size a builder can always finish.
Graph balanced_double_star_target(int n);
Graph path_target(int n);

}  // namespace satgame
