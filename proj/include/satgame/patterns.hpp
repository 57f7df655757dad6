#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "satgame/graph.hpp"

namespace satgame {

struct PatternError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Score/forbidden pattern: a path, star, triangle, or cycle, identified by
/// its vertex count. "C3" normalizes to triangle, so Kind::cycle always has
/// size >= 4.
struct PatternId {
    enum class Kind { path, star, triangle, cycle };

    Kind kind = Kind::path;
    int size = 2;  // vertices of the pattern

    static PatternId path(int s);      // P_s, s >= 2
    static PatternId star(int l);      // S_l = K_{1,l-1}, l >= 3
    static PatternId triangle();
    static PatternId cycle(int k);     // C_k, k >= 3 (k = 3 becomes triangle)

    bool operator==(const PatternId&) const = default;
};

/// What the game forbids: one pattern, or every cycle.
struct ForbiddenSpec {
    bool all_cycles = false;
    PatternId single{};

    static ForbiddenSpec cycles() { return {true, {}}; }
    static ForbiddenSpec of(PatternId p) { return {false, p}; }

    bool operator==(const ForbiddenSpec&) const = default;
};

/// "P4", "S4", "K3", "C5".
PatternId parse_pattern(const std::string& text);
std::string format_pattern(const PatternId& p);

/// Pattern syntax above, or "cycles" for the all-cycles family.
ForbiddenSpec parse_forbidden(const std::string& text);
std::string format_forbidden(const ForbiddenSpec& f);

/// Copies of h in g: subgraphs counted once per vertex/edge set, never per
/// automorphism (K_4 holds 12 P_4's, C_7 holds 7 P_3's).
long long count_copies(const Graph& g, const PatternId& h);

bool is_f_free(const Graph& g, const ForbiddenSpec& f);

/// True iff adding the non-edge {u,v} creates a forbidden copy. Requires g
/// itself to be f-free: each check only looks at structure incident to the
/// new edge. Throws if {u,v} is already an edge or u == v.
bool creates_copy(const Graph& g, int u, int v, const ForbiddenSpec& f);

/// Sum of C(deg, l-1) over the degree list: the number of S_l's.
long long star_count_by_degrees(const std::vector<int>& degrees, int l);

/// Exact C(n, k); 0 outside the triangle of definition.
long long binomial(int n, int k);

/// Cap on S_k copies in any tree on n vertices having at least x vertices of
/// degree >= 2: C(n-x, k-1). Requires k >= 4, 0 <= x <= n.
long long tree_star_upper_bound(int n, int x, int k);

/// Floor on P_4 copies in any tree on n vertices that contains a double star
/// D_{x,y}: xy + min(x,y) + (n-x-y-2) - 1. Requires n > x+y+2 — at
/// n = x+y+2 the formula overshoots the true count and is refused here.
long long doublestar_p4_lower_bound(int x, int y, int n);

/// Cap f(n,s) on P_4 copies in any tree on n vertices whose longest path has
/// exactly s vertices. Requires n >= s >= 4.
long long path_bounded_p4_upper_bound(int n, int s);

}  // namespace satgame
