#include "satgame/patterns.hpp"

#include <algorithm>
#include <bit>

namespace satgame {

PatternId PatternId::path(int s) {
    if (s < 2) throw PatternError("path pattern needs >= 2 vertices");
    return {Kind::path, s};
}

PatternId PatternId::star(int l) {
    if (l < 3) throw PatternError("star pattern needs >= 3 vertices");
    return {Kind::star, l};
}

PatternId PatternId::triangle() { return {Kind::triangle, 3}; }

PatternId PatternId::cycle(int k) {
    if (k < 3) throw PatternError("cycle pattern needs >= 3 vertices");
    if (k == 3) return triangle();
    return {Kind::cycle, k};
}

PatternId parse_pattern(const std::string& text) {
    if (text == "K3") return PatternId::triangle();
    if (text.size() >= 2 &&
        (text[0] == 'P' || text[0] == 'S' || text[0] == 'C')) {
        int size = 0;
        for (std::size_t i = 1; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9')
                throw PatternError("bad pattern: " + text);
            size = size * 10 + (text[i] - '0');
        }
        switch (text[0]) {
            case 'P': return PatternId::path(size);
            case 'S': return PatternId::star(size);
            default: return PatternId::cycle(size);
        }
    }
    throw PatternError("bad pattern: " + text);
}

std::string format_pattern(const PatternId& p) {
    switch (p.kind) {
        case PatternId::Kind::path: return "P" + std::to_string(p.size);
        case PatternId::Kind::star: return "S" + std::to_string(p.size);
        case PatternId::Kind::triangle: return "K3";
        case PatternId::Kind::cycle: return "C" + std::to_string(p.size);
    }
    throw PatternError("bad pattern kind");
}

ForbiddenSpec parse_forbidden(const std::string& text) {
    if (text == "cycles") return ForbiddenSpec::cycles();
    return ForbiddenSpec::of(parse_pattern(text));
}

std::string format_forbidden(const ForbiddenSpec& f) {
    return f.all_cycles ? "cycles" : format_pattern(f.single);
}

long long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long out = 1;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

long long star_count_by_degrees(const std::vector<int>& degrees, int l) {
    if (l < 3) throw PatternError("star pattern needs >= 3 vertices");
    long long total = 0;
    for (int d : degrees) total += binomial(d, l - 1);
    return total;
}

namespace {

long long count_paths(const Graph& g, int s) {
    // directed simple-path DFS; every copy is walked from both ends
    int n = g.vertex_count();
    long long directed = 0;
    auto dfs = [&](auto&& self, int v, std::uint32_t used, int len) -> void {
        if (len == s) {
            ++directed;
            return;
        }
        std::uint32_t ext = g.row(v) & ~used;
        while (ext) {
            int w = std::countr_zero(ext);
            ext &= ext - 1;
            self(self, w, used | (1u << w), len + 1);
        }
    };
    for (int v = 0; v < n; ++v) dfs(dfs, v, 1u << v, 1);
    return directed / 2;
}

std::uint32_t above_mask(int i) { return i >= 31 ? 0u : ~0u << (i + 1); }

long long count_triangles(const Graph& g) {
    long long total = 0;
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u) {
        std::uint32_t above = g.row(u) & above_mask(u);
        while (above) {
            int v = std::countr_zero(above);
            above &= above - 1;
            total += std::popcount(g.row(u) & g.row(v) & above_mask(v));
        }
    }
    return total;
}

long long count_cycles(const Graph& g, int k) {
    // walk cycles from their least vertex, other vertices kept above it;
    // each cycle is traversed in both directions
    long long directed = 0;
    auto dfs = [&](auto&& self, int base, int v, std::uint32_t used,
                   int len) -> void {
        if (len == k) {
            if (g.row(v) & (1u << base)) ++directed;
            return;
        }
        std::uint32_t ext = g.row(v) & ~used & above_mask(base);
        while (ext) {
            int w = std::countr_zero(ext);
            ext &= ext - 1;
            self(self, base, w, used | (1u << w), len + 1);
        }
    };
    for (int base = 0; base < g.vertex_count(); ++base)
        dfs(dfs, base, base, 1u << base, 1);
    return directed / 2;
}

}  // namespace

long long count_copies(const Graph& g, const PatternId& h) {
    switch (h.kind) {
        case PatternId::Kind::path: return count_paths(g, h.size);
        case PatternId::Kind::star: {
            std::vector<int> degrees(g.vertex_count());
            for (int v = 0; v < g.vertex_count(); ++v) degrees[v] = g.degree(v);
            return star_count_by_degrees(degrees, h.size);
        }
        case PatternId::Kind::triangle: return count_triangles(g);
        case PatternId::Kind::cycle: return count_cycles(g, h.size);
    }
    throw PatternError("bad pattern kind");
}

bool is_f_free(const Graph& g, const ForbiddenSpec& f) {
    if (f.all_cycles) return is_acyclic(g);
    switch (f.single.kind) {
        case PatternId::Kind::path:
            return longest_path_vertices(g) < f.single.size;
        case PatternId::Kind::star:
            return g.max_degree() <= f.single.size - 2;
        case PatternId::Kind::triangle: return count_triangles(g) == 0;
        case PatternId::Kind::cycle:
            return count_cycles(g, f.single.size) == 0;
    }
    throw PatternError("bad pattern kind");
}

namespace {

/// Simple path from u to v on exactly k vertices?
bool exact_path_between(const Graph& g, int u, int v, int k) {
    if (!(component_mask(g, u) & (1u << v))) return false;
    auto dfs = [&](auto&& self, int cur, std::uint32_t used, int len) -> bool {
        if (len == k) return cur == v;
        if (cur == v) return false;
        std::uint32_t ext = g.row(cur) & ~used;
        while (ext) {
            int w = std::countr_zero(ext);
            ext &= ext - 1;
            if (self(self, w, used | (1u << w), len + 1)) return true;
        }
        return false;
    };
    return dfs(dfs, u, 1u << u, 1);
}

}  // namespace

bool creates_copy(const Graph& g, int u, int v, const ForbiddenSpec& f) {
    if (u == v) throw PatternError("creates_copy needs two distinct vertices");
    if (g.has_edge(u, v)) throw PatternError("creates_copy called on an edge");
    if (f.all_cycles) return (component_mask(g, u) >> v) & 1u;
    switch (f.single.kind) {
        case PatternId::Kind::star: {
            int cap = f.single.size - 2;
            return g.degree(u) >= cap || g.degree(v) >= cap;
        }
        case PatternId::Kind::triangle: return (g.row(u) & g.row(v)) != 0;
        case PatternId::Kind::path: {
            Graph h = add_edge(g, u, v);
            return component_has_path(h, component_mask(h, u), f.single.size);
        }
        case PatternId::Kind::cycle:
            return exact_path_between(g, u, v, f.single.size);
    }
    throw PatternError("bad pattern kind");
}

long long tree_star_upper_bound(int n, int x, int k) {
    if (k < 4 || x < 0 || x > n) throw PatternError("bad star-bound parameters");
    return binomial(n - x, k - 1);
}

long long doublestar_p4_lower_bound(int x, int y, int n) {
    if (x < 1 || y < 1 || n <= x + y + 2)
        throw PatternError("double-star bound needs x,y >= 1 and n > x+y+2");
    return static_cast<long long>(x) * y + std::min(x, y) + (n - x - y - 2) - 1;
}

long long path_bounded_p4_upper_bound(int n, int s) {
    if (s < 4 || n < s) throw PatternError("bad path-bound parameters");
    if (s >= 6) {
        long long r = n - s;
        return (s - 3) + 2 * r + (r / 2) * ((r + 1) / 2);
    }
    long long r = n - 2;
    return (r / 2) * ((r + 1) / 2);
}

}  // namespace satgame
