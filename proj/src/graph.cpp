#include "satgame/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace satgame {

namespace {

int popcount(std::uint32_t x) { return std::popcount(x); }

std::uint32_t bit(int v) { return std::uint32_t{1} << v; }

}  // namespace

int Graph::edge_count() const {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += std::popcount(adj_[v]);
    return twice / 2;
}

int Graph::degree(int v) const {
    check_vertex(v);
    return std::popcount(adj_[v]);
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, std::popcount(adj_[v]));
    return best;
}

void Graph::add_edge_in_place(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw GraphError("self-loop");
    if ((adj_[u] >> v) & 1u) throw GraphError("edge already present");
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
}

Graph add_edge(const Graph& g, int u, int v) {
    Graph out = g;
    out.add_edge_in_place(u, v);
    return out;
}

std::uint32_t component_mask(const Graph& g, int v) {
    std::uint32_t seen = bit(v);
    std::uint32_t frontier = seen;
    while (frontier) {
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f;) {
            int w = std::countr_zero(f);
            f &= f - 1;
            next |= g.row(w);
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen;
}

std::vector<std::vector<int>> components(const Graph& g) {
    std::vector<std::vector<int>> out;
    std::uint32_t done = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (done & bit(v)) continue;
        std::uint32_t comp = component_mask(g, v);
        done |= comp;
        std::vector<int> verts;
        for (std::uint32_t m = comp; m;) {
            int w = std::countr_zero(m);
            m &= m - 1;
            verts.push_back(w);
        }
        out.push_back(std::move(verts));
    }
    return out;
}

namespace {

/// Longest-path DP over one component. dp[mask] holds the possible endpoints
/// of simple paths covering exactly `mask`. Early exit once `target` vertices
/// are reached (target <= 0 means "find the maximum").
int path_dp(const Graph& g, std::uint32_t comp, int target) {
    int k = popcount(comp);
    if (k > 24) throw GraphError("component too large for path search");
    if (k == 1) return 1;

    std::vector<int> verts;
    verts.reserve(k);
    for (std::uint32_t m = comp; m;) {
        int w = std::countr_zero(m);
        m &= m - 1;
        verts.push_back(w);
    }
    std::vector<std::uint32_t> local(k);
    for (int i = 0; i < k; ++i) {
        std::uint32_t r = g.row(verts[i]) & comp;
        std::uint32_t loc = 0;
        for (int j = 0; j < k; ++j)
            if (r & bit(verts[j])) loc |= bit(j);
        local[i] = loc;
    }

    std::vector<std::uint32_t> dp(std::size_t{1} << k, 0);
    for (int i = 0; i < k; ++i) dp[bit(i)] = bit(i);
    int best = 1;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
        std::uint32_t ends = dp[mask];
        if (!ends) continue;
        int len = popcount(mask);
        if (len > best) {
            best = len;
            if (target > 0 && best >= target) return best;
        }
        for (std::uint32_t e = ends; e;) {
            int v = std::countr_zero(e);
            e &= e - 1;
            std::uint32_t ext = local[v] & ~mask;
            while (ext) {
                int w = std::countr_zero(ext);
                ext &= ext - 1;
                dp[mask | bit(w)] |= bit(w);
            }
        }
    }
    return best;
}

}  // namespace

int longest_path_in_component(const Graph& g, std::uint32_t comp) {
    return path_dp(g, comp, 0);
}

bool component_has_path(const Graph& g, std::uint32_t comp, int target) {
    if (target <= 1) return comp != 0;
    return path_dp(g, comp, target) >= target;
}

int longest_path_vertices(const Graph& g) {
    int best = 0;
    std::uint32_t done = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (done & bit(v)) continue;
        std::uint32_t comp = component_mask(g, v);
        done |= comp;
        best = std::max(best, path_dp(g, comp, 0));
    }
    return best;
}

bool is_acyclic(const Graph& g) {
    std::uint32_t done = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (done & bit(v)) continue;
        std::uint32_t comp = component_mask(g, v);
        done |= comp;
        int verts = popcount(comp);
        int twice = 0;
        for (std::uint32_t m = comp; m;) {
            int w = std::countr_zero(m);
            m &= m - 1;
            twice += popcount(g.row(w));
        }
        if (twice / 2 >= verts) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Canonical codes
// ---------------------------------------------------------------------------

namespace {

struct LocalComp {
    int k = 0;
    std::vector<int> verts;           // local index -> original vertex
    std::vector<std::uint32_t> adj;   // local adjacency masks
};

LocalComp localize(const Graph& g, std::uint32_t comp) {
    LocalComp lc;
    for (std::uint32_t m = comp; m;) {
        int w = std::countr_zero(m);
        m &= m - 1;
        lc.verts.push_back(w);
    }
    lc.k = static_cast<int>(lc.verts.size());
    lc.adj.resize(lc.k);
    for (int i = 0; i < lc.k; ++i) {
        std::uint32_t r = g.row(lc.verts[i]) & comp;
        for (int j = 0; j < lc.k; ++j)
            if (r & bit(lc.verts[j])) lc.adj[i] |= bit(j);
    }
    return lc;
}

int local_edges(const LocalComp& lc) {
    int twice = 0;
    for (auto r : lc.adj) twice += popcount(r);
    return twice / 2;
}

std::string ahu_code(const LocalComp& lc, int v, int parent) {
    std::vector<std::string> child;
    for (std::uint32_t m = lc.adj[v]; m;) {
        int w = std::countr_zero(m);
        m &= m - 1;
        if (w != parent) child.push_back(ahu_code(lc, w, v));
    }
    std::sort(child.begin(), child.end());
    std::string out = "(";
    for (auto& c : child) out += c;
    out += ")";
    return out;
}

std::string tree_code(const LocalComp& lc) {
    // peel leaves to find the one or two center vertices
    std::vector<int> deg(lc.k);
    for (int i = 0; i < lc.k; ++i) deg[i] = popcount(lc.adj[i]);
    std::vector<int> layer;
    std::vector<bool> gone(lc.k, false);
    int remaining = lc.k;
    for (int i = 0; i < lc.k; ++i)
        if (deg[i] <= 1) layer.push_back(i);
    while (remaining > 2) {
        std::vector<int> next;
        for (int v : layer) {
            gone[v] = true;
            --remaining;
            for (std::uint32_t m = lc.adj[v]; m;) {
                int w = std::countr_zero(m);
                m &= m - 1;
                if (!gone[w] && --deg[w] == 1) next.push_back(w);
            }
        }
        layer = std::move(next);
    }
    std::vector<int> centers;
    for (int i = 0; i < lc.k; ++i)
        if (!gone[i]) centers.push_back(i);
    if (centers.size() == 1) return ahu_code(lc, centers[0], -1);
    std::string a = ahu_code(lc, centers[0], centers[1]);
    std::string b = ahu_code(lc, centers[1], centers[0]);
    if (b < a) std::swap(a, b);
    return "[" + a + b + "]";
}

/// Stable vertex coloring: start from degrees, refine by sorted neighbor
/// colors until the partition stops splitting. Color order is derived from
/// invariant data only, so corresponding vertices of isomorphic components
/// get identical colors.
std::vector<int> refine_colors(const LocalComp& lc, std::vector<int> color) {
    for (int round = 0; round < lc.k; ++round) {
        std::vector<std::pair<std::vector<int>, int>> sig(lc.k);
        for (int v = 0; v < lc.k; ++v) {
            std::vector<int> s;
            s.push_back(color[v]);
            for (std::uint32_t m = lc.adj[v]; m;) {
                int w = std::countr_zero(m);
                m &= m - 1;
                s.push_back(color[w]);
            }
            std::sort(s.begin() + 1, s.end());
            sig[v] = {std::move(s), v};
        }
        std::vector<std::pair<std::vector<int>, int>> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> next(lc.k);
        int c = -1;
        const std::vector<int>* prev = nullptr;
        for (auto& [s, v] : sorted) {
            if (!prev || *prev != s) ++c;
            next[v] = c;
            prev = &s;
        }
        if (next == color) break;
        color = std::move(next);
    }
    return color;
}

/// Minimal-adjacency-string canonical form over color-respecting
/// permutations, with optional marked-pair tie-break. Twin vertices are
/// collapsed at each depth to keep symmetric components cheap.
struct CanonSearch {
    const LocalComp& lc;
    std::vector<int> color;
    std::vector<int> pos_color;           // required color at each position
    std::vector<std::uint32_t> best;      // adjacency pattern per depth
    static constexpr std::uint32_t kOpen = 0xffffffffu;
    std::vector<int> perm;                // position -> local vertex
    std::vector<bool> used;
    int mark_a = -1, mark_b = -1;         // local marked pair (or -1)
    std::pair<int, int> best_mark{255, 255};

    CanonSearch(const LocalComp& c, std::vector<int> col)
        : lc(c), color(std::move(col)) {
        pos_color = color;
        std::sort(pos_color.begin(), pos_color.end());
        best.assign(lc.k, kOpen);
        perm.assign(lc.k, -1);
        used.assign(lc.k, false);
    }

    std::uint32_t pattern_of(int u, int depth) const {
        std::uint32_t p = 0;
        for (int j = 0; j < depth; ++j)
            p = (p << 1) | ((lc.adj[u] >> perm[j]) & 1u);
        return p;
    }

    bool twins(int u, int v) const {
        std::uint32_t clear = ~(bit(u) | bit(v));
        return (lc.adj[u] & clear) == (lc.adj[v] & clear);
    }

    void dfs(int depth) {
        if (depth == lc.k) {
            if (mark_a >= 0) {
                int pa = 0, pb = 0;
                for (int j = 0; j < lc.k; ++j) {
                    if (perm[j] == mark_a) pa = j;
                    if (perm[j] == mark_b) pb = j;
                }
                std::pair<int, int> mark{std::min(pa, pb), std::max(pa, pb)};
                best_mark = std::min(best_mark, mark);
            }
            return;
        }
        std::vector<std::pair<std::uint32_t, int>> cand;
        for (int u = 0; u < lc.k; ++u) {
            if (used[u] || color[u] != pos_color[depth]) continue;
            bool dup = false;
            for (auto& [p, v] : cand)
                if (color[v] == color[u] && twins(u, v)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            cand.emplace_back(pattern_of(u, depth), u);
        }
        std::sort(cand.begin(), cand.end());
        for (auto& [p, u] : cand) {
            if (p > best[depth]) break;
            if (p < best[depth]) {
                best[depth] = p;
                std::fill(best.begin() + depth + 1, best.end(), kOpen);
                best_mark = {255, 255};
            }
            perm[depth] = u;
            used[u] = true;
            dfs(depth + 1);
            used[u] = false;
        }
    }
};

std::string general_code(const LocalComp& lc, int mark_a, int mark_b) {
    if (lc.k > 16) throw GraphError("component too large for canonical search");
    std::vector<int> color(lc.k);
    for (int v = 0; v < lc.k; ++v) color[v] = popcount(lc.adj[v]);
    if (mark_a >= 0) {
        // large offsets keep mark endpoints in classes of their own
        color[mark_a] += 64;
        color[mark_b] += 128;
        if (lc.adj[mark_a] == lc.adj[mark_b] ||
            (lc.adj[mark_a] ^ bit(mark_b)) == (lc.adj[mark_b] ^ bit(mark_a))) {
            // interchangeable endpoints: keep them in one class
            color[mark_a] = color[mark_b] =
                std::min(color[mark_a], color[mark_b]);
        }
    }
    // dense ranks, then neighborhood refinement
    {
        std::vector<int> vals = color;
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        for (auto& c : color)
            c = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), c) -
                                 vals.begin());
    }
    color = refine_colors(lc, std::move(color));

    CanonSearch search(lc, color);
    search.mark_a = mark_a;
    search.mark_b = mark_b;
    search.dfs(0);

    std::ostringstream out;
    out << lc.k << ":";
    for (int d = 1; d < lc.k; ++d) {
        if (d > 1) out << ",";
        out << search.best[d];
    }
    if (mark_a >= 0)
        out << "@" << search.best_mark.first << "." << search.best_mark.second;
    return out.str();
}

std::string code_for(const Graph& g, std::uint32_t comp) {
    LocalComp lc = localize(g, comp);
    if (lc.k == 1) return "v";
    int m = local_edges(lc);
    int maxdeg = 0;
    for (auto r : lc.adj) maxdeg = std::max(maxdeg, popcount(r));
    if (m == lc.k - 1 && maxdeg <= 2) return "p" + std::to_string(lc.k);
    if (m == lc.k && maxdeg == 2) return "c" + std::to_string(lc.k);
    if (m == lc.k - 1) return "t" + tree_code(lc);
    return "g" + general_code(lc, -1, -1);
}

}  // namespace

std::string component_code(const Graph& g, std::uint32_t comp) {
    return code_for(g, comp);
}

CanonicalKey canonical_key(const Graph& g) {
    std::vector<std::string> codes;
    std::uint32_t done = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (done & bit(v)) continue;
        std::uint32_t comp = component_mask(g, v);
        done |= comp;
        codes.push_back(code_for(g, comp));
    }
    std::sort(codes.begin(), codes.end());
    std::string key;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) key += "|";
        key += codes[i];
    }
    return key;
}

CanonicalKey marked_canonical_key(const Graph& g, int mu, int mv) {
    if (!g.has_edge(mu, mv)) throw GraphError("marked pair is not an edge");
    std::uint32_t marked_comp = component_mask(g, mu);

    std::vector<std::string> codes;
    std::uint32_t done = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (done & bit(v)) continue;
        std::uint32_t comp = component_mask(g, v);
        done |= comp;
        if (comp != marked_comp) codes.push_back(code_for(g, comp));
    }
    std::sort(codes.begin(), codes.end());
    std::string key;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) key += "|";
        key += codes[i];
    }

    LocalComp lc = localize(g, marked_comp);
    int la = -1, lb = -1;
    for (int i = 0; i < lc.k; ++i) {
        if (lc.verts[i] == mu) la = i;
        if (lc.verts[i] == mv) lb = i;
    }
    key += "#m";
    key += general_code(lc, la, lb);
    return key;
}

// ---------------------------------------------------------------------------
// Text fixtures
// ---------------------------------------------------------------------------

Graph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    int n = -1, m = -1;
    if (!(in >> n >> m)) throw GraphError("bad graph header");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw GraphError("truncated edge list");
        g.add_edge_in_place(u, v);
    }
    return g;
}

std::string format_graph_text(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << " " << g.edge_count() << "\n";
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if (g.has_edge(u, v)) out << u << " " << v << "\n";
    return out.str();
}

}  // namespace satgame
