#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "satgame/graph.hpp"

using namespace satgame;

namespace {

// All edge slots of K_n in lexicographic order.
std::vector<std::pair<int, int>> edge_slots(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    return slots;
}

Graph graph_from_bits(int n, std::uint64_t bits) {
    Graph g(n);
    auto slots = edge_slots(n);
    for (std::size_t i = 0; i < slots.size(); ++i)
        if ((bits >> i) & 1) g.add_edge_in_place(slots[i].first, slots[i].second);
    return g;
}

Graph random_graph(int n, double p, std::mt19937& rng) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge_in_place(u, v);
    return g;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    Graph out(g.vertex_count());
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if (g.has_edge(u, v)) out.add_edge_in_place(perm[u], perm[v]);
    return out;
}

bool isomorphic_brute(const Graph& a, const Graph& b) {
    int n = a.vertex_count();
    if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                if (a.has_edge(u, v) != b.has_edge(perm[u], perm[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

int longest_path_brute(const Graph& g) {
    int n = g.vertex_count();
    if (n == 0) return 0;
    int best = 1;
    // DFS over simple paths from every start vertex
    auto dfs = [&](auto&& self, int v, std::uint32_t used) -> void {
        best = std::max(best, static_cast<int>(std::popcount(used)));
        for (int w = 0; w < n; ++w)
            if (g.has_edge(v, w) && !((used >> w) & 1))
                self(self, w, used | (1u << w));
    };
    for (int v = 0; v < n; ++v) dfs(dfs, v, 1u << v);
    return best;
}

bool acyclic_brute(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> state(n, 0);
    std::vector<int> parent(n, -1);
    for (int s = 0; s < n; ++s) {
        if (state[s]) continue;
        std::vector<int> stack{s};
        state[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                if (!g.has_edge(v, w)) continue;
                if (!state[w]) {
                    state[w] = 1;
                    parent[w] = v;
                    stack.push_back(w);
                } else if (w != parent[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge_in_place(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    g.add_edge_in_place(n - 1, 0);
    return g;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("construction and edge errors") {
    CHECK_THROWS_AS(Graph(33), GraphError);
    CHECK_THROWS_AS(Graph(-1), GraphError);
    Graph g(4);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 0);
    g.add_edge_in_place(0, 2);
    CHECK(g.has_edge(2, 0));
    CHECK(g.edge_count() == 1);
    CHECK_THROWS_AS(g.add_edge_in_place(0, 2), GraphError);
    CHECK_THROWS_AS(g.add_edge_in_place(1, 1), GraphError);
    CHECK_THROWS_AS(g.add_edge_in_place(0, 4), GraphError);
    CHECK_THROWS_AS((void)g.has_edge(-1, 0), GraphError);

    Graph h = add_edge(g, 1, 3);
    CHECK(h.has_edge(1, 3));
    CHECK_FALSE(g.has_edge(1, 3));
    CHECK(h.degree(1) == 1);
    CHECK(h.max_degree() == 1);
}

TEST_CASE("components are sorted and include singletons") {
    Graph g(6);
    g.add_edge_in_place(4, 1);
    g.add_edge_in_place(1, 5);
    g.add_edge_in_place(0, 3);
    auto comps = components(g);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<int>{0, 3});
    CHECK(comps[1] == std::vector<int>{1, 4, 5});
    CHECK(comps[2] == std::vector<int>{2});
    CHECK(component_mask(g, 4) == ((1u << 1) | (1u << 4) | (1u << 5)));
}

TEST_CASE("longest path on known shapes") {
    CHECK(longest_path_vertices(Graph()) == 0);
    CHECK(longest_path_vertices(Graph(3)) == 1);
    CHECK(longest_path_vertices(path_graph(7)) == 7);
    CHECK(longest_path_vertices(cycle_graph(5)) == 5);
    // star: any path uses the center once
    Graph star(5);
    for (int leaf = 1; leaf < 5; ++leaf) star.add_edge_in_place(0, leaf);
    CHECK(longest_path_vertices(star) == 3);
    // two components: max over both
    Graph two(8);
    for (int i = 0; i + 1 < 5; ++i) two.add_edge_in_place(i, i + 1);
    two.add_edge_in_place(5, 6);
    CHECK(longest_path_vertices(two) == 5);
}

TEST_CASE("longest path matches brute force on all graphs with 5 vertices") {
    for (std::uint64_t bits = 0; bits < (1u << 10); ++bits) {
        Graph g = graph_from_bits(5, bits);
        CHECK(longest_path_vertices(g) == longest_path_brute(g));
    }
}

TEST_CASE("longest path matches brute force on random graphs") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = random_graph(8, 0.3, rng);
        int want = longest_path_brute(g);
        CHECK(longest_path_vertices(g) == want);
        for (int t = 1; t <= 8; ++t) {
            bool has = false;
            for (auto& comp : components(g)) {
                std::uint32_t mask = 0;
                for (int v : comp) mask |= 1u << v;
                if (component_has_path(g, mask, t)) has = true;
            }
            CHECK(has == (want >= t));
        }
    }
}

TEST_CASE("acyclicity matches a DFS oracle") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        Graph g = random_graph(7, 0.25, rng);
        CHECK(is_acyclic(g) == acyclic_brute(g));
    }
    CHECK(is_acyclic(path_graph(6)));
    CHECK_FALSE(is_acyclic(cycle_graph(3)));
}

TEST_CASE("component codes for simple shapes") {
    Graph g(10);
    g.add_edge_in_place(1, 2);
    g.add_edge_in_place(2, 3);
    // P3 on {1,2,3}, isolated 0
    CHECK(component_code(g, component_mask(g, 0)) == "v");
    CHECK(component_code(g, component_mask(g, 1)) == "p3");
    Graph c = cycle_graph(4);
    CHECK(component_code(c, component_mask(c, 0)) == "c4");
    // K_{1,3} is a tree but not a path
    Graph star(4);
    for (int leaf = 1; leaf < 4; ++leaf) star.add_edge_in_place(0, leaf);
    auto code = component_code(star, component_mask(star, 0));
    CHECK(code.front() == 't');
    // P4 gets the path code, not a tree code
    CHECK(component_code(path_graph(4), 0b1111u) == "p4");
    // K4 needs the permutation search
    Graph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.add_edge_in_place(u, v);
    CHECK(component_code(k4, 0b1111u).front() == 'g');
}

TEST_CASE("canonical key is relabeling-invariant") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        Graph g = random_graph(n, 0.35, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonical_key(g) == canonical_key(relabel(g, perm)));
    }
}

TEST_CASE("equal keys mean isomorphic: exhaustive on 5 vertices") {
    std::map<CanonicalKey, Graph> rep;
    int classes = 0;
    for (std::uint64_t bits = 0; bits < (1u << 10); ++bits) {
        Graph g = graph_from_bits(5, bits);
        auto key = canonical_key(g);
        auto it = rep.find(key);
        if (it == rep.end()) {
            rep.emplace(key, g);
            ++classes;
        } else {
            CHECK(isomorphic_brute(g, it->second));
        }
    }
    // number of isomorphism classes of graphs on 5 vertices
    CHECK(classes == 34);
}

TEST_CASE("key class count matches on 6 vertices") {
    std::set<CanonicalKey> keys;
    for (std::uint64_t bits = 0; bits < (1u << 15); ++bits)
        keys.insert(canonical_key(graph_from_bits(6, bits)));
    // number of isomorphism classes of graphs on 6 vertices
    CHECK(keys.size() == 156u);
}

TEST_CASE("marked keys distinguish edge orbits") {
    Graph p4 = path_graph(4);
    auto end1 = marked_canonical_key(p4, 0, 1);
    auto end2 = marked_canonical_key(p4, 3, 2);
    auto mid = marked_canonical_key(p4, 1, 2);
    CHECK(end1 == end2);
    CHECK(end1 != mid);
    Graph tri = cycle_graph(3);
    CHECK(marked_canonical_key(tri, 0, 1) == marked_canonical_key(tri, 1, 2));
    CHECK_THROWS_AS(marked_canonical_key(p4, 0, 2), GraphError);
}

TEST_CASE("marked keys are relabeling-invariant") {
    std::mt19937 rng(23);
    int done = 0;
    while (done < 200) {
        int n = 4 + static_cast<int>(rng() % 5);
        Graph g = random_graph(n, 0.4, rng);
        if (g.edge_count() == 0) continue;
        // pick a random existing edge
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (g.has_edge(u, v)) edges.emplace_back(u, v);
        auto [mu, mv] = edges[rng() % edges.size()];
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h = relabel(g, perm);
        CHECK(marked_canonical_key(g, mu, mv) ==
              marked_canonical_key(h, perm[mu], perm[mv]));
        ++done;
    }
}

TEST_CASE("marked keys separate graphs the unmarked key already separates") {
    // same underlying component, different marks can agree only when an
    // automorphism maps one mark to the other; cross-graph keys never collide
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(6, 0.4, rng);
        Graph h = random_graph(6, 0.4, rng);
        if (g.edge_count() == 0 || h.edge_count() == 0) continue;
        if (canonical_key(g) == canonical_key(h)) continue;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v)
                for (int x = 0; x < 6; ++x)
                    for (int y = x + 1; y < 6; ++y)
                        if (g.has_edge(u, v) && h.has_edge(x, y))
                            CHECK(marked_canonical_key(g, u, v) !=
                                  marked_canonical_key(h, x, y));
    }
}

TEST_CASE("graph text roundtrip") {
    Graph g(5);
    g.add_edge_in_place(0, 4);
    g.add_edge_in_place(2, 3);
    auto text = format_graph_text(g);
    CHECK(parse_graph_text(text) == g);
    CHECK_THROWS_AS(parse_graph_text("oops"), GraphError);
    CHECK_THROWS_AS(parse_graph_text("3 2\n0 1"), GraphError);
}

}  // TEST_SUITE
