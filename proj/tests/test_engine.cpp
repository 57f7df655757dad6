#include "doctest.h"

#include <set>
#include <vector>

#include "satgame/engine.hpp"

using namespace satgame;

namespace {

Graph cycle_on(Graph g, const std::vector<int>& verts) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        g.add_edge_in_place(verts[i], verts[(i + 1) % verts.size()]);
    return g;
}

struct FirstLegal final : Policy {
    std::string id() const override { return "test_first_legal"; }
    std::string describe() const override { return "least legal move"; }
    bool applicable(const GameSpec&) const override { return true; }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        return legal_moves(spec, state).front();
    }
};

struct AlwaysIllegal final : Policy {
    std::string id() const override { return "test_illegal"; }
    std::string describe() const override { return "always plays 0-1"; }
    bool applicable(const GameSpec&) const override { return true; }
    Move select_move(const GameSpec&, const GameState&,
                     std::span<const Move>) const override {
        return {0, 1};
    }
};

const GameSpec kS4P3{ForbiddenSpec::of(PatternId::star(4)),
                     PatternId::path(3), 9, Player::max};

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("players and spec validation") {
    CHECK(other(Player::max) == Player::mini);
    CHECK(parse_player("mini") == Player::mini);
    CHECK(format_player(Player::max) == "max");
    CHECK_THROWS_AS(parse_player("Max"), EngineError);

    GameSpec bad = kS4P3;
    bad.n = 0;
    CHECK_THROWS_AS(bad.validate(), EngineError);
    bad.n = 40;
    CHECK_THROWS_AS(bad.validate(), EngineError);
    CHECK_NOTHROW(kS4P3.validate());

    CHECK(Move::of(3, 1) == Move{1, 3});
    CHECK(Move{1, 3} < Move{2, 3});
}

TEST_CASE("legal moves on reference positions") {
    GameSpec spec = kS4P3;
    spec.n = 4;
    GameState state = initial_state(spec);
    state.graph.add_edge_in_place(0, 1);
    state.graph.add_edge_in_place(2, 3);
    auto moves = legal_moves(spec, state);
    CHECK(moves == std::vector<Move>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});

    GameSpec cyc{ForbiddenSpec::cycles(), PatternId::star(4), 5, Player::max};
    GameState tree = initial_state(cyc);
    for (int i = 1; i < 5; ++i) tree.graph.add_edge_in_place(0, i);
    CHECK(legal_moves(cyc, tree).empty());
    CHECK(is_terminal(cyc, tree));

    GameSpec p5{ForbiddenSpec::of(PatternId::path(5)), PatternId::triangle(),
                5, Player::max};
    GameState k4 = initial_state(p5);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.graph.add_edge_in_place(u, v);
    CHECK(legal_moves(p5, k4).empty());
}

TEST_CASE("terminal positions under a degree cap") {
    GameSpec spec = kS4P3;
    GameState cycles = initial_state(spec);
    cycles.graph = cycle_on(cycle_on(Graph(9), {0, 1, 2, 3, 4}), {5, 6, 7, 8});
    CHECK(is_terminal(spec, cycles));

    GameState open = initial_state(spec);
    open.graph.add_edge_in_place(0, 1);
    open.graph.add_edge_in_place(1, 2);
    CHECK_FALSE(is_terminal(spec, open));  // the P3 still closes to a triangle
}

TEST_CASE("apply_move enforces legality") {
    GameSpec spec = kS4P3;
    spec.n = 4;
    GameState state = initial_state(spec);
    CHECK(state.to_move == Player::max);
    state = apply_move(spec, state, {0, 1});
    CHECK(state.to_move == Player::mini);
    CHECK(state.graph.has_edge(0, 1));
    CHECK_THROWS_AS(apply_move(spec, state, {0, 1}), EngineError);
    CHECK_THROWS_AS(apply_move(spec, state, {2, 2}), EngineError);

    // cap the degree: 0 already has neighbors 1 and 2
    state = apply_move(spec, state, {0, 2});
    CHECK_THROWS_AS(apply_move(spec, state, {0, 3}), EngineError);
}

TEST_CASE("final score on reference positions") {
    GameSpec spec = kS4P3;
    Graph two_cycles =
        cycle_on(cycle_on(Graph(9), {0, 1, 2, 3, 4}), {5, 6, 7, 8});
    CHECK(final_score(spec, two_cycles) == 9);

    GameSpec seven = spec;
    seven.n = 7;
    Graph with_edge = cycle_on(Graph(7), {0, 1, 2, 3, 4});
    with_edge.add_edge_in_place(5, 6);
    CHECK(final_score(seven, with_edge) == 5);

    GameSpec p5k3{ForbiddenSpec::of(PatternId::path(5)), PatternId::triangle(),
                  8, Player::max};
    Graph twok4(8);
    for (int base : {0, 4})
        for (int u = base; u < base + 4; ++u)
            for (int v = u + 1; v < base + 4; ++v)
                twok4.add_edge_in_place(u, v);
    CHECK(final_score(p5k3, twok4) == 8);

    CHECK_THROWS_AS(final_score(spec, Graph(9)), EngineError);
}

TEST_CASE("play_out runs to saturation and checks moves") {
    GameSpec spec = kS4P3;
    spec.n = 3;
    FirstLegal naive;
    GameRecord record = play_out(spec, naive, naive);
    CHECK(record.final_score == 3);
    CHECK(record.moves.size() == 3);
    CHECK(record.final_graph.edge_count() == 3);

    AlwaysIllegal broken;
    GameSpec cyc{ForbiddenSpec::cycles(), PatternId::path(3), 4, Player::max};
    CHECK_THROWS_AS(play_out(cyc, naive, broken), EngineError);
}

TEST_CASE("spanning-tree games always last n-1 moves") {
    FirstLegal naive;
    for (int n = 2; n <= 8; ++n) {
        GameSpec spec{ForbiddenSpec::cycles(), PatternId::path(4), n,
                      Player::mini};
        GameRecord record = play_out(spec, naive, naive);
        CHECK(record.moves.size() == static_cast<std::size_t>(n - 1));
        CHECK(is_acyclic(record.final_graph));
        CHECK(components(record.final_graph).size() == 1);
    }
}

TEST_CASE("every saturated degree-capped graph is cycles plus one leftover") {
    // walk every reachable position of the n=9 game; terminal graphs must be
    // disjoint cycles with at most one isolated edge or vertex left over
    GameSpec spec = kS4P3;
    std::set<CanonicalKey> seen;
    std::vector<Graph> queue{Graph(9)};
    seen.insert(canonical_key(queue[0]));
    std::size_t head = 0;
    int terminals = 0;
    while (head < queue.size()) {
        Graph g = queue[head++];
        bool any = false;
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v) {
                if (g.has_edge(u, v) || creates_copy(g, u, v, spec.forbidden))
                    continue;
                any = true;
                Graph h = add_edge(g, u, v);
                if (seen.insert(canonical_key(h)).second) queue.push_back(h);
            }
        if (!any) {
            ++terminals;
            int leftovers = 0;
            for (auto& comp : components(g)) {
                auto code = component_code(
                    g, component_mask(g, comp.front()));
                if (code.front() == 'c') continue;
                ++leftovers;
                CHECK((code == "v" || code == "p2"));
            }
            CHECK(leftovers <= 1);
        }
    }
    CHECK(terminals > 0);
}

TEST_CASE("records serialize and replay") {
    GameSpec spec = kS4P3;
    spec.n = 4;
    FirstLegal naive;
    GameRecord record = play_out(spec, naive, naive);
    std::string json = record_to_json(record);
    CHECK(json.find("\"schema\":\"satgame/record/1\"") != std::string::npos);
    GameRecord back = record_from_json(json);
    CHECK(back.spec == record.spec);
    CHECK(back.moves == record.moves);
    CHECK(back.final_graph == record.final_graph);
    CHECK(back.final_score == record.final_score);

    CHECK_THROWS_AS(record_from_json("{}"), EngineError);
    CHECK_THROWS_AS(record_from_json("not json"), EngineError);
    // tampered score
    std::string bad = json;
    auto pos = bad.rfind(':');
    bad.replace(pos + 1, bad.size() - pos - 2, "999");
    CHECK_THROWS_AS(record_from_json(bad), EngineError);
}

}  // TEST_SUITE
