#include "doctest.h"

#include <cstdio>
#include <set>
#include <vector>

#include "satgame/s4_abstract.hpp"
#include "satgame/solver.hpp"

using namespace satgame;

namespace {

GameSpec spec_of(const std::string& forbid, const std::string& score, int n,
                 Player starter) {
    return {parse_forbidden(forbid), parse_pattern(score), n, starter};
}

/// Plays the legal move whose successor has the least canonical key — a
/// label-independent rule, so pooling isomorphic states is sound.
struct ClaimCanonical final : Policy {
    std::string id() const override { return "test_canonical"; }
    std::string describe() const override { return "least canonical child"; }
    bool applicable(const GameSpec&) const override { return true; }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move>) const override {
        Move best{};
        std::pair<CanonicalKey, Move> pick;
        bool found = false;
        for (Move m : legal_moves(spec, state)) {
            std::pair<CanonicalKey, Move> cand{
                canonical_key(add_edge(state.graph, m.u, m.v)), m};
            if (!found || cand < pick) {
                pick = cand;
                best = m;
                found = true;
            }
        }
        return best;
    }
    std::optional<std::string> fingerprint(
        const GameSpec&, const GameState&,
        std::span<const Move>) const override {
        return "";
    }
};

/// Same choices, but opts out of memoization.
struct ClaimCanonicalOpaque final : Policy {
    std::string id() const override { return "test_canonical_opaque"; }
    std::string describe() const override { return "least canonical child"; }
    bool applicable(const GameSpec&) const override { return true; }
    Move select_move(const GameSpec& spec, const GameState& state,
                     std::span<const Move> history) const override {
        return ClaimCanonical{}.select_move(spec, state, history);
    }
};

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("known game values") {
    CHECK(solve(spec_of("S4", "P3", 4, Player::max)).value == 4);
    CHECK(solve(spec_of("S4", "P3", 5, Player::mini)).value == 5);
    CHECK(solve(spec_of("S4", "P6", 8, Player::max)).value == 0);
    CHECK(solve(spec_of("S4", "P6", 8, Player::mini)).value == 0);
    // one-move and zero-move games
    CHECK(solve(spec_of("cycles", "P3", 2, Player::max)).value == 0);
    CHECK(solve(spec_of("S4", "P3", 1, Player::max)).value == 0);
}

TEST_CASE("agrees with the memo-free reference everywhere small") {
    std::vector<GameSpec> specs;
    for (int n = 2; n <= 6; ++n)
        for (Player p : {Player::max, Player::mini}) {
            specs.push_back(spec_of("S4", "P3", n, p));
            specs.push_back(spec_of("S4", "P4", n, p));
            specs.push_back(spec_of("P5", "K3", n, p));
            specs.push_back(spec_of("cycles", "S4", n, p));
            specs.push_back(spec_of("P4", "P3", n, p));
        }
    for (const auto& spec : specs)
        CHECK(solve(spec).value ==
              reference_solve_value(spec, initial_state(spec)));
}

TEST_CASE("mid-position values match the counter abstraction") {
    // P3 component + 5 isolated vertices, Mini to move
    GameSpec spec = spec_of("S4", "P3", 8, Player::max);
    Solver solver(spec);
    GameState state = initial_state(spec);
    state.graph.add_edge_in_place(0, 1);
    state.graph.add_edge_in_place(1, 2);
    state.to_move = Player::mini;
    auto lift = abstract_from_graph(state.graph, spec.score, Player::mini);
    CHECK(lift.state == AbstractS4State{5, 0, 0, 1, Player::mini});
    long long via_counters =
        8 + abstract_solve(lift.state, spec.score) + lift.banked_deficit;
    CHECK(solver.value(state) == via_counters);

    // concrete spot-check of a deficit fact: a fresh n=8 game, Mini first
    GameSpec g8 = spec_of("S4", "P3", 8, Player::mini);
    CHECK(solve(g8).value <= 8 - 1);
}

TEST_CASE("principal variation replays to the claimed value") {
    for (auto spec :
         {spec_of("S4", "P3", 6, Player::max), spec_of("S4", "P4", 6, Player::mini),
          spec_of("P5", "K3", 6, Player::max), spec_of("cycles", "S4", 7, Player::mini)}) {
        SolveResult result = solve(spec);
        GameState state = initial_state(spec);
        for (Move m : result.principal_variation)
            state = apply_move(spec, state, m);
        CHECK(is_terminal(spec, state));
        CHECK(final_score(spec, state.graph) == result.value);
        // a second run shares no state but must print the same line
        SolveResult again = solve(spec);
        CHECK(again.principal_variation == result.principal_variation);
        CHECK(again.value == result.value);
    }
    auto pv = principal_variation(spec_of("S4", "P3", 3, Player::max));
    CHECK(pv.size() == 3);
}

TEST_CASE("root parallelism changes nothing observable") {
    for (auto spec : {spec_of("S4", "P4", 8, Player::max),
                      spec_of("P5", "K3", 6, Player::mini)}) {
        SolveResult serial = solve(spec, {0, 1});
        SolveResult wide = solve(spec, {0, 4});
        CHECK(serial.value == wide.value);
        CHECK(serial.principal_variation == wide.principal_variation);
    }
}

TEST_CASE("node budget aborts cleanly") {
    CHECK_THROWS_AS(solve(spec_of("S4", "P3", 9, Player::max), {50, 1}),
                    BudgetExceeded);
    try {
        solve(spec_of("S4", "P3", 9, Player::max), {50, 1});
    } catch (const BudgetExceeded& e) {
        CHECK(e.nodes == 50);
    }
}

TEST_CASE("pinning one side brackets the optimum") {
    ClaimCanonical greedy;
    for (auto spec : {spec_of("S4", "P3", 7, Player::max),
                      spec_of("S4", "P4", 7, Player::mini)}) {
        long long opt = solve(spec).value;
        CHECK(best_response_value(spec, greedy, Player::max) <= opt);
        CHECK(best_response_value(spec, greedy, Player::mini) >= opt);
    }
}

TEST_CASE("memoized and unmemoized pinned traversals agree") {
    ClaimCanonical memo;
    ClaimCanonicalOpaque opaque;
    for (int n = 4; n <= 7; ++n)
        for (Player side : {Player::max, Player::mini})
            for (auto forbid : {"S4", "P5"}) {
                GameSpec spec = spec_of(forbid, "P3", n, Player::max);
                CHECK(best_response_value(spec, memo, side) ==
                      best_response_value(spec, opaque, side));
            }
}

TEST_CASE("value cache round-trips and refuses strangers") {
    GameSpec spec = spec_of("S4", "P3", 7, Player::max);
    std::string path = std::string(SATGAME_FIXTURE_DIR) + "/tmp_cache.txt";
    {
        Solver solver(spec);
        solver.solve();
        solver.save_cache(path);
    }
    {
        Solver solver(spec);
        solver.load_cache(path);
        SolveResult warmed = solver.solve();
        CHECK(warmed.value == 7);
        CHECK(warmed.nodes_expanded <= 1);  // everything came from the cache
    }
    CacheInfo info = read_cache_info(path);
    CHECK(info.fingerprint == "S4|P3|n=7");
    CHECK(info.entries > 0);
    {
        GameSpec liar = spec_of("S4", "P3", 8, Player::max);
        Solver solver(liar);
        CHECK_THROWS_AS(solver.load_cache(path), EngineError);
    }
    std::remove(path.c_str());
}

}  // TEST_SUITE
