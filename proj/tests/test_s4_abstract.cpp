#include "doctest.h"

#include <algorithm>
#include <vector>

#include "satgame/s4_abstract.hpp"

using namespace satgame;

namespace {

const PatternId kP3 = PatternId::path(3);
const PatternId kP4 = PatternId::path(4);

AbstractS4State st(int v, int e, int p3, int l, Player t) {
    return {v, e, p3, l, t};
}

Graph cycle_on(Graph g, const std::vector<int>& verts) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        g.add_edge_in_place(verts[i], verts[(i + 1) % verts.size()]);
    return g;
}

bool has_successor(const std::vector<AbstractMove>& moves,
                   const AbstractS4State& to, int delta) {
    return std::find(moves.begin(), moves.end(), AbstractMove{to, delta}) !=
           moves.end();
}

}  // namespace

TEST_SUITE("s4_abstract") {

TEST_CASE("lifting graphs into counters") {
    // C5 + P4 + two isolated vertices
    Graph g = cycle_on(Graph(11), {0, 1, 2, 3, 4});
    for (int i = 5; i < 8; ++i) g.add_edge_in_place(i, i + 1);
    auto lift = abstract_from_graph(g, kP3, Player::mini);
    CHECK(lift.state == st(2, 0, 0, 1, Player::mini));
    CHECK(lift.banked_deficit == 0);

    // triangle + K2 under P4 scoring: the triangle banks -3
    Graph h = cycle_on(Graph(5), {0, 1, 2});
    h.add_edge_in_place(3, 4);
    auto lifth = abstract_from_graph(h, kP4, Player::max);
    CHECK(lifth.state == st(0, 1, 0, 0, Player::max));
    CHECK(lifth.banked_deficit == -3);
    // same graph under P3 scoring: the triangle banks nothing
    auto lifth3 = abstract_from_graph(h, kP3, Player::max);
    CHECK(lifth3.state == st(0, 1, 0, 0, Player::max));
    CHECK(lifth3.banked_deficit == 0);

    auto empty = abstract_from_graph(Graph(6), kP3, Player::max);
    CHECK(empty.state == st(6, 0, 0, 0, Player::max));

    // P3 components split by scoring: separate counter only under P4
    Graph p3c(3);
    p3c.add_edge_in_place(0, 1);
    p3c.add_edge_in_place(1, 2);
    CHECK(abstract_from_graph(p3c, kP3, Player::max).state ==
          st(0, 0, 0, 1, Player::max));
    CHECK(abstract_from_graph(p3c, kP4, Player::max).state ==
          st(0, 0, 1, 0, Player::max));

    Graph deg3(4);
    deg3.add_edge_in_place(0, 1);
    deg3.add_edge_in_place(0, 2);
    deg3.add_edge_in_place(0, 3);
    CHECK_THROWS_AS(abstract_from_graph(deg3, kP3, Player::max), EngineError);
    CHECK_THROWS_AS(abstract_from_graph(Graph(3), PatternId::path(5),
                                        Player::max),
                    EngineError);
}

TEST_CASE("successor sets") {
    auto moves = abstract_moves(st(2, 1, 0, 0, Player::max), kP3);
    REQUIRE(moves.size() == 2);
    CHECK(has_successor(moves, st(0, 2, 0, 0, Player::mini), 0));
    CHECK(has_successor(moves, st(1, 0, 0, 1, Player::mini), 0));

    auto lone = abstract_moves(st(0, 0, 0, 1, Player::mini), kP3);
    REQUIRE(lone.size() == 1);
    CHECK(has_successor(lone, st(0, 0, 0, 0, Player::max), 0));

    // an edge and a P3 under P4 scoring: join them, or close the triangle
    auto ep3 = abstract_moves(st(0, 1, 1, 0, Player::max), kP4);
    REQUIRE(ep3.size() == 2);
    CHECK(has_successor(ep3, st(0, 0, 0, 1, Player::mini), 0));
    CHECK(has_successor(ep3, st(0, 1, 0, 0, Player::mini), -3));

    CHECK(abstract_terminal(st(0, 0, 0, 0, Player::max)));
    CHECK(abstract_terminal(st(1, 0, 0, 0, Player::max)));
    CHECK(abstract_terminal(st(0, 1, 0, 0, Player::max)));
    CHECK_FALSE(abstract_terminal(st(1, 1, 0, 0, Player::max)));
    CHECK_FALSE(abstract_terminal(st(0, 0, 1, 0, Player::max)));
    CHECK_FALSE(abstract_terminal(st(0, 0, 0, 1, Player::max)));
    CHECK(terminal_deficit(st(0, 1, 0, 0, Player::max)) == -2);
    CHECK(terminal_deficit(st(1, 0, 0, 0, Player::max)) == -1);
}

TEST_CASE("whole-game values, short scoring") {
    // first move is forced in counter terms
    for (int n = 4; n <= 20; ++n)
        for (Player p : {Player::max, Player::mini})
            CHECK(abstract_solve(st(n, 0, 0, 0, p), kP3) ==
                  abstract_solve(st(n - 2, 1, 0, 0, other(p)), kP3));

    CHECK(abstract_solve(st(8, 0, 0, 0, Player::mini), kP3) <= -1);
    CHECK(abstract_solve(st(11, 0, 0, 0, Player::max), kP3) <= -1);
    CHECK(abstract_solve(st(12, 0, 0, 0, Player::mini), kP3) <= -1);
    CHECK(abstract_solve(st(6, 1, 0, 0, Player::mini), kP3) == 0);

    // deficits of full games stay in the narrow band
    AbstractSolver solver(kP3);
    for (int n = 1; n <= 40; ++n)
        for (Player p : {Player::max, Player::mini}) {
            int d = solver.deficit(st(n, 0, 0, 0, p));
            CHECK(d <= 0);
            CHECK(d >= -2);
        }
}

TEST_CASE("closed form from n = 8") {
    CHECK(p3_score_closed_form(100, Player::max) == 100);
    CHECK(p3_score_closed_form(9, Player::max) == 8);
    CHECK(p3_score_closed_form(8, Player::mini) == 7);
    CHECK_THROWS_AS(p3_score_closed_form(7, Player::max), EngineError);
    AbstractSolver solver(kP3);
    for (int n = 8; n <= 24; ++n) {
        CHECK(n + solver.deficit(st(n, 0, 0, 0, Player::max)) ==
              p3_score_closed_form(n, Player::max));
        CHECK(n + solver.deficit(st(n, 0, 0, 0, Player::mini)) ==
              p3_score_closed_form(n, Player::mini));
    }
}

TEST_CASE("short-scoring table matches the reference values") {
    std::vector<long long> s1 = {0, 0, 3, 4, 4, 6, 7, 8, 8, 10, 10, 12};
    std::vector<long long> s2 = {0, 0, 3, 4, 5, 5, 7, 7, 9, 9, 11, 11};
    auto rows = score_table(kP3, 12);
    REQUIRE(rows.size() == 12);
    for (int i = 0; i < 12; ++i) {
        CHECK(rows[i].n == i + 1);
        CHECK(rows[i].s1 == s1[i]);
        CHECK(rows[i].s2 == s2[i]);
    }
    auto csv = table_to_csv(rows);
    CHECK(csv.substr(0, 8) == "n,s1,s2\n");
    CHECK(csv.find("12,12,11\n") != std::string::npos);
    CHECK(csv.find("5,4,5\n") != std::string::npos);
    auto json = table_to_json(rows);
    CHECK(json.find("{\"n\":3,\"s1\":3,\"s2\":3}") != std::string::npos);
}

TEST_CASE("long-scoring finite values and guarantees") {
    AbstractSolver solver(kP4);
    // tiny games never make a P4
    for (int n = 1; n <= 3; ++n)
        for (Player p : {Player::max, Player::mini})
            CHECK(solver.deficit(st(n, 0, 0, 0, p)) == -n);
    CHECK(solver.deficit(st(4, 0, 0, 0, Player::max)) == 0);
    CHECK(solver.deficit(st(4, 0, 0, 0, Player::mini)) == 0);
    CHECK(solver.deficit(st(5, 0, 0, 0, Player::mini)) == 0);
    CHECK(solver.deficit(st(8, 0, 0, 0, Player::max)) <= -2);
    CHECK(solver.deficit(st(9, 0, 0, 0, Player::mini)) <= -2);
    // the matching-based floor
    for (int n = 4; n <= 40; ++n)
        for (Player p : {Player::max, Player::mini})
            CHECK(solver.deficit(st(n, 0, 0, 0, p)) >= -3);
    // and it is tight on every fourth count when Mini starts
    for (int l = 1; l <= 9; ++l)
        CHECK(solver.deficit(st(4 * l + 3, 0, 0, 0, Player::mini)) == -3);
}

TEST_CASE("scoring comparison and recursions") {
    AbstractSolver p3(kP3);
    AbstractSolver p4(kP4);
    for (int n = 1; n <= 40; ++n)
        for (Player p : {Player::max, Player::mini})
            CHECK(n + p4.deficit(st(n, 0, 0, 0, p)) <=
                  n + p3.deficit(st(n, 0, 0, 0, p)));

    auto d1 = [&](int n) { return p3.deficit(st(n, 0, 0, 0, Player::max)); };
    auto d2 = [&](int n) { return p3.deficit(st(n, 0, 0, 0, Player::mini)); };
    for (int l = 3; l <= 30; ++l) {
        CHECK(d2(2 * l) <= std::max(d2(2 * l - 4), d1(2 * l - 5)));
        CHECK(d1(2 * l + 1) <= std::max(d2(2 * l - 2), d1(2 * l - 3)));
    }
    auto q1 = [&](int n) { return p4.deficit(st(n, 0, 0, 0, Player::max)); };
    auto q2 = [&](int n) { return p4.deficit(st(n, 0, 0, 0, Player::mini)); };
    for (int n = 9; n <= 40; ++n) {
        CHECK(q1(n) <= q1(n - 4));
        CHECK(q2(n) <= std::max(q2(n - 4), q1(n - 5)));
    }
}

}  // TEST_SUITE
