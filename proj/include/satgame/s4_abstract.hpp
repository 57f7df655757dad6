#pragma once

#include <unordered_map>
#include <vector>

#include "satgame/engine.hpp"

namespace satgame {

/// Counter view of a game forbidding S_4 (max degree 2): every position is a
/// disjoint union of paths and cycles, and play only depends on how many
/// components of each rough size exist. Finished cycles leave the state and
/// bank their score effect instead.
///
/// Under P3 scoring a "long" path is any path on >= 3 vertices. Under P4
/// scoring, P3 components behave differently from longer paths (they can
/// still close into a triangle, which scores no P4), so they get their own
/// counter and "long" means >= 4 vertices.
struct AbstractS4State {
    int v = 0;    // isolated vertices
    int e = 0;    // isolated edges
    int p3 = 0;   // P3 components; always 0 under P3 scoring
    int l = 0;    // long paths
    Player to_move = Player::max;

    bool operator==(const AbstractS4State&) const = default;
};

/// Deficit = final score - n. The banked part tracks components already
/// removed (each cycle C_k holds k paths of either scored length, except the
/// triangle, which holds zero P4's).
struct AbstractLift {
    AbstractS4State state;
    int banked_deficit = 0;
};

struct AbstractMove {
    AbstractS4State to;     // to_move already flipped
    int deficit_delta = 0;  // banked by making this move
    bool operator==(const AbstractMove&) const = default;
};

/// Requires max degree <= 2 and path scoring of length 3 or 4.
AbstractLift abstract_from_graph(const Graph& g, const PatternId& scoring,
                                 Player to_move);

/// Complete successor list, deduplicated on (counters, delta).
std::vector<AbstractMove> abstract_moves(const AbstractS4State& s,
                                         const PatternId& scoring);

/// No move exists exactly when only one stray vertex or edge remains.
bool abstract_terminal(const AbstractS4State& s);
int terminal_deficit(const AbstractS4State& s);  // -v - 2e

/// Minimax deficit with a shared memo; reuse one instance for table sweeps.
class AbstractSolver {
public:
    explicit AbstractSolver(PatternId scoring);
    int deficit(const AbstractS4State& s);

private:
    PatternId scoring_;
    std::unordered_map<std::uint64_t, int> memo_;
};

/// One-shot convenience wrapper.
int abstract_solve(const AbstractS4State& s, const PatternId& scoring);

/// Whole-game deficit [n] with the given player starting.
int abstract_game_deficit(int n, Player starter, const PatternId& scoring);
long long abstract_game_value(int n, Player starter, const PatternId& scoring);

/// Closed form for the P3-scoring game, valid from n = 8 on: n when n and
/// the starter index (Max=1, Mini=2) have different parity, n-1 otherwise.
long long p3_score_closed_form(int n, Player starter);

struct TableRow {
    int n = 0;
    long long s1 = 0;
    long long s2 = 0;
    bool operator==(const TableRow&) const = default;
};

/// Rows (n, s1, s2) for n = 1..max_n under the given path scoring.
std::vector<TableRow> score_table(const PatternId& scoring, int max_n);

std::string table_to_csv(const std::vector<TableRow>& rows);
std::string table_to_json(const std::vector<TableRow>& rows);

}  // namespace satgame
