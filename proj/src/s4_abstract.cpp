#include "satgame/s4_abstract.hpp"

#include <bit>
#include <climits>
#include <sstream>

#include "json.hpp"

namespace satgame {

namespace {

bool p4_scored(const PatternId& scoring) {
    if (scoring.kind != PatternId::Kind::path ||
        (scoring.size != 3 && scoring.size != 4))
        throw EngineError("abstraction covers P3 or P4 scoring only");
    return scoring.size == 4;
}

std::uint64_t pack(const AbstractS4State& s) {
    return (std::uint64_t(s.v) << 32) | (std::uint64_t(s.e) << 20) |
           (std::uint64_t(s.p3) << 8) | (std::uint64_t(s.l) << 1) |
           (s.to_move == Player::max ? 1 : 0);
}

}  // namespace

AbstractLift abstract_from_graph(const Graph& g, const PatternId& scoring,
                                 Player to_move) {
    bool p4 = p4_scored(scoring);
    if (g.max_degree() > 2)
        throw EngineError("abstraction needs max degree <= 2");
    AbstractLift lift;
    lift.state.to_move = to_move;
    std::uint32_t done = 0;
    for (int w = 0; w < g.vertex_count(); ++w) {
        if (done & (1u << w)) continue;
        std::uint32_t comp = component_mask(g, w);
        done |= comp;
        int size = std::popcount(comp);
        int twice = 0;
        for (std::uint32_t m = comp; m;) {
            int x = std::countr_zero(m);
            m &= m - 1;
            twice += std::popcount(g.row(x));
        }
        bool cycle = twice / 2 == size;
        if (cycle) {
            if (p4 && size == 3) lift.banked_deficit -= 3;
            continue;  // C_k scores k paths for its k vertices otherwise
        }
        if (size == 1) ++lift.state.v;
        else if (size == 2) ++lift.state.e;
        else if (size == 3 && p4) ++lift.state.p3;
        else ++lift.state.l;
    }
    return lift;
}

std::vector<AbstractMove> abstract_moves(const AbstractS4State& s,
                                         const PatternId& scoring) {
    bool p4 = p4_scored(scoring);
    std::vector<AbstractMove> out;
    Player next = other(s.to_move);
    auto add = [&](int dv, int de, int dp3, int dl, int delta) {
        AbstractMove m{{s.v + dv, s.e + de, s.p3 + dp3, s.l + dl, next}, delta};
        for (const auto& seen : out)
            if (seen == m) return;
        out.push_back(m);
    };

    if (s.v >= 2) add(-2, +1, 0, 0, 0);               // pair two vertices
    if (s.e >= 2) add(0, -2, 0, +1, 0);               // edge + edge -> P4
    if (s.l >= 1) {
        if (s.v >= 1) add(-1, 0, 0, 0, 0);            // grow a long path
        if (s.e >= 1) add(0, -1, 0, 0, 0);
        if (s.l >= 2) add(0, 0, 0, -1, 0);            // join two long paths
        add(0, 0, 0, -1, 0);                          // close one (cycle out)
    }
    if (p4) {
        if (s.v >= 1 && s.e >= 1) add(-1, -1, +1, 0, 0);  // vertex + edge
        if (s.p3 >= 1) {
            if (s.v >= 1) add(-1, 0, -1, +1, 0);      // P3 + vertex -> P4
            if (s.e >= 1) add(0, -1, -1, +1, 0);      // P3 + edge -> P5
            if (s.p3 >= 2) add(0, 0, -2, +1, 0);      // P3 + P3 -> P6
            if (s.l >= 1) add(0, 0, -1, 0, 0);        // absorb into long path
            add(0, 0, -1, 0, -3);                     // close into a triangle
        }
    } else {
        if (s.v >= 1 && s.e >= 1) add(-1, -1, 0, +1, 0);  // makes a P3 = long
    }
    return out;
}

bool abstract_terminal(const AbstractS4State& s) {
    return s.p3 == 0 && s.l == 0 && s.v + s.e <= 1;
}

int terminal_deficit(const AbstractS4State& s) { return -s.v - 2 * s.e; }

AbstractSolver::AbstractSolver(PatternId scoring) : scoring_(scoring) {
    p4_scored(scoring);  // validate
}

int AbstractSolver::deficit(const AbstractS4State& s) {
    if (abstract_terminal(s)) return terminal_deficit(s);
    auto key = pack(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool maxing = s.to_move == Player::max;
    int best = maxing ? INT_MIN : INT_MAX;
    for (const auto& m : abstract_moves(s, scoring_)) {
        int val = m.deficit_delta + deficit(m.to);
        best = maxing ? std::max(best, val) : std::min(best, val);
    }
    memo_.emplace(key, best);
    return best;
}

int abstract_solve(const AbstractS4State& s, const PatternId& scoring) {
    AbstractSolver solver(scoring);
    return solver.deficit(s);
}

int abstract_game_deficit(int n, Player starter, const PatternId& scoring) {
    if (n < 1) throw EngineError("vertex count out of range");
    return abstract_solve({n, 0, 0, 0, starter}, scoring);
}

long long abstract_game_value(int n, Player starter,
                              const PatternId& scoring) {
    return n + abstract_game_deficit(n, starter, scoring);
}

long long p3_score_closed_form(int n, Player starter) {
    if (n < 8) throw EngineError("closed form starts at n = 8");
    int i = starter == Player::max ? 1 : 2;
    return (n % 2) != (i % 2) ? n : n - 1;
}

std::vector<TableRow> score_table(const PatternId& scoring, int max_n) {
    AbstractSolver solver(scoring);
    std::vector<TableRow> rows;
    for (int n = 1; n <= max_n; ++n)
        rows.push_back({n,
                        n + solver.deficit({n, 0, 0, 0, Player::max}),
                        n + solver.deficit({n, 0, 0, 0, Player::mini})});
    return rows;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    out << "n,s1,s2\n";
    for (const auto& r : rows)
        out << r.n << "," << r.s1 << "," << r.s2 << "\n";
    return out.str();
}

std::string table_to_json(const std::vector<TableRow>& rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n}, {"s1", r.s1}, {"s2", r.s2}});
    return arr.dump();
}

}  // namespace satgame
