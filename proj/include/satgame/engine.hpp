#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "satgame/patterns.hpp"

namespace satgame {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a strategy reaches a position its case analysis does not
/// cover. Never caught and patched internally: the verification harness
/// surfaces these as findings.
struct StrategyGap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Player { max, mini };

inline Player other(Player p) {
    return p == Player::max ? Player::mini : Player::max;
}

std::string format_player(Player p);
Player parse_player(const std::string& text);

/// One game: claim edges of K_n, stay `forbidden`-free; the final graph's
/// `score`-count is what Max maximizes and Mini minimizes.
struct GameSpec {
    ForbiddenSpec forbidden;
    PatternId score;
    int n = 1;
    Player starter = Player::max;

    void validate() const;
    bool operator==(const GameSpec&) const = default;
};

struct GameState {
    Graph graph;
    Player to_move = Player::max;
};

struct Move {
    int u = 0;
    int v = 0;

    static Move of(int a, int b) {
        return a < b ? Move{a, b} : Move{b, a};
    }
    auto operator<=>(const Move&) const = default;
};

GameState initial_state(const GameSpec& spec);

/// All claimable non-edges in (u,v)-lexicographic order.
std::vector<Move> legal_moves(const GameSpec& spec, const GameState& state);
bool is_move_legal(const GameSpec& spec, const GameState& state, Move m);
bool is_terminal(const GameSpec& spec, const GameState& state);

/// Saturation is a property of the graph alone.
bool is_saturated(const GameSpec& spec, const Graph& g);

/// Throws on illegal moves, so every reachable state stays forbidden-free.
GameState apply_move(const GameSpec& spec, const GameState& state, Move m);

/// Score-count of a finished game. Refuses unsaturated graphs: mid-game
/// counting goes through count_copies directly.
long long final_score(const GameSpec& spec, const Graph& g);

struct GameRecord {
    GameSpec spec;
    std::vector<Move> moves;
    Graph final_graph;
    long long final_score = 0;
};

/// A deterministic, total decision rule for one side. Implementations
/// recompute any stage logic from the move history, so a call is a pure
/// function of (spec, state, history).
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string id() const = 0;
    virtual std::string describe() const = 0;
    virtual bool applicable(const GameSpec& spec) const = 0;

    /// Pick a move. `history` holds every move so far (both sides).
    /// Throws StrategyGap on positions outside the policy's case analysis.
    virtual Move select_move(const GameSpec& spec, const GameState& state,
                             std::span<const Move> history) const = 0;

    /// Memoization summary of whatever the policy reads besides the current
    /// graph: stage counters and similar. Empty string for pure
    /// state-keyed policies; nullopt opts out of best-response memoization.
    virtual std::optional<std::string> fingerprint(
        const GameSpec& spec, const GameState& state,
        std::span<const Move> history) const {
        (void)spec;
        (void)state;
        (void)history;
        return std::nullopt;
    }

    /// True when select_move reads the adversary's last move, in which case
    /// memoization must key on the marked canonical form.
    virtual bool uses_last_move() const { return false; }
};

/// Alternating play from the empty graph until saturation. Throws
/// EngineError (with the offending history in the message) if a policy
/// returns an illegal move.
GameRecord play_out(const GameSpec& spec, const Policy& for_max,
                    const Policy& for_mini);

std::string record_to_json(const GameRecord& record);
GameRecord record_from_json(const std::string& text);

}  // namespace satgame
