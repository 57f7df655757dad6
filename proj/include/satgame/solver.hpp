#pragma once

#include <array>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "satgame/engine.hpp"

namespace satgame {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(long long n)
        : std::runtime_error("node budget exceeded after " +
                             std::to_string(n) + " expansions"),
          nodes(n) {}
    long long nodes;
};

struct SolveResult {
    long long value = 0;
    long long nodes_expanded = 0;
    long long cache_hits = 0;
    std::vector<Move> principal_variation;
};

/// Sharded value store. Keys always end in "|x" (Max to move) or "|m";
/// concurrent writers racing on a key write the same value, so last-write
/// semantics are safe.
class TranspositionTable {
public:
    std::optional<long long> find(const std::string& key) const;
    void insert(const std::string& key, long long value);
    std::size_t size() const;
    void for_each(const std::function<void(const std::string&, long long)>& fn) const;

private:
    static constexpr std::size_t kShards = 64;
    std::size_t shard(const std::string& key) const {
        return std::hash<std::string>{}(key) % kShards;
    }
    mutable std::array<std::mutex, kShards> locks_;
    std::array<std::unordered_map<std::string, long long>, kShards> maps_;
};

struct SolverOptions {
    long long max_nodes = 0;  // 0: SATGAME_MAX_NODES env var, else 10^8
    int threads = 1;
};

/// Exact minimax over canonicalized states. No pruning windows: every stored
/// value is the true value of its position, so the table composes across
/// subgames and can be persisted.
class Solver {
public:
    explicit Solver(GameSpec spec, SolverOptions opts = {});

    /// Exact value of any forbidden-free position under optimal play.
    long long value(const GameState& state);

    /// Value + statistics + one optimal line from the empty graph.
    SolveResult solve();

    /// Exact value when `side` is pinned to `fixed` and the other player
    /// optimizes against it. Memoized when the policy can summarize itself;
    /// full traversal otherwise.
    long long best_response(const Policy& fixed, Player side);

    long long nodes_expanded() const { return nodes_.load(); }
    long long cache_hits() const { return hits_.load(); }

    void load_cache(const std::string& path);
    void save_cache(const std::string& path) const;

    const GameSpec& spec() const { return spec_; }

private:
    long long value_serial(const GameState& state);
    long long best_response_walk(const GameState& state, const Policy& fixed,
                                 Player side, std::vector<Move>& history);
    void bump_nodes();

    GameSpec spec_;
    long long budget_;
    int threads_;
    TranspositionTable table_;
    std::atomic<long long> nodes_{0};
    std::atomic<long long> hits_{0};
};

/// Memo-free, dedup-free minimax. Exponential; the testing yardstick that
/// the canonical-key machinery is checked against.
long long reference_solve_value(const GameSpec& spec, const GameState& state);

SolveResult solve(const GameSpec& spec, const SolverOptions& opts = {});
long long best_response_value(const GameSpec& spec, const Policy& fixed,
                              Player side, const SolverOptions& opts = {});
std::vector<Move> principal_variation(const GameSpec& spec,
                                      const SolverOptions& opts = {});

/// Identity of a value cache: forbidden pattern, score pattern, and n.
/// Values are starter-independent (they are per-position), so the starter
/// is deliberately left out.
std::string spec_fingerprint(const GameSpec& spec);

struct CacheInfo {
    std::string fingerprint;
    std::size_t entries = 0;
};
CacheInfo read_cache_info(const std::string& path);

}  // namespace satgame
