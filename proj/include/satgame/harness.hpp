#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "satgame/engine.hpp"
#include "satgame/solver.hpp"

namespace satgame {

/// Outcome of one verification check. "gap" marks a claim the computation
/// contradicts or a strategy position outside its case analysis: evidence to
/// audit, not an artifact failure. "budget" means the node budget ran out
/// before a verdict.
enum class Verdict { pass, fail, gap, budget };

std::string format_verdict(Verdict v);

/// Result of one check or fuzz run. Serialization is byte-identical across
/// runs with the same inputs, so wall-clock time stays out of the JSON;
/// `runtime_ms` only feeds the human summary table.
struct VerificationReport {
    std::string check_id;
    std::string params;
    std::string claim;
    Verdict verdict = Verdict::pass;
    std::string details;
    std::vector<std::pair<std::string, long long>> stats;
    std::optional<GameRecord> counterexample;
    long long runtime_ms = 0;
};

/// One line, schema "satgame/report/1".
std::string report_to_json(const VerificationReport& r);

struct CheckInfo {
    std::string id;
    std::string summary;
};

/// Ids accepted by run_check, in the order run_all_checks reports them.
const std::vector<CheckInfo>& check_catalog();

struct CheckOptions {
    int threads = 1;        // solver root + check queue parallelism
    long long max_nodes = 0;  // per solver; 0 = SATGAME_MAX_NODES or default
};

/// Run one catalog check. Deterministic given (id, options); budget blowout
/// yields verdict "budget" instead of throwing. Unknown ids throw.
VerificationReport run_check(const std::string& check_id,
                             const CheckOptions& opts = {});

/// Every catalog check; independent jobs on a small work queue, results in
/// catalog order regardless of completion order.
std::vector<VerificationReport> run_all_checks(const CheckOptions& opts = {});

/// Randomized adversary games against `fixed` playing `side`: asserts every
/// selected move is legal and collects score statistics. Strategy gaps are
/// counted; the first offending game is attached as the counterexample.
VerificationReport fuzz_policy(const Policy& fixed, Player side,
                               const GameSpec& spec, int games,
                               std::uint64_t seed);

/// All isomorphism classes of trees on exactly n vertices (n <= 10),
/// canonical-key deduplicated, sorted by key.
std::vector<Graph> enumerate_trees(int n);

struct WalkLimits {
    long long max_states = 0;  // 0 = SATGAME_MAX_NODES or default
};

struct WalkStats {
    long long states = 0;     // distinct states visited
    long long terminals = 0;  // saturated states among them
};

/// Visit every state reachable when `side` is pinned to `fixed` and the
/// adversary tries everything. States pool under their (marked) canonical
/// key plus policy fingerprint when the policy permits; the visitor sees one
/// representative per class. Throws BudgetExceeded past the state limit and
/// lets StrategyGap propagate.
WalkStats exhaustive_policy_walk(
    const GameSpec& spec, const Policy& fixed, Player side,
    const std::function<void(const GameState&, std::span<const Move>)>& visit,
    const WalkLimits& limits = {});

}  // namespace satgame
