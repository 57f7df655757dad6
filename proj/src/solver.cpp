#include "satgame/solver.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace satgame {

std::optional<long long> TranspositionTable::find(const std::string& key) const {
    std::size_t s = shard(key);
    std::lock_guard<std::mutex> lock(locks_[s]);
    auto it = maps_[s].find(key);
    if (it == maps_[s].end()) return std::nullopt;
    return it->second;
}

void TranspositionTable::insert(const std::string& key, long long value) {
    std::size_t s = shard(key);
    std::lock_guard<std::mutex> lock(locks_[s]);
    maps_[s][key] = value;
}

std::size_t TranspositionTable::size() const {
    std::size_t total = 0;
    for (std::size_t s = 0; s < kShards; ++s) {
        std::lock_guard<std::mutex> lock(locks_[s]);
        total += maps_[s].size();
    }
    return total;
}

void TranspositionTable::for_each(
    const std::function<void(const std::string&, long long)>& fn) const {
    for (std::size_t s = 0; s < kShards; ++s) {
        std::lock_guard<std::mutex> lock(locks_[s]);
        for (const auto& [key, value] : maps_[s]) fn(key, value);
    }
}

namespace {

long long resolve_budget(long long requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SATGAME_MAX_NODES")) {
        char* end = nullptr;
        long long parsed = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && parsed > 0) return parsed;
    }
    return 100'000'000;
}

std::string position_key(const Graph& g, Player to_move) {
    std::string key = canonical_key(g);
    key += to_move == Player::max ? "|x" : "|m";
    return key;
}

constexpr const char* kCacheHeader = "satgame/cache/1";

}  // namespace

Solver::Solver(GameSpec spec, SolverOptions opts)
    : spec_(std::move(spec)),
      budget_(resolve_budget(opts.max_nodes)),
      threads_(std::max(1, opts.threads)) {
    spec_.validate();
}

void Solver::bump_nodes() {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_)
        throw BudgetExceeded(budget_);
}

long long Solver::value_serial(const GameState& state) {
    std::string key = position_key(state.graph, state.to_move);
    if (auto hit = table_.find(key)) {
        hits_.fetch_add(1, std::memory_order_relaxed);
        return *hit;
    }
    bump_nodes();
    auto moves = legal_moves(spec_, state);
    long long out;
    if (moves.empty()) {
        out = count_copies(state.graph, spec_.score);
    } else {
        bool maxing = state.to_move == Player::max;
        out = maxing ? LLONG_MIN : LLONG_MAX;
        std::set<std::string> seen;
        for (Move m : moves) {
            GameState child{add_edge(state.graph, m.u, m.v),
                            other(state.to_move)};
            if (!seen.insert(canonical_key(child.graph)).second) continue;
            long long val = value_serial(child);
            out = maxing ? std::max(out, val) : std::min(out, val);
        }
    }
    table_.insert(key, out);
    return out;
}

long long Solver::value(const GameState& state) { return value_serial(state); }

SolveResult Solver::solve() {
    GameState root = initial_state(spec_);
    if (threads_ > 1) {
        // warm the table in parallel, then finish serially. Split past the
        // first plies: the empty graph's opening moves all collapse to one
        // canonical class, so a depth-one split would starve every worker
        // but one. Descend breadth-first (deduplicated per level; parity
        // makes to_move uniform) until the frontier can feed the pool.
        std::vector<GameState> frontier{root};
        const std::size_t want = 4 * static_cast<std::size_t>(threads_);
        for (int depth = 0; depth < 4 && frontier.size() < want; ++depth) {
            std::vector<GameState> next;
            std::set<std::string> seen;
            for (const GameState& st : frontier)
                for (Move m : legal_moves(spec_, st)) {
                    GameState child{add_edge(st.graph, m.u, m.v),
                                    other(st.to_move)};
                    if (seen.insert(canonical_key(child.graph)).second)
                        next.push_back(child);
                }
            if (next.empty()) break;
            frontier = std::move(next);
        }
        std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads_)
#endif
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            try {
                value_serial(frontier[i]);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    SolveResult result;
    result.value = value_serial(root);
    result.nodes_expanded = nodes_.load();
    result.cache_hits = hits_.load();

    // walk one optimal line; ties break toward the least canonical child
    // key, then the least move, so reruns print identical variations
    GameState state = root;
    while (true) {
        auto moves = legal_moves(spec_, state);
        if (moves.empty()) break;
        long long want = value_serial(state);
        bool found = false;
        std::pair<std::string, Move> pick;
        GameState pick_state;
        for (Move m : moves) {
            GameState child{add_edge(state.graph, m.u, m.v),
                            other(state.to_move)};
            long long val = value_serial(child);
            if (val != want) continue;  // some child always attains the optimum
            std::pair<std::string, Move> cand{canonical_key(child.graph), m};
            if (!found || cand < pick) {
                pick = cand;
                pick_state = child;
                found = true;
            }
        }
        result.principal_variation.push_back(pick.second);
        state = pick_state;
    }
    return result;
}

long long Solver::best_response_walk(const GameState& state,
                                     const Policy& fixed, Player side,
                                     std::vector<Move>& history) {
    auto moves = legal_moves(spec_, state);
    if (moves.empty()) return count_copies(state.graph, spec_.score);

    auto key_of = [&](const GameState& s, const std::vector<Move>& h,
                      const std::optional<std::string>& fp) {
        std::string key = "br|" + fixed.id() + "|" + *fp + "|";
        if (fixed.uses_last_move() && !h.empty())
            key += marked_canonical_key(s.graph, h.back().u, h.back().v);
        else
            key += canonical_key(s.graph);
        key += s.to_move == Player::max ? "|x" : "|m";
        return key;
    };

    auto fp = fixed.fingerprint(spec_, state, history);
    std::string key;
    if (fp) {
        key = key_of(state, history, fp);
        if (auto hit = table_.find(key)) {
            hits_.fetch_add(1, std::memory_order_relaxed);
            return *hit;
        }
    }
    bump_nodes();

    long long out;
    if (state.to_move == side) {
        Move m = fixed.select_move(spec_, state, history);
        if (!is_move_legal(spec_, state, m)) {
            std::ostringstream msg;
            msg << "policy " << fixed.id() << " returned illegal move " << m.u
                << "-" << m.v << " after";
            for (Move h : history) msg << " " << h.u << "-" << h.v;
            throw EngineError(msg.str());
        }
        GameState child = apply_move(spec_, state, m);
        history.push_back(m);
        out = best_response_walk(child, fixed, side, history);
        history.pop_back();
    } else {
        bool maxing = state.to_move == Player::max;
        out = maxing ? LLONG_MIN : LLONG_MAX;
        std::set<std::string> seen;
        for (Move m : moves) {
            GameState child = apply_move(spec_, state, m);
            history.push_back(m);
            // pool children only when their whole memo identity coincides
            bool walk = true;
            if (fp) {
                auto child_fp = fixed.fingerprint(spec_, child, history);
                if (child_fp)
                    walk = seen.insert(key_of(child, history, child_fp)).second;
            }
            if (walk) {
                long long val = best_response_walk(child, fixed, side, history);
                out = maxing ? std::max(out, val) : std::min(out, val);
            }
            history.pop_back();
        }
    }
    if (fp) table_.insert(key, out);
    return out;
}

long long Solver::best_response(const Policy& fixed, Player side) {
    if (!fixed.applicable(spec_))
        throw EngineError("policy " + fixed.id() +
                          " is not applicable to this game");
    std::vector<Move> history;
    return best_response_walk(initial_state(spec_), fixed, side, history);
}

void Solver::load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EngineError("cannot read cache file " + path);
    std::string header, fingerprint;
    if (!std::getline(in, header) || header != kCacheHeader)
        throw EngineError("bad cache header in " + path);
    if (!std::getline(in, fingerprint) || fingerprint != spec_fingerprint(spec_))
        throw EngineError("cache " + path + " belongs to " + fingerprint);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.rfind('\t');
        if (tab == std::string::npos)
            throw EngineError("corrupt cache line: " + line);
        try {
            table_.insert(line.substr(0, tab), std::stoll(line.substr(tab + 1)));
        } catch (const std::exception&) {
            throw EngineError("corrupt cache line: " + line);
        }
    }
}

void Solver::save_cache(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw EngineError("cannot write cache file " + path);
    out << kCacheHeader << "\n" << spec_fingerprint(spec_) << "\n";
    std::vector<std::pair<std::string, long long>> entries;
    table_.for_each([&](const std::string& key, long long value) {
        entries.emplace_back(key, value);
    });
    std::sort(entries.begin(), entries.end());
    for (const auto& [key, value] : entries)
        out << key << "\t" << value << "\n";
}

long long reference_solve_value(const GameSpec& spec, const GameState& state) {
    auto moves = legal_moves(spec, state);
    if (moves.empty()) return count_copies(state.graph, spec.score);
    bool maxing = state.to_move == Player::max;
    long long out = maxing ? LLONG_MIN : LLONG_MAX;
    for (Move m : moves) {
        GameState child{add_edge(state.graph, m.u, m.v), other(state.to_move)};
        long long val = reference_solve_value(spec, child);
        out = maxing ? std::max(out, val) : std::min(out, val);
    }
    return out;
}

SolveResult solve(const GameSpec& spec, const SolverOptions& opts) {
    Solver solver(spec, opts);
    return solver.solve();
}

long long best_response_value(const GameSpec& spec, const Policy& fixed,
                              Player side, const SolverOptions& opts) {
    Solver solver(spec, opts);
    return solver.best_response(fixed, side);
}

std::vector<Move> principal_variation(const GameSpec& spec,
                                      const SolverOptions& opts) {
    Solver solver(spec, opts);
    return solver.solve().principal_variation;
}

std::string spec_fingerprint(const GameSpec& spec) {
    return format_forbidden(spec.forbidden) + "|" +
           format_pattern(spec.score) + "|n=" + std::to_string(spec.n);
}

CacheInfo read_cache_info(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EngineError("cannot read cache file " + path);
    std::string header;
    if (!std::getline(in, header) || header != kCacheHeader)
        throw EngineError("bad cache header in " + path);
    CacheInfo info;
    if (!std::getline(in, info.fingerprint))
        throw EngineError("cache missing fingerprint: " + path);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++info.entries;
    return info;
}

}  // namespace satgame
