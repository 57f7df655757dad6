// Command-line front end: exact solving, score tables, interactive play,
// claim verification, and policy fuzzing.
//
// Exit codes: 0 success, 1 failed check, 2 usage error, 3 budget exceeded.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "satgame/harness.hpp"
#include "satgame/s4_abstract.hpp"
#include "satgame/solver.hpp"
#include "satgame/strategies.hpp"

using namespace satgame;
using ordered_json = nlohmann::ordered_json;

namespace {

/// "max"/"1" is the first player (the maximizer), "mini"/"2" the second.
Player parse_starter(const std::string& text) {
    if (text == "1") return Player::max;
    if (text == "2") return Player::mini;
    return parse_player(text);
}

std::string move_text(Move m) {
    return std::to_string(m.u) + "-" + std::to_string(m.v);
}

int run_solve(const std::string& forbid, const std::string& score, int n,
              const std::string& starter, long long max_nodes, int threads,
              const std::string& cache, bool pv) {
    GameSpec spec{parse_forbidden(forbid), parse_pattern(score), n,
                  parse_starter(starter)};
    spec.validate();
    Solver solver(spec, SolverOptions{max_nodes, threads});
    if (!cache.empty() && std::filesystem::exists(cache))
        solver.load_cache(cache);
    SolveResult result = solver.solve();
    if (!cache.empty()) solver.save_cache(cache);
    ordered_json j;
    j["schema"] = "satgame/solve/1";
    j["forbid"] = format_forbidden(spec.forbidden);
    j["score"] = format_pattern(spec.score);
    j["n"] = spec.n;
    j["starter"] = format_player(spec.starter);
    j["value"] = result.value;
    j["deficit"] = result.value - spec.n;
    j["nodes_expanded"] = result.nodes_expanded;
    j["cache_hits"] = result.cache_hits;
    if (pv) {
        auto line = ordered_json::array();
        for (Move m : result.principal_variation) line.push_back(move_text(m));
        j["pv"] = std::move(line);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_table(const std::string& which, int max_n,
              const std::string& format) {
    if (which != "p3s4")
        throw CLI::ValidationError("table", "unknown table: " + which);
    auto rows = score_table(PatternId::path(3), max_n);
    if (format == "csv")
        std::cout << table_to_csv(rows);
    else
        std::cout << table_to_json(rows) << "\n";
    return 0;
}

void print_report_line(const VerificationReport& r) {
    std::cout << report_to_json(r) << "\n";
}

void print_report_summary(const std::vector<VerificationReport>& reports) {
    std::printf("\n%-28s %-8s %8s   %s\n", "check", "verdict", "ms",
                "details");
    for (const VerificationReport& r : reports) {
        std::string details = r.details;
        if (details.size() > 90) details = details.substr(0, 87) + "...";
        std::printf("%-28s %-8s %8lld   %s\n", r.check_id.c_str(),
                    format_verdict(r.verdict).c_str(), r.runtime_ms,
                    details.c_str());
    }
}

int verify_exit(const std::vector<VerificationReport>& reports) {
    bool budget = false, fail = false;
    for (const VerificationReport& r : reports) {
        budget |= r.verdict == Verdict::budget;
        fail |= r.verdict == Verdict::fail;
    }
    if (budget) return 3;
    return fail ? 1 : 0;
}

int run_verify(std::vector<std::string> ids, bool list, long long max_nodes,
               int threads) {
    if (list) {
        for (const CheckInfo& info : check_catalog())
            std::printf("%-28s %s\n", info.id.c_str(), info.summary.c_str());
        return 0;
    }
    CheckOptions opts{threads, max_nodes};
    std::vector<VerificationReport> reports;
    if (ids.empty()) {
        reports = run_all_checks(opts);
        for (const VerificationReport& r : reports) print_report_line(r);
    } else {
        for (const std::string& id : ids) {
            reports.push_back(run_check(id, opts));
            print_report_line(reports.back());
        }
    }
    print_report_summary(reports);
    return verify_exit(reports);
}

int run_fuzz(const std::string& policy, const std::string& forbid,
             const std::string& score, int n, const std::string& starter,
             const std::string& side_text, int games, std::uint64_t seed) {
    GameSpec spec{parse_forbidden(forbid), parse_pattern(score), n,
                  parse_starter(starter)};
    spec.validate();
    auto pol = make_policy(policy);
    Player side = side_text == "auto"
                      ? (policy.rfind("mini", 0) == 0 ? Player::mini
                                                      : Player::max)
                      : parse_starter(side_text);
    if (!pol->applicable(spec))
        throw CLI::ValidationError(
            "fuzz", "policy " + policy + " is not applicable to this game");
    VerificationReport r = fuzz_policy(*pol, side, spec, games, seed);
    print_report_line(r);
    print_report_summary({r});
    return r.verdict == Verdict::pass ? 0 : 1;
}

int run_cache_info(const std::string& cache) {
    CacheInfo info = read_cache_info(cache);
    ordered_json j;
    j["schema"] = "satgame/cache/1";
    j["fingerprint"] = info.fingerprint;
    j["entries"] = info.entries;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_policies() {
    for (const PolicyInfo& info : policy_catalog())
        std::printf("%-24s %-22s %s\n", info.id.c_str(),
                    info.applicability.c_str(), info.summary.c_str());
    return 0;
}

std::optional<Move> parse_move_text(const std::string& text) {
    std::string t = text;
    for (char& c : t)
        if (c == '-' || c == ',') c = ' ';
    std::istringstream in(t);
    int u = -1, v = -1;
    if (!(in >> u >> v) || u < 0 || v < 0 || u == v) return std::nullopt;
    return Move::of(u, v);
}

int run_play(const std::string& forbid, const std::string& score, int n,
             const std::string& starter, const std::string& human_text,
             const std::string& fallback, long long max_nodes, int threads,
             const std::string& scripted) {
    GameSpec spec{parse_forbidden(forbid), parse_pattern(score), n,
                  parse_starter(starter)};
    spec.validate();
    Player human = parse_starter(human_text);
    Solver solver(spec, SolverOptions{max_nodes, threads});
    auto backup = make_policy(fallback);
    bool solver_alive = true;

    std::vector<std::string> queued;
    {
        std::istringstream in(scripted);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty()) queued.push_back(tok);
    }
    std::size_t next_queued = 0;

    GameState st = initial_state(spec);
    std::vector<Move> history;
    std::printf("%s-free game on %d vertices, scoring %s; you are %s\n",
                format_forbidden(spec.forbidden).c_str(), n,
                format_pattern(spec.score).c_str(),
                format_player(human).c_str());
    while (!is_terminal(spec, st)) {
        if (st.to_move == human) {
            std::printf("%s\n", format_graph_text(st.graph).c_str());
            std::optional<Move> chosen;
            while (!chosen) {
                std::string line;
                if (next_queued < queued.size()) {
                    line = queued[next_queued++];
                    std::printf("move u-v> %s\n", line.c_str());
                } else {
                    std::printf("move u-v> ");
                    std::fflush(stdout);
                    if (!std::getline(std::cin, line)) {
                        std::printf("\nno more input; resigning the seat "
                                    "to %s\n",
                                    fallback.c_str());
                        chosen = backup->select_move(spec, st, history);
                        break;
                    }
                }
                if (line == "q" || line == "quit") return 0;
                auto m = parse_move_text(line);
                if (!m || !is_move_legal(spec, st, *m)) {
                    std::printf("illegal; legal moves:");
                    for (Move lm : legal_moves(spec, st))
                        std::printf(" %s", move_text(lm).c_str());
                    std::printf("\n");
                    continue;
                }
                chosen = m;
            }
            st = apply_move(spec, st, *chosen);
            history.push_back(*chosen);
            continue;
        }
        Move reply{};
        bool found = false;
        if (solver_alive) {
            try {
                long long best = st.to_move == Player::max
                                     ? std::numeric_limits<long long>::min()
                                     : std::numeric_limits<long long>::max();
                for (Move m : legal_moves(spec, st)) {
                    long long v = solver.value(apply_move(spec, st, m));
                    bool better = st.to_move == Player::max ? v > best
                                                            : v < best;
                    if (!found || better) {
                        best = v;
                        reply = m;
                        found = true;
                    }
                }
            } catch (const BudgetExceeded&) {
                solver_alive = false;
                std::printf("(budget exceeded; engine falls back to %s)\n",
                            fallback.c_str());
            }
        }
        if (!solver_alive) reply = backup->select_move(spec, st, history);
        std::printf("engine plays %s\n", move_text(reply).c_str());
        st = apply_move(spec, st, reply);
        history.push_back(reply);
    }
    std::printf("%s\nfinal score: %lld\n",
                format_graph_text(st.graph).c_str(),
                final_score(spec, st.graph));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Saturation-game laboratory: exact values, score tables, "
                 "strategy verification, and play"};
    app.require_subcommand(1);

    std::string forbid = "S4", score = "P3", starter = "max";
    std::string side = "auto", policy, cache, format = "csv";
    std::string human = "max", fallback = "first_legal", moves;
    std::string table_name;
    std::vector<std::string> check_ids;
    int n = 8, max_n = 12, games = 100, threads = 1;
    long long max_nodes = 0;
    std::uint64_t seed = 1;
    bool list = false, no_pv = false;

    const char* starter_help =
        "first player (max|mini, or 1|2: 1 starts and maximizes, 2 "
        "minimizes)";

    auto* solve = app.add_subcommand("solve", "exact game value");
    solve->add_option("--forbid", forbid,
                      "forbidden pattern (e.g. S4, P5, K3) or 'cycles'");
    solve->add_option("--score", score, "scored pattern (e.g. P3, K3, S5)");
    solve->add_option("--n", n, "number of vertices")->required();
    solve->add_option("--starter", starter, starter_help);
    solve->add_option("--max-nodes", max_nodes,
                      "node budget (0: SATGAME_MAX_NODES or 10^8)");
    solve->add_option("--threads", threads, "worker threads");
    solve->add_option("--cache", cache, "value cache file to load and save");
    solve->add_flag("--no-pv", no_pv, "omit the optimal line");

    auto* table = app.add_subcommand("table", "score table");
    table->add_option("name", table_name, "table name (p3s4)")->required();
    table->add_option("--max-n", max_n, "largest n");
    table->add_option("--format", format, "csv or json");

    auto* play = app.add_subcommand("play", "play against the engine");
    play->add_option("--forbid", forbid,
                     "forbidden pattern (e.g. S4, P5, K3) or 'cycles'");
    play->add_option("--score", score, "scored pattern (e.g. P3, K3, S5)");
    play->add_option("--n", n, "number of vertices")->required();
    play->add_option("--starter", starter, starter_help);
    play->add_option("--human", human, "seat you occupy (max|mini or 1|2)");
    play->add_option("--fallback", fallback,
                     "engine policy once the solver budget is spent");
    play->add_option("--max-nodes", max_nodes, "solver node budget");
    play->add_option("--threads", threads, "worker threads");
    play->add_option("--moves", moves,
                     "comma-separated scripted moves (e.g. 0-1,2-3)");

    auto* verify = app.add_subcommand(
        "verify", "run verification checks (JSON lines plus a summary)");
    verify->add_option("--check", check_ids,
                       "check id (repeatable; default: all)");
    verify->add_flag("--list", list, "list available checks");
    verify->add_option("--max-nodes", max_nodes, "node budget per check");
    verify->add_option("--threads", threads, "parallel checks");

    auto* fuzz = app.add_subcommand(
        "fuzz", "random-adversary games against a fixed policy");
    fuzz->add_option("--policy", policy, "policy id (see 'policies')")
        ->required();
    fuzz->add_option("--forbid", forbid,
                     "forbidden pattern (e.g. S4, P5, K3) or 'cycles'");
    fuzz->add_option("--score", score, "scored pattern (e.g. P3, K3, S5)");
    fuzz->add_option("--n", n, "number of vertices");
    fuzz->add_option("--starter", starter, starter_help);
    fuzz->add_option("--side", side,
                     "seat the policy plays (auto|max|mini|1|2)");
    fuzz->add_option("--games", games, "number of games");
    fuzz->add_option("--seed", seed, "adversary seed");

    auto* cache_info =
        app.add_subcommand("cache-info", "describe a value cache file");
    cache_info->add_option("--cache", cache, "cache file")->required();

    app.add_subcommand("policies", "list the policy catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed())
            return run_solve(forbid, score, n, starter, max_nodes, threads,
                             cache, !no_pv);
        if (table->parsed()) return run_table(table_name, max_n, format);
        if (play->parsed())
            return run_play(forbid, score, n, starter, human, fallback,
                            max_nodes, threads, moves);
        if (verify->parsed())
            return run_verify(check_ids, list, max_nodes, threads);
        if (fuzz->parsed())
            return run_fuzz(policy, forbid, score, n, starter, side, games,
                            seed);
        if (cache_info->parsed()) return run_cache_info(cache);
        return run_policies();
    } catch (const BudgetExceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
