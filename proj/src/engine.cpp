#include "satgame/engine.hpp"

#include <sstream>

#include "json.hpp"

namespace satgame {

std::string format_player(Player p) {
    return p == Player::max ? "max" : "mini";
}

Player parse_player(const std::string& text) {
    if (text == "max") return Player::max;
    if (text == "mini") return Player::mini;
    throw EngineError("bad player: " + text);
}

void GameSpec::validate() const {
    if (n < 1 || n > Graph::max_vertices)
        throw EngineError("vertex count out of range");
    if (score.size < 2) throw EngineError("score pattern too small");
}

GameState initial_state(const GameSpec& spec) {
    spec.validate();
    return {Graph(spec.n), spec.starter};
}

std::vector<Move> legal_moves(const GameSpec& spec, const GameState& state) {
    std::vector<Move> out;
    const Graph& g = state.graph;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if (!g.has_edge(u, v) && !creates_copy(g, u, v, spec.forbidden))
                out.push_back({u, v});
    return out;
}

bool is_move_legal(const GameSpec& spec, const GameState& state, Move m) {
    const Graph& g = state.graph;
    if (m.u == m.v || m.u < 0 || m.v >= g.vertex_count()) return false;
    if (g.has_edge(m.u, m.v)) return false;
    return !creates_copy(g, m.u, m.v, spec.forbidden);
}

bool is_saturated(const GameSpec& spec, const Graph& g) {
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if (!g.has_edge(u, v) && !creates_copy(g, u, v, spec.forbidden))
                return false;
    return true;
}

bool is_terminal(const GameSpec& spec, const GameState& state) {
    return is_saturated(spec, state.graph);
}

GameState apply_move(const GameSpec& spec, const GameState& state, Move m) {
    if (!is_move_legal(spec, state, m))
        throw EngineError("illegal move " + std::to_string(m.u) + "-" +
                          std::to_string(m.v));
    return {add_edge(state.graph, m.u, m.v), other(state.to_move)};
}

long long final_score(const GameSpec& spec, const Graph& g) {
    if (!is_saturated(spec, g))
        throw EngineError("final_score on an unsaturated graph");
    return count_copies(g, spec.score);
}

GameRecord play_out(const GameSpec& spec, const Policy& for_max,
                    const Policy& for_mini) {
    GameState state = initial_state(spec);
    std::vector<Move> history;
    while (!is_terminal(spec, state)) {
        const Policy& side =
            state.to_move == Player::max ? for_max : for_mini;
        Move m = side.select_move(spec, state, history);
        if (!is_move_legal(spec, state, m)) {
            std::ostringstream msg;
            msg << "policy " << side.id() << " returned illegal move " << m.u
                << "-" << m.v << " after";
            for (Move h : history) msg << " " << h.u << "-" << h.v;
            throw EngineError(msg.str());
        }
        state = apply_move(spec, state, m);
        history.push_back(m);
    }
    GameRecord record;
    record.spec = spec;
    record.moves = std::move(history);
    record.final_graph = state.graph;
    record.final_score = final_score(spec, state.graph);
    return record;
}

std::string record_to_json(const GameRecord& record) {
    nlohmann::ordered_json j;
    j["schema"] = "satgame/record/1";
    j["spec"] = {{"forbid", format_forbidden(record.spec.forbidden)},
                 {"score", format_pattern(record.spec.score)},
                 {"n", record.spec.n},
                 {"starter", format_player(record.spec.starter)}};
    auto moves = nlohmann::ordered_json::array();
    for (Move m : record.moves) moves.push_back({m.u, m.v});
    j["moves"] = std::move(moves);
    j["final_score"] = record.final_score;
    return j.dump();
}

GameRecord record_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw EngineError(std::string("bad record json: ") + e.what());
    }
    if (j.value("schema", "") != "satgame/record/1")
        throw EngineError("unknown record schema");
    GameRecord record;
    try {
        const auto& spec = j.at("spec");
        record.spec.forbidden = parse_forbidden(spec.at("forbid"));
        record.spec.score = parse_pattern(spec.at("score"));
        record.spec.n = spec.at("n");
        record.spec.starter = parse_player(spec.at("starter"));
        record.spec.validate();
        GameState state = initial_state(record.spec);
        for (const auto& pair : j.at("moves")) {
            Move m = Move::of(pair.at(0), pair.at(1));
            state = apply_move(record.spec, state, m);
            record.moves.push_back(m);
        }
        record.final_graph = state.graph;
        record.final_score = j.at("final_score");
        if (is_saturated(record.spec, state.graph) &&
            record.final_score != final_score(record.spec, state.graph))
            throw EngineError("record score does not match its moves");
    } catch (const nlohmann::json::exception& e) {
        throw EngineError(std::string("bad record json: ") + e.what());
    }
    return record;
}

}  // namespace satgame
