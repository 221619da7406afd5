#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ineq/generator.hpp"
#include "ineq/kernel.hpp"

namespace ineq {

using json = nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// JSON (de)serialization of proof steps and theorems.
// ---------------------------------------------------------------------------

namespace io_detail {

inline const char* kind_name(StmtKind k) {
    switch (k) {
    case StmtKind::Goal: return "goal";
    case StmtKind::Premise: return "premise";
    case StmtKind::Fact: return "fact";
    }
    return "?";
}

inline StmtKind kind_from(const std::string& s) {
    if (s == "goal") return StmtKind::Goal;
    if (s == "premise") return StmtKind::Premise;
    if (s == "fact") return StmtKind::Fact;
    throw FormatError("unknown statement kind: " + s);
}

inline const char* side_name(Side s) {
    switch (s) {
    case Side::Lhs: return "lhs";
    case Side::Rhs: return "rhs";
    case Side::Stmt: return "stmt";
    }
    return "?";
}

inline Side side_from(const std::string& s) {
    if (s == "lhs") return Side::Lhs;
    if (s == "rhs") return Side::Rhs;
    if (s == "stmt") return Side::Stmt;
    throw FormatError("unknown side: " + s);
}

// FNV-1a, for content-addressed record ids.
inline std::string content_hash(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace io_detail

inline json node_path_to_json(const NodePath& p) {
    json j;
    j["kind"] = io_detail::kind_name(p.kind);
    j["index"] = p.index;
    j["side"] = io_detail::side_name(p.side);
    j["path"] = json::array();
    for (auto b : p.path) j["path"].push_back(static_cast<int>(b));
    return j;
}

inline NodePath node_path_from_json(const json& j) {
    NodePath p;
    p.kind = io_detail::kind_from(j.at("kind").get<std::string>());
    p.index = j.at("index").get<int>();
    p.side = io_detail::side_from(j.at("side").get<std::string>());
    for (const auto& b : j.at("path")) p.path.push_back(static_cast<std::uint8_t>(b.get<int>()));
    return p;
}

inline json proof_step_to_json(const ProofStep& s) {
    json j;
    j["axiom"] = std::string(code(s.axiom));
    j["args"] = json::array();
    for (const auto& a : s.args) j["args"].push_back(node_path_to_json(a));
    j["direction"] = s.direction == Direction::Forward ? "fwd" : "rev";
    j["mode"] = s.mode == StepMode::Forward ? "fwd" : "bwd";
    return j;
}

inline ProofStep proof_step_from_json(const json& j) {
    ProofStep s;
    auto ax = axiom_from_code(j.at("axiom").get<std::string>());
    if (!ax) throw FormatError("unknown axiom code: " + j.at("axiom").get<std::string>());
    s.axiom = *ax;
    for (const auto& a : j.at("args")) s.args.push_back(node_path_from_json(a));
    s.direction = j.at("direction").get<std::string>() == "rev" ? Direction::Reverse
                                                                : Direction::Forward;
    s.mode = j.at("mode").get<std::string>() == "bwd" ? StepMode::Backward : StepMode::Forward;
    return s;
}

inline json theorem_to_json(const Theorem& t) {
    json j;
    j["v"] = kSchemaVersion;
    j["goal"] = print(t.goal);
    j["premises"] = json::array();
    for (const auto& p : t.premises) j["premises"].push_back(print(p));
    j["proof"] = json::array();
    for (const auto& s : t.proof) j["proof"].push_back(proof_step_to_json(s));
    j["k"] = t.meta.k;
    j["l"] = t.meta.l;
    j["degree"] = t.meta.degree;
    j["axiom_order"] = json::array();
    for (Axiom a : t.meta.axiom_order) j["axiom_order"].push_back(std::string(code(a)));
    j["seed"] = t.meta.seed;
    json content{{"goal", j["goal"]}, {"premises", j["premises"]}, {"proof", j["proof"]}};
    j["id"] = io_detail::content_hash(content.dump());
    return j;
}

inline Theorem theorem_from_json(const json& j) {
    Theorem t;
    try {
        t.goal = parse_statement(j.at("goal").get<std::string>());
        for (const auto& p : j.at("premises")) t.premises.push_back(parse_statement(p.get<std::string>()));
        for (const auto& s : j.at("proof")) t.proof.push_back(proof_step_from_json(s));
        t.meta.k = j.at("k").get<int>();
        t.meta.l = j.at("l").get<int>();
        t.meta.degree = j.at("degree").get<int>();
        for (const auto& a : j.at("axiom_order")) {
            auto ax = axiom_from_code(a.get<std::string>());
            if (!ax) throw FormatError("unknown axiom code in axiom_order");
            t.meta.axiom_order.push_back(*ax);
        }
        t.meta.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad record: ") + e.what());
    } catch (const ParseError&) {
        throw FormatError("bad record: unparseable statement");
    }
    return t;
}

// ---------------------------------------------------------------------------
// JSONL datasets.
// ---------------------------------------------------------------------------

inline std::size_t emit_dataset(const std::vector<Theorem>& theorems, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (const auto& t : theorems) {
        out << theorem_to_json(t).dump() << '\n';
        if (!out) throw IoError("write failed: " + path);
    }
    return theorems.size();
}

inline std::vector<Theorem> load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<Theorem> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(theorem_from_json(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dataset statistics.
// ---------------------------------------------------------------------------

struct EmptyDataset : std::runtime_error {
    EmptyDataset() : std::runtime_error("empty dataset") {}
};

struct StatsReport {
    std::size_t n_theorems = 0;
    std::map<std::size_t, std::size_t> length_hist;       // goal chars -> count
    std::map<std::string, double> axiom_freq_percent;     // over proof steps
    std::map<int, double> mean_nodes_by_l;                // entity nodes, goal+premises
    std::map<int, double> mean_goal_chars_by_l;
    std::map<std::pair<int, int>, std::size_t> count_by_kl;
};

inline std::size_t statement_nodes(const Theorem& t) {
    std::size_t n = enumerate_nodes(t.goal).size();
    for (const auto& p : t.premises) n += enumerate_nodes(p).size();
    return n;
}

inline StatsReport compute_stats(const std::vector<Theorem>& dataset) {
    if (dataset.empty()) throw EmptyDataset();
    StatsReport r;
    r.n_theorems = dataset.size();
    std::map<std::string, std::size_t> axiom_counts;
    std::size_t total_steps = 0;
    std::map<int, std::pair<double, std::size_t>> nodes_acc, chars_acc;
    for (const auto& t : dataset) {
        std::size_t len = print(t.goal).size();
        r.length_hist[len] += 1;
        for (const auto& s : t.proof) {
            axiom_counts[std::string(code(s.axiom))] += 1;
            ++total_steps;
        }
        auto& na = nodes_acc[t.meta.l];
        na.first += static_cast<double>(statement_nodes(t));
        na.second += 1;
        auto& ca = chars_acc[t.meta.l];
        ca.first += static_cast<double>(len);
        ca.second += 1;
        r.count_by_kl[{t.meta.k, t.meta.l}] += 1;
    }
    for (const auto& [name, c] : axiom_counts)
        r.axiom_freq_percent[name] = 100.0 * static_cast<double>(c) / total_steps;
    for (const auto& [l, acc] : nodes_acc) r.mean_nodes_by_l[l] = acc.first / acc.second;
    for (const auto& [l, acc] : chars_acc) r.mean_goal_chars_by_l[l] = acc.first / acc.second;
    return r;
}

inline json stats_to_json(const StatsReport& r) {
    json j;
    j["n_theorems"] = r.n_theorems;
    j["length_hist"] = json::object();
    for (const auto& [len, c] : r.length_hist) j["length_hist"][std::to_string(len)] = c;
    j["axiom_freq_percent"] = r.axiom_freq_percent;
    j["mean_nodes_by_l"] = json::object();
    for (const auto& [l, v] : r.mean_nodes_by_l) j["mean_nodes_by_l"][std::to_string(l)] = v;
    j["mean_goal_chars_by_l"] = json::object();
    for (const auto& [l, v] : r.mean_goal_chars_by_l)
        j["mean_goal_chars_by_l"][std::to_string(l)] = v;
    j["count_by_kl"] = json::array();
    for (const auto& [kl, c] : r.count_by_kl)
        j["count_by_kl"].push_back({{"k", kl.first}, {"l", kl.second}, {"count", c}});
    return j;
}

} // namespace ineq
