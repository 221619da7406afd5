#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ineq/generator.hpp"
#include "ineq/kernel.hpp"

namespace ineq {

using Action = ProofStep;

struct EnvConfig {
    int step_limit = 15;
    double reward_on_success = 1.0;
    double reward_otherwise = 0.0;
    AxiomSet axiom_set = AxiomSet::OrderedField;
};

// ---------------------------------------------------------------------------
// Observations: a sequence view and a graph view of the same proof state.
// ---------------------------------------------------------------------------

struct GraphNode {
    int id = 0;
    std::string label;   // operator token, variable or constant name, or relation
    std::string role;    // "goal" / "premise" / "fact"
    int stmt_index = 0;
    bool is_relation = false;
};

struct GraphEdge {
    int from = 0;
    int to = 0;
};

struct Graph {
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
};

struct Observation {
    std::string seq;
    Graph graph;
};

namespace env_detail {

inline std::string node_label(const Entity& e) {
    switch (e.op) {
    case Op::Var: return std::string(1, e.name);
    case Op::Const: return std::to_string(e.value);
    case Op::Add: return "+";
    case Op::Mul: return "*";
    case Op::Neg: return "-";
    case Op::Inv: return "1/";
    case Op::Sqr: return "^2";
    }
    return "?";
}

inline int add_entity(Graph& g, const EntityPtr& e, const std::string& role, int stmt_index) {
    int id = static_cast<int>(g.nodes.size());
    g.nodes.push_back({id, node_label(*e), role, stmt_index, false});
    if (e->left) g.edges.push_back({id, add_entity(g, e->left, role, stmt_index)});
    if (e->right) g.edges.push_back({id, add_entity(g, e->right, role, stmt_index)});
    return id;
}

inline void add_statement(Graph& g, const Statement& st, const std::string& role, int stmt_index) {
    int rel = static_cast<int>(g.nodes.size());
    const char* label = st.rel == Rel::Eq ? "=" : st.rel == Rel::Geq ? ">=" : "<=";
    g.nodes.push_back({rel, label, role, stmt_index, true});
    g.edges.push_back({rel, add_entity(g, st.lhs, role, stmt_index)});
    g.edges.push_back({rel, add_entity(g, st.rhs, role, stmt_index)});
}

inline std::string join(const std::vector<Statement>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += "; ";
        s += print(v[i]);
    }
    return s;
}

} // namespace env_detail

inline std::string encode_seq(const ProofState& s) {
    std::string out = env_detail::join(s.goals);
    if (!out.empty()) out += ' ';
    out += "<GOAL_END>";
    std::string prem = env_detail::join(s.premises);
    if (!prem.empty()) {
        out += ' ';
        out += prem;
    }
    out += " <PREM_END>";
    std::string facts = env_detail::join(s.facts);
    if (!facts.empty()) {
        out += ' ';
        out += facts;
    }
    return out;
}

inline Graph encode_graph(const ProofState& s) {
    Graph g;
    for (int i = 0; i < static_cast<int>(s.goals.size()); ++i)
        env_detail::add_statement(g, s.goals[i], "goal", i);
    for (int i = 0; i < static_cast<int>(s.premises.size()); ++i)
        env_detail::add_statement(g, s.premises[i], "premise", i);
    for (int i = 0; i < static_cast<int>(s.facts.size()); ++i)
        env_detail::add_statement(g, s.facts[i], "fact", i);
    return g;
}

inline Observation observe(const ProofState& s) {
    return Observation{encode_seq(s), encode_graph(s)};
}

inline long long action_space_size(const ProofState& s, AxiomSet set = AxiomSet::OrderedField) {
    long long n = static_cast<long long>(enumerate_nodes(s).size());
    return static_cast<long long>(axiom_set_size(set)) * n * n * n;
}

// ---------------------------------------------------------------------------
// Environment
// ---------------------------------------------------------------------------

struct EpisodeFinished : std::logic_error {
    EpisodeFinished() : std::logic_error("step() called after the episode finished") {}
};

class Env {
public:
    explicit Env(EnvConfig cfg = {}) : cfg_(cfg) {}

    struct StepOut {
        Observation obs;
        double reward = 0.0;
        bool done = false;
        std::string info;
    };

    Observation reset(const Theorem& thm) {
        state_ = init_state(thm);
        done_ = proven(state_);
        last_reward_ = done_ ? cfg_.reward_on_success : 0.0;
        return observe(state_);
    }

    StepOut step(const Action& action) {
        if (done_) throw EpisodeFinished();
        StepResult r = apply_step(state_, action);
        state_ = std::move(r.state);
        StepOut out;
        if (r.proven && r.accepted) {
            done_ = true;
            out.reward = cfg_.reward_on_success;
        } else if (state_.steps_taken >= cfg_.step_limit) {
            done_ = true;
            out.reward = cfg_.reward_otherwise;
        } else {
            out.reward = cfg_.reward_otherwise;
        }
        if (!r.accepted) out.info = r.reason;
        out.done = done_;
        out.obs = observe(state_);
        last_reward_ = out.reward;
        return out;
    }

    bool done() const { return done_; }
    double last_reward() const { return last_reward_; }
    const ProofState& state() const { return state_; }
    const EnvConfig& config() const { return cfg_; }

private:
    EnvConfig cfg_;
    ProofState state_;
    bool done_ = true;
    double last_reward_ = 0.0;
};

} // namespace ineq
