#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ineq/env.hpp"
#include "ineq/kernel.hpp"
#include "ineq/rng.hpp"

namespace ineq {

struct MctsConfig {
    double c_puct = 1.0;
    double tau = 1.0;
    int n_simulations = 200;
    int step_limit = 15;
    AxiomSet axiom_set = AxiomSet::OrderedField;
};

// ---------------------------------------------------------------------------
// Pluggable policy and value interfaces.
// ---------------------------------------------------------------------------

class Policy {
public:
    virtual ~Policy() = default;
    // Prior over the axiom space; must sum to 1 over axioms with legal moves.
    virtual std::vector<double> prior(const ProofState& s) = 0;
    // One concrete argument proposal for the axiom, or nullopt if none.
    virtual std::optional<Action> propose_args(const ProofState& s, Axiom a, Rng& rng) = 0;
};

class ValueFn {
public:
    virtual ~ValueFn() = default;
    virtual double value(const ProofState& s) = 0;
};

// value = 1 when proven, else shrinks with the size of the remaining goals.
class HeuristicValue final : public ValueFn {
public:
    double value(const ProofState& s) override {
        if (proven(s)) return 1.0;
        std::size_t nodes = 0;
        for (const auto& g : s.goals) nodes += enumerate_nodes(g).size();
        return std::max(0.0, 1.0 - static_cast<double>(nodes) / 50.0);
    }
};

// ---------------------------------------------------------------------------
// Legal-move enumeration. Rewrites at any node (both directions), backward
// goal destructuring, and forward implicational steps over premise/fact
// statements. Entity-sampling extension forms are generative rather than
// goal-directed and are left out of the enumeration.
// ---------------------------------------------------------------------------

inline std::vector<Action> legal_actions_for(const ProofState& s, Axiom a) {
    std::vector<Action> out;
    const AxiomSpec& sp = spec(a);

    if (sp.has_transformation) {
        for (const auto& n : enumerate_nodes(s)) {
            for (Direction d : {Direction::Forward, Direction::Reverse}) {
                if (!match_transform(a, n.entity, d)) continue;
                Action act;
                act.axiom = a;
                act.args = {n.path};
                act.direction = d;
                out.push_back(std::move(act));
            }
        }
    }

    for (int i = 0; i < static_cast<int>(s.goals.size()); ++i) {
        if (!backward_match(a, s.goals[i])) continue;
        Action act;
        act.axiom = a;
        act.args = {NodePath::stmt(StmtKind::Goal, i)};
        act.mode = StepMode::Backward;
        out.push_back(std::move(act));
    }

    auto stmt_refs = [&] {
        std::vector<NodePath> refs;
        for (int i = 0; i < static_cast<int>(s.premises.size()); ++i)
            refs.push_back(NodePath::stmt(StmtKind::Premise, i));
        for (int i = 0; i < static_cast<int>(s.facts.size()); ++i)
            refs.push_back(NodePath::stmt(StmtKind::Fact, i));
        return refs;
    }();

    auto forward_ok = [&](std::vector<NodePath> args) {
        std::vector<Operand> ops;
        for (const auto& r : args) {
            const Statement* st = statement_at(s, r.kind, r.index);
            ops.push_back(Operand::statement(*st));
        }
        return apply_forward(a, ops, Direction::Forward, nullptr).has_value();
    };

    if (sp.arity == 1 && sp.roles[0] == 's') {
        for (const auto& r : stmt_refs) {
            if (!forward_ok({r})) continue;
            Action act;
            act.axiom = a;
            act.args = {r};
            out.push_back(std::move(act));
        }
    } else if (sp.arity == 2 && sp.roles[0] == 's' && sp.roles[1] == 's') {
        for (const auto& r1 : stmt_refs)
            for (const auto& r2 : stmt_refs) {
                if (!forward_ok({r1, r2})) continue;
                Action act;
                act.axiom = a;
                act.args = {r1, r2};
                out.push_back(std::move(act));
            }
    }
    return out;
}

// Uniform prior over axioms that have at least one legal move; arguments
// drawn uniformly from the legal set.
class UniformPolicy final : public Policy {
public:
    explicit UniformPolicy(AxiomSet set = AxiomSet::OrderedField) : set_(set) {}

    std::vector<double> prior(const ProofState& s) override {
        const int n = axiom_set_size(set_);
        std::vector<double> p(n, 0.0);
        int legal = 0;
        for (int i = 0; i < n; ++i) {
            if (!legal_actions_for(s, static_cast<Axiom>(i)).empty()) {
                p[i] = 1.0;
                ++legal;
            }
        }
        if (legal > 0)
            for (auto& x : p) x /= legal;
        return p;
    }

    std::optional<Action> propose_args(const ProofState& s, Axiom a, Rng& rng) override {
        auto acts = legal_actions_for(s, a);
        if (acts.empty()) return std::nullopt;
        return acts[rng.index(acts.size())];
    }

private:
    AxiomSet set_;
};

// Peeks at a ground-truth proof, keyed on steps_taken; for harness
// calibration only.
class OraclePolicy final : public Policy {
public:
    OraclePolicy(std::vector<ProofStep> proof, AxiomSet set = AxiomSet::OrderedField)
        : proof_(std::move(proof)), set_(set) {}

    std::vector<double> prior(const ProofState& s) override {
        std::vector<double> p(axiom_set_size(set_), 0.0);
        if (s.steps_taken < static_cast<int>(proof_.size()))
            p[static_cast<int>(proof_[s.steps_taken].axiom)] = 1.0;
        return p;
    }

    std::optional<Action> propose_args(const ProofState& s, Axiom a, Rng&) override {
        if (s.steps_taken >= static_cast<int>(proof_.size())) return std::nullopt;
        const ProofStep& step = proof_[s.steps_taken];
        if (step.axiom != a) return std::nullopt;
        return step;
    }

private:
    std::vector<ProofStep> proof_;
    AxiomSet set_;
};

// ---------------------------------------------------------------------------
// PUCT selection and the search tree.
// ---------------------------------------------------------------------------

struct NoLegalAction : std::runtime_error {
    NoLegalAction() : std::runtime_error("no legal action at this node") {}
};

struct TerminalRoot : std::runtime_error {
    TerminalRoot() : std::runtime_error("run_mcts called on a terminal state") {}
};

struct EdgeStats {
    double q = 0.0;
    double p = 0.0;
    int n = 0;
    bool legal = true;
};

// a* = argmax_a ( Q + c_puct * P * sqrt(sum_b N) / (1 + N) ), lowest index
// on ties.
inline int select_axiom(const std::vector<EdgeStats>& edges, const MctsConfig& cfg) {
    double total = 0.0;
    for (const auto& e : edges) total += e.n;
    double sqrt_total = std::sqrt(total);
    int best = -1;
    double best_score = 0.0;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        if (!edges[i].legal) continue;
        double score = edges[i].q + cfg.c_puct * edges[i].p * sqrt_total / (1.0 + edges[i].n);
        if (best < 0 || score > best_score) {
            best = i;
            best_score = score;
        }
    }
    if (best < 0) throw NoLegalAction();
    return best;
}

namespace search_detail {

struct TreeNode;

struct Edge {
    std::optional<Action> action; // fixed at expansion
    double p = 0.0;
    int n = 0;
    double w = 0.0;
    bool terminal = false;
    double terminal_value = 0.0;
    std::unique_ptr<TreeNode> child;

    bool legal() const { return action.has_value(); }
    double q() const { return n > 0 ? w / n : 0.0; }
};

struct TreeNode {
    ProofState state;
    std::vector<Edge> edges;
};

inline std::unique_ptr<TreeNode> expand(ProofState state, Policy& policy, Rng& rng,
                                        const MctsConfig& cfg) {
    auto node = std::make_unique<TreeNode>();
    node->state = std::move(state);
    std::vector<double> prior = policy.prior(node->state);
    const int n = axiom_set_size(cfg.axiom_set);
    node->edges.resize(n);
    for (int i = 0; i < n; ++i) {
        if (i < static_cast<int>(prior.size()) && prior[i] > 0.0) {
            auto act = policy.propose_args(node->state, static_cast<Axiom>(i), rng);
            if (act) {
                node->edges[i].action = std::move(act);
                node->edges[i].p = prior[i];
            }
        }
    }
    return node;
}

// One selection -> expansion -> evaluation pass; returns the backed-up value.
inline double simulate(TreeNode& node, Policy& policy, ValueFn& value, Rng& rng,
                       const MctsConfig& cfg) {
    std::vector<EdgeStats> stats(node.edges.size());
    for (std::size_t i = 0; i < node.edges.size(); ++i)
        stats[i] = {node.edges[i].q(), node.edges[i].p, node.edges[i].n, node.edges[i].legal()};
    int a = select_axiom(stats, cfg);
    Edge& e = node.edges[a];

    double v;
    if (e.terminal) {
        v = e.terminal_value;
    } else if (!e.child) {
        StepResult r = apply_step(node.state, *e.action);
        if (r.accepted && r.proven) {
            e.terminal = true;
            e.terminal_value = 1.0;
            v = 1.0;
        } else if (r.state.steps_taken >= cfg.step_limit) {
            e.terminal = true;
            e.terminal_value = 0.0;
            v = 0.0;
        } else {
            e.child = expand(std::move(r.state), policy, rng, cfg);
            v = value.value(e.child->state);
        }
    } else {
        v = simulate(*e.child, policy, value, rng, cfg);
    }
    e.n += 1;
    e.w += v;
    return v;
}

} // namespace search_detail

struct MctsResult {
    std::vector<double> pi;     // N^{1/tau}, normalized
    std::vector<int> visits;    // raw root visit counts
    std::vector<std::optional<Action>> root_actions;
};

inline MctsResult run_mcts(const ProofState& root_state, Policy& policy, ValueFn& value,
                           const MctsConfig& cfg, Rng& rng) {
    if (proven(root_state) || root_state.steps_taken >= cfg.step_limit) throw TerminalRoot();
    auto root = search_detail::expand(root_state, policy, rng, cfg);
    bool any = false;
    for (const auto& e : root->edges) any = any || e.legal();
    if (!any) throw NoLegalAction();

    for (int i = 0; i < cfg.n_simulations; ++i)
        search_detail::simulate(*root, policy, value, rng, cfg);

    MctsResult out;
    out.visits.resize(root->edges.size());
    out.pi.resize(root->edges.size(), 0.0);
    out.root_actions.resize(root->edges.size());
    double total = 0.0;
    for (std::size_t i = 0; i < root->edges.size(); ++i) {
        out.visits[i] = root->edges[i].n;
        out.root_actions[i] = root->edges[i].action;
        out.pi[i] = std::pow(static_cast<double>(root->edges[i].n), 1.0 / cfg.tau);
        total += out.pi[i];
    }
    if (total > 0.0)
        for (auto& x : out.pi) x /= total;
    return out;
}

// ---------------------------------------------------------------------------
// Proving: MCTS-driven and greedy (no-search) baselines.
// ---------------------------------------------------------------------------

inline std::optional<std::vector<ProofStep>> prove(const Theorem& thm, Policy& policy,
                                                   ValueFn& value, const MctsConfig& cfg,
                                                   Rng& rng) {
    ProofState s = init_state(thm);
    std::vector<ProofStep> steps;
    if (proven(s)) return steps;
    while (s.steps_taken < cfg.step_limit) {
        MctsResult r;
        try {
            r = run_mcts(s, policy, value, cfg, rng);
        } catch (const NoLegalAction&) {
            return std::nullopt;
        }
        // a one-step win takes precedence over the visit distribution
        std::optional<Action> winner;
        for (int i = 0; i < kAxiomCount && !winner; ++i)
            for (const Action& act : legal_actions_for(s, static_cast<Axiom>(i))) {
                StepResult probe = apply_step(s, act);
                if (probe.accepted && probe.proven) {
                    winner = act;
                    break;
                }
            }
        if (winner) {
            steps.push_back(*winner);
            return steps;
        }
        // otherwise sample the committed axiom from pi
        double u = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
        int a = -1;
        double acc = 0.0;
        for (std::size_t i = 0; i < r.pi.size(); ++i) {
            acc += r.pi[i];
            if (u < acc) {
                a = static_cast<int>(i);
                break;
            }
        }
        if (a < 0 || !r.root_actions[a]) {
            for (std::size_t i = 0; i < r.pi.size(); ++i)
                if (r.root_actions[i] && (a < 0 || r.visits[i] > r.visits[a]))
                    a = static_cast<int>(i);
        }
        if (a < 0) return std::nullopt;
        StepResult sr = apply_step(s, *r.root_actions[a]);
        steps.push_back(*r.root_actions[a]);
        s = std::move(sr.state);
        if (sr.accepted && sr.proven) return steps;
    }
    return std::nullopt;
}

inline std::optional<std::vector<ProofStep>> prove_greedy(const Theorem& thm, Policy& policy,
                                                          const MctsConfig& cfg, Rng& rng) {
    ProofState s = init_state(thm);
    std::vector<ProofStep> steps;
    if (proven(s)) return steps;
    while (s.steps_taken < cfg.step_limit) {
        std::vector<double> p = policy.prior(s);
        int a = -1;
        for (int i = 0; i < static_cast<int>(p.size()); ++i)
            if (p[i] > 0.0 && (a < 0 || p[i] > p[a])) a = i;
        if (a < 0) return std::nullopt;
        auto act = policy.propose_args(s, static_cast<Axiom>(a), rng);
        if (!act) return std::nullopt;
        StepResult sr = apply_step(s, *act);
        steps.push_back(*act);
        s = std::move(sr.state);
        if (sr.accepted && sr.proven) return steps;
    }
    return std::nullopt;
}

} // namespace ineq
