#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ineq/axioms.hpp"
#include "ineq/expr.hpp"

namespace ineq {

// ---------------------------------------------------------------------------
// Proof state and steps
// ---------------------------------------------------------------------------

enum class StmtKind : std::uint8_t { Goal, Premise, Fact };

// Positional address of an entity node (or of a whole statement, when
// side == Side::Stmt) within the proof state.
struct NodePath {
    StmtKind kind = StmtKind::Goal;
    int index = 0;
    Side side = Side::Stmt;
    std::vector<std::uint8_t> path;

    static NodePath stmt(StmtKind k, int i) { return {k, i, Side::Stmt, {}}; }
    static NodePath node(StmtKind k, int i, Side s, std::vector<std::uint8_t> p) {
        return {k, i, s, std::move(p)};
    }
};

enum class StepMode : std::uint8_t { Forward, Backward };

struct ProofStep {
    Axiom axiom = Axiom::AC;
    std::vector<NodePath> args;
    Direction direction = Direction::Forward; // rewrite direction / MO,AZ variant
    StepMode mode = StepMode::Forward;
};

struct Theorem {
    Statement goal;
    std::vector<Statement> premises;
    std::vector<ProofStep> proof; // may be empty
    struct Meta {
        int k = 0;
        int l = 0;
        int degree = 0;
        std::vector<Axiom> axiom_order;
        std::uint64_t seed = 0;
    } meta;
};

struct ProofState {
    std::vector<Statement> goals;
    std::vector<Statement> premises;
    std::vector<Statement> facts;
    int steps_taken = 0;

    // canonical strings of premises + facts, for O(1) triviality checks
    std::unordered_set<std::string> known;
};

inline ProofState init_state(const Theorem& thm) {
    ProofState s;
    s.goals.push_back(thm.goal);
    s.premises = thm.premises;
    for (const auto& p : s.premises) s.known.insert(print(p));
    return s;
}

// A statement is trivial if its sides coincide or it is already known.
inline bool is_trivial(const Statement& st, const ProofState& s) {
    if (equal(st.lhs, st.rhs)) return true;
    return s.known.contains(print(st));
}

inline bool proven(const ProofState& s) {
    for (const auto& g : s.goals)
        if (!is_trivial(g, s)) return false;
    return true;
}

inline const Statement* statement_at(const ProofState& s, StmtKind k, int i) {
    const std::vector<Statement>* v = nullptr;
    switch (k) {
    case StmtKind::Goal: v = &s.goals; break;
    case StmtKind::Premise: v = &s.premises; break;
    case StmtKind::Fact: v = &s.facts; break;
    }
    if (i < 0 || i >= static_cast<int>(v->size())) return nullptr;
    return &(*v)[i];
}

inline EntityPtr resolve(const ProofState& s, const NodePath& p) {
    const Statement* st = statement_at(s, p.kind, p.index);
    if (!st || p.side == Side::Stmt) return nullptr;
    return resolve_in(side_root(*st, p.side), p.path);
}

// Positional enumeration of every entity node in the state: goals, then
// premises, then facts; within a statement lhs before rhs, pre-order.
struct StateNode {
    NodePath path;
    EntityPtr entity;
};

inline std::vector<StateNode> enumerate_nodes(const ProofState& s) {
    std::vector<StateNode> out;
    auto walk = [&](StmtKind k, const std::vector<Statement>& v) {
        for (int i = 0; i < static_cast<int>(v.size()); ++i) {
            for (auto& n : enumerate_nodes(v[i]))
                out.push_back({NodePath::node(k, i, n.side, n.path), n.entity});
        }
    };
    walk(StmtKind::Goal, s.goals);
    walk(StmtKind::Premise, s.premises);
    walk(StmtKind::Fact, s.facts);
    return out;
}

// ---------------------------------------------------------------------------
// Step application. Never throws on bad agent input: a malformed or
// inapplicable step is reported as accepted=false with a reason code.
// ---------------------------------------------------------------------------

struct StepResult {
    ProofState state;
    bool accepted = false;
    bool proven = false;
    std::string reason; // set when accepted == false
};

namespace detail {

inline void add_fact(ProofState& s, const Statement& st) {
    if (equal(st.lhs, st.rhs)) return; // reflexive facts carry no information
    std::string key = print(st);
    if (s.known.contains(key)) return;
    s.known.insert(std::move(key));
    s.facts.push_back(st);
}

inline void drop_trivial_goals(ProofState& s) {
    std::erase_if(s.goals, [&](const Statement& g) { return is_trivial(g, s); });
}

} // namespace detail

inline StepResult apply_step(const ProofState& state, const ProofStep& step) {
    ProofState next = state;
    next.steps_taken += 1;
    auto reject = [&](std::string why) {
        return StepResult{std::move(next), false, proven(state), std::move(why)};
    };
    auto accept = [&]() {
        bool p = proven(next);
        return StepResult{std::move(next), true, p, {}};
    };

    if (step.args.empty()) return reject("ArityMismatch: no arguments");

    if (step.mode == StepMode::Backward) {
        const NodePath& a0 = step.args[0];
        if (a0.kind != StmtKind::Goal) return reject("InvalidPath: backward steps target a goal");
        const Statement* g = statement_at(state, a0.kind, a0.index);
        if (!g) return reject("InvalidPath: goal index out of range");
        auto assumptions = backward_match(step.axiom, *g);
        if (!assumptions) return reject("PatternMismatch: goal does not match the conclusion schema");
        std::vector<Statement> remaining;
        for (const auto& as : *assumptions)
            if (!is_trivial(as, next)) remaining.push_back(as);
        next.goals.erase(next.goals.begin() + a0.index);
        next.goals.insert(next.goals.begin() + a0.index, remaining.begin(), remaining.end());
        return accept();
    }

    // Forward mode. Rewrite route: transform axiom applied at an entity node.
    const NodePath& a0 = step.args[0];
    if (spec(step.axiom).has_transformation && a0.side != Side::Stmt) {
        const Statement* st = statement_at(state, a0.kind, a0.index);
        if (!st) return reject("InvalidPath: statement index out of range");
        EntityPtr u = resolve_in(side_root(*st, a0.side), a0.path);
        if (!u) return reject("InvalidPath: no node at path");
        EntityPtr v = rewrite(step.axiom, u, step.direction);
        if (!v) return reject("PatternMismatch: node does not match the rewrite pattern");
        EntityPtr new_root = replace_in(side_root(*st, a0.side), a0.path, v);
        Statement rewritten = *st;
        (a0.side == Side::Lhs ? rewritten.lhs : rewritten.rhs) = new_root;
        if (a0.kind == StmtKind::Goal) {
            // Goal transformation: the rewrite is an equality, so the
            // rewritten goal is equivalent to the original.
            next.goals[a0.index] = rewritten;
        } else {
            detail::add_fact(next, rewritten);
            detail::add_fact(next, Statement{Rel::Eq, u, v});
        }
        detail::drop_trivial_goals(next);
        return accept();
    }

    // Implicational route: operands per the axiom's role table.
    const AxiomSpec& sp = spec(step.axiom);
    if (static_cast<int>(step.args.size()) < sp.arity)
        return reject("ArityMismatch: too few arguments");
    std::vector<Operand> ops;
    for (int i = 0; i < sp.arity; ++i) { // redundant extra arguments ignored
        const NodePath& a = step.args[i];
        const Statement* st = statement_at(state, a.kind, a.index);
        if (!st) return reject("InvalidPath: statement index out of range");
        if (sp.roles[i] == 's') {
            if (a.side != Side::Stmt) return reject("ArityMismatch: expected a statement argument");
            if (a.kind == StmtKind::Goal)
                return reject("InvalidPath: a goal cannot be used as a fact operand");
            ops.push_back(Operand::statement(*st));
        } else {
            if (a.side == Side::Stmt) return reject("ArityMismatch: expected an entity argument");
            EntityPtr e = resolve_in(side_root(*st, a.side), a.path);
            if (!e) return reject("InvalidPath: no node at path");
            ops.push_back(Operand::entity(std::move(e)));
        }
    }
    std::string why;
    auto impl = apply_forward(step.axiom, ops, step.direction, &why);
    if (!impl) return reject(why);
    for (const auto& as : impl->assumptions)
        if (!is_trivial(as, state)) return reject("AssumptionsUnknown: " + print(as));
    for (const auto& c : impl->conclusions) detail::add_fact(next, c);
    detail::drop_trivial_goals(next);
    return accept();
}

// ---------------------------------------------------------------------------
// Verification: replay a proof from the initial state.
// ---------------------------------------------------------------------------

struct VerifyResult {
    bool ok = false;
    int failed_step = -1; // -1: none
    std::string reason;
};

inline VerifyResult verify_trace(const Theorem& thm, const std::vector<ProofStep>& proof) {
    ProofState s = init_state(thm);
    for (int i = 0; i < static_cast<int>(proof.size()); ++i) {
        StepResult r = apply_step(s, proof[i]);
        if (!r.accepted) return {false, i, r.reason};
        s = std::move(r.state);
    }
    if (!proven(s)) return {false, -1, "goal not proven after replay"};
    return {true, -1, {}};
}

inline bool verify(const Theorem& thm, const std::vector<ProofStep>& proof) {
    return verify_trace(thm, proof).ok;
}

inline bool verify(const Theorem& thm) { return verify_trace(thm, thm.proof).ok; }

// ---------------------------------------------------------------------------
// Latency benchmark over a prepared corpus of (state, step) pairs.
// ---------------------------------------------------------------------------

struct EmptyCorpus : std::runtime_error {
    EmptyCorpus() : std::runtime_error("empty benchmark corpus") {}
};

inline double bench_step_latency_ms(const std::vector<std::pair<ProofState, ProofStep>>& corpus) {
    if (corpus.empty()) throw EmptyCorpus();
    auto t0 = std::chrono::steady_clock::now();
    std::size_t sink = 0;
    for (const auto& [state, step] : corpus) {
        StepResult r = apply_step(state, step);
        sink += r.accepted ? 1 : 0;
    }
    auto t1 = std::chrono::steady_clock::now();
    double total_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    (void)sink;
    return total_ms / static_cast<double>(corpus.size());
}

} // namespace ineq
