#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "ineq/expr.hpp"

namespace ineq {

// ---------------------------------------------------------------------------
// The 18-axiom ordered-field calculus. The first 13 form the field subset.
// ---------------------------------------------------------------------------

enum class Axiom : std::uint8_t {
    AC, AA, AS, MC, MA, MS, AMLD, AMRD, SD, MO, AZ, POE, EMT, // field
    SGEQZ, EIDI, IMT, FPOI, SPOI                              // ordered field
};

inline constexpr int kAxiomCount = 18;
inline constexpr int kFieldAxiomCount = 13;

inline constexpr std::array<std::string_view, kAxiomCount> kAxiomCodes = {
    "AC", "AA", "AS", "MC", "MA", "MS", "AMLD", "AMRD", "SD", "MO", "AZ",
    "POE", "EMT", "SGEQZ", "EIDI", "IMT", "FPOI", "SPOI"};

inline std::string_view code(Axiom a) { return kAxiomCodes[static_cast<int>(a)]; }

inline std::optional<Axiom> axiom_from_code(std::string_view s) {
    if (s == "FPI") return Axiom::FPOI; // alias used in some renderings
    for (int i = 0; i < kAxiomCount; ++i)
        if (kAxiomCodes[i] == s) return static_cast<Axiom>(i);
    return std::nullopt;
}

enum class CoreForm : std::uint8_t { Equality, Inequality };
enum class Direction : std::uint8_t { Forward, Reverse };

struct AxiomSpec {
    std::string_view code;
    // Arity of the implicational (statement-operand) form; argument roles
    // are: 's' = statement root, 'n' = sampled entity node.
    int arity;
    std::array<char, 3> roles;
    bool has_transformation; // non-NA rewrite pattern
    CoreForm extension_core_form;
};

inline const AxiomSpec& spec(Axiom a) {
    static const std::array<AxiomSpec, kAxiomCount> table = {{
        {"AC", 2, {'s', 'n', 0}, true, CoreForm::Equality},
        {"AA", 3, {'s', 'n', 'n'}, true, CoreForm::Equality},
        {"AS", 1, {'s', 0, 0}, true, CoreForm::Equality},
        {"MC", 2, {'s', 'n', 0}, true, CoreForm::Equality},
        {"MA", 3, {'s', 'n', 'n'}, true, CoreForm::Equality},
        {"MS", 1, {'s', 0, 0}, true, CoreForm::Equality},
        {"AMLD", 3, {'s', 'n', 'n'}, true, CoreForm::Equality},
        {"AMRD", 3, {'s', 'n', 'n'}, true, CoreForm::Equality},
        {"SD", 1, {'s', 0, 0}, true, CoreForm::Equality},
        {"MO", 1, {'s', 0, 0}, true, CoreForm::Equality},
        {"AZ", 1, {'s', 0, 0}, true, CoreForm::Equality},
        {"POE", 2, {'s', 's', 0}, false, CoreForm::Equality},
        {"EMT", 1, {'s', 0, 0}, false, CoreForm::Equality},
        {"SGEQZ", 1, {'s', 0, 0}, false, CoreForm::Equality},
        {"EIDI", 1, {'s', 0, 0}, false, CoreForm::Equality},
        {"IMT", 1, {'s', 0, 0}, false, CoreForm::Inequality},
        {"FPOI", 2, {'s', 's', 0}, false, CoreForm::Inequality},
        {"SPOI", 2, {'s', 's', 0}, false, CoreForm::Inequality},
    }};
    return table[static_cast<int>(a)];
}

// ---------------------------------------------------------------------------
// Transformation rules (local rewrites L_a -> R_a).
// ---------------------------------------------------------------------------

struct Binding {
    EntityPtr x1, x2, x3;
    // MO/AZ list two left patterns (x1*1 | 1*x1, x1+0 | 0+x1); 0 = unit on
    // the right, 1 = unit on the left.
    int orientation = 0;
};

// Matches node against L_a (Forward) or R_a (Reverse) and returns the slot
// binding. Reverse AS/MS match a bare constant and cannot bind x1, so they
// report no match.
inline std::optional<Binding> match_transform(Axiom a, const EntityPtr& n, Direction dir) {
    const bool fwd = dir == Direction::Forward;
    switch (a) {
    case Axiom::AC:
        if (n->op == Op::Add) return Binding{fwd ? n->left : n->right, fwd ? n->right : n->left, nullptr};
        return std::nullopt;
    case Axiom::MC:
        if (n->op == Op::Mul) return Binding{fwd ? n->left : n->right, fwd ? n->right : n->left, nullptr};
        return std::nullopt;
    case Axiom::AA:
        if (fwd) {
            if (n->op == Op::Add && n->right->op == Op::Add)
                return Binding{n->left, n->right->left, n->right->right};
        } else {
            if (n->op == Op::Add && n->left->op == Op::Add)
                return Binding{n->left->left, n->left->right, n->right};
        }
        return std::nullopt;
    case Axiom::MA:
        if (fwd) {
            if (n->op == Op::Mul && n->right->op == Op::Mul)
                return Binding{n->left, n->right->left, n->right->right};
        } else {
            if (n->op == Op::Mul && n->left->op == Op::Mul)
                return Binding{n->left->left, n->left->right, n->right};
        }
        return std::nullopt;
    case Axiom::AS:
        if (fwd && n->op == Op::Add && n->right->op == Op::Neg && equal(n->left, n->right->left))
            return Binding{n->left, nullptr, nullptr};
        return std::nullopt;
    case Axiom::MS:
        if (fwd && n->op == Op::Mul && n->right->op == Op::Inv && equal(n->left, n->right->left))
            return Binding{n->left, nullptr, nullptr};
        return std::nullopt;
    case Axiom::AMLD:
        if (fwd) {
            if (n->op == Op::Mul && n->left->op == Op::Add)
                return Binding{n->left->left, n->left->right, n->right};
        } else {
            if (n->op == Op::Add && n->left->op == Op::Mul && n->right->op == Op::Mul &&
                equal(n->left->right, n->right->right))
                return Binding{n->left->left, n->right->left, n->left->right};
        }
        return std::nullopt;
    case Axiom::AMRD:
        if (fwd) {
            if (n->op == Op::Mul && n->right->op == Op::Add)
                return Binding{n->left, n->right->left, n->right->right};
        } else {
            if (n->op == Op::Add && n->left->op == Op::Mul && n->right->op == Op::Mul &&
                equal(n->left->left, n->right->left))
                return Binding{n->left->left, n->left->right, n->right->right};
        }
        return std::nullopt;
    case Axiom::SD:
        if (fwd) {
            if (n->op == Op::Sqr) return Binding{n->left, nullptr, nullptr};
        } else {
            if (n->op == Op::Mul && equal(n->left, n->right))
                return Binding{n->left, nullptr, nullptr};
        }
        return std::nullopt;
    case Axiom::MO:
        if (fwd) {
            if (n->op == Op::Mul && is_const(n->right, 1)) return Binding{n->left, nullptr, nullptr, 0};
            if (n->op == Op::Mul && is_const(n->left, 1)) return Binding{n->right, nullptr, nullptr, 1};
        } else {
            return Binding{n, nullptr, nullptr, 0};
        }
        return std::nullopt;
    case Axiom::AZ:
        if (fwd) {
            if (n->op == Op::Add && is_const(n->right, 0)) return Binding{n->left, nullptr, nullptr, 0};
            if (n->op == Op::Add && is_const(n->left, 0)) return Binding{n->right, nullptr, nullptr, 1};
        } else {
            return Binding{n, nullptr, nullptr, 0};
        }
        return std::nullopt;
    default:
        return std::nullopt;
    }
}

// Substitutes the binding into the opposite pattern: Forward maps L_a -> R_a.
inline EntityPtr rewrite(Axiom a, const EntityPtr& n, Direction dir) {
    auto b = match_transform(a, n, dir);
    if (!b) return nullptr;
    const bool fwd = dir == Direction::Forward;
    switch (a) {
    case Axiom::AC: return fwd ? add(b->x2, b->x1) : add(b->x1, b->x2);
    case Axiom::MC: return fwd ? mul(b->x2, b->x1) : mul(b->x1, b->x2);
    case Axiom::AA: return fwd ? add(add(b->x1, b->x2), b->x3) : add(b->x1, add(b->x2, b->x3));
    case Axiom::MA: return fwd ? mul(mul(b->x1, b->x2), b->x3) : mul(b->x1, mul(b->x2, b->x3));
    case Axiom::AS: return zero();
    case Axiom::MS: return one();
    case Axiom::AMLD: return fwd ? add(mul(b->x1, b->x3), mul(b->x2, b->x3)) : mul(add(b->x1, b->x2), b->x3);
    case Axiom::AMRD: return fwd ? add(mul(b->x1, b->x2), mul(b->x1, b->x3)) : mul(b->x1, add(b->x2, b->x3));
    case Axiom::SD: return fwd ? mul(b->x1, b->x1) : sqr(b->x1);
    case Axiom::MO: return fwd ? b->x1 : mul(b->x1, one());
    case Axiom::AZ: return fwd ? b->x1 : add(b->x1, zero());
    default: return nullptr;
    }
}

// ---------------------------------------------------------------------------
// Forward (implicational) semantics: assumptions -> conclusions.
// ---------------------------------------------------------------------------

struct Implication {
    std::vector<Statement> assumptions;
    std::vector<Statement> conclusions;
};

struct Operand {
    bool is_statement = false;
    Statement stmt;
    EntityPtr ent;

    static Operand statement(Statement s) { return {true, std::move(s), nullptr}; }
    static Operand entity(EntityPtr e) { return {false, {}, std::move(e)}; }
};

// Instantiates the axiom schema on the given operands. Statement-operand
// forms mirror the generator's extension functions so that generated steps
// replay one-to-one; `orientation` picks the variant for MO/AZ.
// Returns nullopt with a reason on arity/shape mismatch.
inline std::optional<Implication> apply_forward(Axiom a, std::span<const Operand> ops,
                                                Direction orientation = Direction::Forward,
                                                std::string* reason = nullptr) {
    auto fail = [&](const char* why) -> std::optional<Implication> {
        if (reason) *reason = why;
        return std::nullopt;
    };

    // Single entity operand on a rewrite axiom: the node equality itself.
    if (ops.size() == 1 && !ops[0].is_statement) {
        if (!spec(a).has_transformation) return fail("PatternMismatch: axiom has no rewrite form");
        EntityPtr v = rewrite(a, ops[0].ent, orientation);
        if (!v) return fail("PatternMismatch: node does not match the rewrite pattern");
        return Implication{{}, {Statement{Rel::Eq, ops[0].ent, v}}};
    }

    const AxiomSpec& sp = spec(a);
    if (static_cast<int>(ops.size()) != sp.arity) return fail("ArityMismatch");
    for (int i = 0; i < sp.arity; ++i) {
        if (ops[i].is_statement != (sp.roles[i] == 's'))
            return fail("ArityMismatch: operand role");
    }

    auto need_rel = [&](const Statement& s, Rel r) { return s.rel == r; };

    switch (a) {
    case Axiom::AC: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        const EntityPtr& n = ops[1].ent;
        return Implication{{c}, {Statement{Rel::Eq, add(c.rhs, n), add(n, c.lhs)}}};
    }
    case Axiom::AA: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        const EntityPtr &n1 = ops[1].ent, &n2 = ops[2].ent;
        return Implication{{c}, {Statement{Rel::Eq, add(c.rhs, add(n1, n2)), add(add(c.lhs, n1), n2)}}};
    }
    case Axiom::AS: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        return Implication{{c}, {Statement{Rel::Eq, zero(), add(c.lhs, neg(c.rhs))}}};
    }
    case Axiom::MC: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        const EntityPtr& n = ops[1].ent;
        return Implication{{c}, {Statement{Rel::Eq, mul(c.rhs, n), mul(n, c.lhs)}}};
    }
    case Axiom::MA: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        const EntityPtr &n1 = ops[1].ent, &n2 = ops[2].ent;
        return Implication{{c}, {Statement{Rel::Eq, mul(c.rhs, mul(n1, n2)), mul(mul(c.lhs, n1), n2)}}};
    }
    case Axiom::MS: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        if (is_const(c.rhs, 0)) return fail("PatternMismatch: division by syntactic zero");
        return Implication{{c}, {Statement{Rel::Eq, one(), mul(c.lhs, inv(c.rhs))}}};
    }
    case Axiom::AMLD: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        const EntityPtr &n1 = ops[1].ent, &n2 = ops[2].ent;
        return Implication{{c}, {Statement{Rel::Eq, mul(add(n1, n2), c.rhs),
                                           add(mul(n1, c.lhs), mul(n2, c.lhs))}}};
    }
    case Axiom::AMRD: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        const EntityPtr &n1 = ops[1].ent, &n2 = ops[2].ent;
        return Implication{{c}, {Statement{Rel::Eq, mul(c.rhs, add(n1, n2)),
                                           add(mul(c.lhs, n1), mul(c.lhs, n2))}}};
    }
    case Axiom::SD: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        return Implication{{c}, {Statement{Rel::Eq, mul(c.lhs, c.rhs), sqr(c.lhs)}}};
    }
    case Axiom::MO: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        EntityPtr l = orientation == Direction::Forward ? mul(c.lhs, one()) : mul(one(), c.lhs);
        return Implication{{c}, {Statement{Rel::Eq, l, c.rhs}}};
    }
    case Axiom::AZ: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        EntityPtr l = orientation == Direction::Forward ? add(c.lhs, zero()) : add(zero(), c.lhs);
        return Implication{{c}, {Statement{Rel::Eq, l, c.rhs}}};
    }
    case Axiom::POE: {
        const Statement &c1 = ops[0].stmt, &c2 = ops[1].stmt;
        if (!need_rel(c1, Rel::Eq) || !need_rel(c2, Rel::Eq)) return fail("CoreFormMismatch");
        return Implication{{c1, c2}, {Statement{Rel::Eq, add(c1.lhs, c2.lhs), add(c1.rhs, c2.rhs)}}};
    }
    case Axiom::EMT: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        if (c.lhs->op != Op::Add) return fail("PatternMismatch: LHS is not a sum");
        return Implication{{c}, {Statement{Rel::Eq, c.lhs->left, add(c.rhs, neg(c.lhs->right))}}};
    }
    case Axiom::SGEQZ: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        return Implication{{c}, {Statement{Rel::Geq, mul(c.lhs, c.rhs), zero()}}};
    }
    case Axiom::EIDI: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Eq)) return fail("CoreFormMismatch");
        return Implication{{c}, {Statement{Rel::Geq, c.lhs, c.rhs},
                                 Statement{Rel::Leq, c.lhs, c.rhs}}};
    }
    case Axiom::IMT: {
        const Statement& c = ops[0].stmt;
        if (!need_rel(c, Rel::Geq)) return fail("CoreFormMismatch");
        if (c.lhs->op != Op::Add) return fail("PatternMismatch: LHS is not a sum");
        return Implication{{c}, {Statement{Rel::Geq, c.lhs->left, add(c.rhs, neg(c.lhs->right))}}};
    }
    case Axiom::FPOI: {
        const Statement &c1 = ops[0].stmt, &c2 = ops[1].stmt;
        if (!need_rel(c1, Rel::Geq) || !need_rel(c2, Rel::Geq)) return fail("CoreFormMismatch");
        return Implication{{c1, c2}, {Statement{Rel::Geq, add(c1.lhs, c2.lhs), add(c1.rhs, c2.rhs)}}};
    }
    case Axiom::SPOI: {
        const Statement &c1 = ops[0].stmt, &c2 = ops[1].stmt;
        if (!need_rel(c1, Rel::Geq) || !need_rel(c2, Rel::Geq)) return fail("CoreFormMismatch");
        if (!is_const(c2.rhs, 0)) return fail("PatternMismatch: second operand must be n >= 0");
        return Implication{{c1, c2}, {Statement{Rel::Geq, mul(c1.lhs, c2.lhs), mul(c1.rhs, c2.lhs)}}};
    }
    }
    return fail("unknown axiom");
}

// ---------------------------------------------------------------------------
// Backward destructuring: if the goal matches the axiom's conclusion schema,
// return the assumptions it came from. This is the goal-directed reading of
// "if the conclusions include the goal, the unproven assumptions become the
// new goal".
// ---------------------------------------------------------------------------

inline std::optional<std::vector<Statement>> backward_match(Axiom a, const Statement& g) {
    const EntityPtr &l = g.lhs, &r = g.rhs;
    auto eq = [](EntityPtr x, EntityPtr y) { return Statement{Rel::Eq, std::move(x), std::move(y)}; };
    auto geq = [](EntityPtr x, EntityPtr y) { return Statement{Rel::Geq, std::move(x), std::move(y)}; };

    switch (a) {
    case Axiom::AC: // (Y+n)=(n+X)  =>  X=Y
        if (g.rel == Rel::Eq && l->op == Op::Add && r->op == Op::Add && equal(l->right, r->left))
            return std::vector{eq(r->right, l->left)};
        return std::nullopt;
    case Axiom::MC:
        if (g.rel == Rel::Eq && l->op == Op::Mul && r->op == Op::Mul && equal(l->right, r->left))
            return std::vector{eq(r->right, l->left)};
        return std::nullopt;
    case Axiom::AA: // (Y+(n1+n2))=((X+n1)+n2)  =>  X=Y
        if (g.rel == Rel::Eq && l->op == Op::Add && l->right->op == Op::Add &&
            r->op == Op::Add && r->left->op == Op::Add &&
            equal(l->right->left, r->left->right) && equal(l->right->right, r->right))
            return std::vector{eq(r->left->left, l->left)};
        return std::nullopt;
    case Axiom::MA:
        if (g.rel == Rel::Eq && l->op == Op::Mul && l->right->op == Op::Mul &&
            r->op == Op::Mul && r->left->op == Op::Mul &&
            equal(l->right->left, r->left->right) && equal(l->right->right, r->right))
            return std::vector{eq(r->left->left, l->left)};
        return std::nullopt;
    case Axiom::AS: // 0=(X+(-Y))  =>  X=Y
        if (g.rel == Rel::Eq && is_const(l, 0) && r->op == Op::Add && r->right->op == Op::Neg)
            return std::vector{eq(r->left, r->right->left)};
        return std::nullopt;
    case Axiom::MS: // 1=(X*(1/Y))  =>  X=Y
        if (g.rel == Rel::Eq && is_const(l, 1) && r->op == Op::Mul && r->right->op == Op::Inv &&
            !is_const(r->right->left, 0))
            return std::vector{eq(r->left, r->right->left)};
        return std::nullopt;
    case Axiom::AMLD: // ((n1+n2)*Y)=((n1*X)+(n2*X))  =>  X=Y
        if (g.rel == Rel::Eq && l->op == Op::Mul && l->left->op == Op::Add &&
            r->op == Op::Add && r->left->op == Op::Mul && r->right->op == Op::Mul &&
            equal(l->left->left, r->left->left) && equal(l->left->right, r->right->left) &&
            equal(r->left->right, r->right->right))
            return std::vector{eq(r->left->right, l->right)};
        return std::nullopt;
    case Axiom::AMRD: // (Y*(n1+n2))=((X*n1)+(X*n2))  =>  X=Y
        if (g.rel == Rel::Eq && l->op == Op::Mul && l->right->op == Op::Add &&
            r->op == Op::Add && r->left->op == Op::Mul && r->right->op == Op::Mul &&
            equal(l->right->left, r->left->right) && equal(l->right->right, r->right->right) &&
            equal(r->left->left, r->right->left))
            return std::vector{eq(r->left->left, l->left)};
        return std::nullopt;
    case Axiom::SD: // (X*Y)=(X^2)  =>  X=Y
        if (g.rel == Rel::Eq && l->op == Op::Mul && r->op == Op::Sqr && equal(l->left, r->left))
            return std::vector{eq(l->left, l->right)};
        return std::nullopt;
    case Axiom::MO: // (X*1)=Y or (1*X)=Y  =>  X=Y
        if (g.rel == Rel::Eq && l->op == Op::Mul) {
            if (is_const(l->right, 1)) return std::vector{eq(l->left, r)};
            if (is_const(l->left, 1)) return std::vector{eq(l->right, r)};
        }
        return std::nullopt;
    case Axiom::AZ:
        if (g.rel == Rel::Eq && l->op == Op::Add) {
            if (is_const(l->right, 0)) return std::vector{eq(l->left, r)};
            if (is_const(l->left, 0)) return std::vector{eq(l->right, r)};
        }
        return std::nullopt;
    case Axiom::POE: // (X+n1)=(Y+n2)  =>  X=Y, n1=n2
        if (g.rel == Rel::Eq && l->op == Op::Add && r->op == Op::Add)
            return std::vector{eq(l->left, r->left), eq(l->right, r->right)};
        return std::nullopt;
    case Axiom::EMT: // x=(Y+(-y))  =>  (x+y)=Y
        if (g.rel == Rel::Eq && r->op == Op::Add && r->right->op == Op::Neg)
            return std::vector{eq(add(l, r->right->left), r->left)};
        return std::nullopt;
    case Axiom::SGEQZ: // (X*Y)>=0  =>  X=Y
        if (g.rel == Rel::Geq && l->op == Op::Mul && is_const(r, 0))
            return std::vector{eq(l->left, l->right)};
        return std::nullopt;
    case Axiom::EIDI: // X>=Y or X<=Y  =>  X=Y
        if (g.rel == Rel::Geq || g.rel == Rel::Leq)
            return std::vector{eq(l, r)};
        return std::nullopt;
    case Axiom::IMT: // x>=(Y+(-y))  =>  (x+y)>=Y
        if (g.rel == Rel::Geq && r->op == Op::Add && r->right->op == Op::Neg)
            return std::vector{geq(add(l, r->right->left), r->left)};
        return std::nullopt;
    case Axiom::FPOI: // (X+n1)>=(Y+n2)  =>  X>=Y, n1>=n2
        if (g.rel == Rel::Geq && l->op == Op::Add && r->op == Op::Add)
            return std::vector{geq(l->left, r->left), geq(l->right, r->right)};
        return std::nullopt;
    case Axiom::SPOI: // (X*n)>=(Y*n)  =>  X>=Y, n>=0
        if (g.rel == Rel::Geq && l->op == Op::Mul && r->op == Op::Mul && equal(l->right, r->right))
            return std::vector{geq(l->left, r->left), geq(l->right, zero())};
        return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Extension functions: wrap the core statement, possibly emitting premises.
// ---------------------------------------------------------------------------

struct ExtendResult {
    Statement core;
    std::vector<Statement> premises;
    std::vector<EntityPtr> sampled;    // nodes drawn from the pool, in order
    Direction orientation = Direction::Forward; // MO/AZ variant
};

struct ExtendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One sampling attempt. Callers that need jointly satisfiable premises
// (the generator) probe the result numerically and retry with fresh draws.
inline std::optional<ExtendResult> extend(Axiom a, const Statement& c,
                                          std::span<const EntityPtr> pool, Rng& rng) {
    const AxiomSpec& sp = spec(a);
    Rel want = sp.extension_core_form == CoreForm::Equality ? Rel::Eq : Rel::Geq;
    if (c.rel != want) return std::nullopt;

    auto pick = [&]() -> EntityPtr {
        if (pool.empty()) throw ExtendError("EmptyPool");
        return pool[rng.index(pool.size())];
    };

    const EntityPtr &X = c.lhs, &Y = c.rhs;
    switch (a) {
    case Axiom::AC: {
        EntityPtr n = pick();
        return ExtendResult{Statement{Rel::Eq, add(Y, n), add(n, X)}, {}, {n}};
    }
    case Axiom::AA: {
        EntityPtr n1 = pick(), n2 = pick();
        return ExtendResult{Statement{Rel::Eq, add(Y, add(n1, n2)), add(add(X, n1), n2)}, {}, {n1, n2}};
    }
    case Axiom::AS:
        return ExtendResult{Statement{Rel::Eq, zero(), add(X, neg(Y))}, {}, {}};
    case Axiom::MC: {
        EntityPtr n = pick();
        return ExtendResult{Statement{Rel::Eq, mul(Y, n), mul(n, X)}, {}, {n}};
    }
    case Axiom::MA: {
        EntityPtr n1 = pick(), n2 = pick();
        return ExtendResult{Statement{Rel::Eq, mul(Y, mul(n1, n2)), mul(mul(X, n1), n2)}, {}, {n1, n2}};
    }
    case Axiom::MS:
        if (is_const(Y, 0)) return std::nullopt;
        return ExtendResult{Statement{Rel::Eq, one(), mul(X, inv(Y))}, {}, {}};
    case Axiom::AMLD: {
        EntityPtr n1 = pick(), n2 = pick();
        return ExtendResult{Statement{Rel::Eq, mul(add(n1, n2), Y), add(mul(n1, X), mul(n2, X))},
                            {}, {n1, n2}};
    }
    case Axiom::AMRD: {
        EntityPtr n1 = pick(), n2 = pick();
        return ExtendResult{Statement{Rel::Eq, mul(Y, add(n1, n2)), add(mul(X, n1), mul(X, n2))},
                            {}, {n1, n2}};
    }
    case Axiom::SD:
        return ExtendResult{Statement{Rel::Eq, mul(X, Y), sqr(X)}, {}, {}};
    case Axiom::MO: {
        bool left_unit = rng.coin();
        return ExtendResult{Statement{Rel::Eq, left_unit ? mul(one(), X) : mul(X, one()), Y}, {}, {},
                            left_unit ? Direction::Reverse : Direction::Forward};
    }
    case Axiom::AZ: {
        bool left_unit = rng.coin();
        return ExtendResult{Statement{Rel::Eq, left_unit ? add(zero(), X) : add(X, zero()), Y}, {}, {},
                            left_unit ? Direction::Reverse : Direction::Forward};
    }
    case Axiom::SGEQZ:
        return ExtendResult{Statement{Rel::Geq, mul(X, Y), zero()}, {}, {}};
    case Axiom::POE: {
        EntityPtr n1 = pick(), n2 = pick();
        return ExtendResult{Statement{Rel::Eq, add(X, n1), add(Y, n2)},
                            {Statement{Rel::Eq, n1, n2}}, {n1, n2}};
    }
    case Axiom::EMT:
        if (X->op != Op::Add) return std::nullopt;
        return ExtendResult{Statement{Rel::Eq, X->left, add(Y, neg(X->right))}, {}, {}};
    case Axiom::EIDI:
        return ExtendResult{Statement{Rel::Geq, X, Y}, {}, {}};
    case Axiom::IMT:
        if (X->op != Op::Add) return std::nullopt;
        return ExtendResult{Statement{Rel::Geq, X->left, add(Y, neg(X->right))}, {}, {}};
    case Axiom::FPOI: {
        EntityPtr n1 = pick(), n2 = pick();
        return ExtendResult{Statement{Rel::Geq, add(X, n1), add(Y, n2)},
                            {Statement{Rel::Geq, n1, n2}}, {n1, n2}};
    }
    case Axiom::SPOI: {
        EntityPtr n = pick();
        return ExtendResult{Statement{Rel::Geq, mul(X, n), mul(Y, n)},
                            {Statement{Rel::Geq, n, zero()}}, {n}};
    }
    }
    return std::nullopt;
}

} // namespace ineq
