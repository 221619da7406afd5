#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ineq/rng.hpp"

namespace ineq {

// ---------------------------------------------------------------------------
// Entities: terms over variables a..e, constants 0/1 and the operators
// +, *, unary -, 1/x, x^2. Immutable trees shared by pointer.
// ---------------------------------------------------------------------------

enum class Op : std::uint8_t { Var, Const, Add, Mul, Neg, Inv, Sqr };

struct Entity;
using EntityPtr = std::shared_ptr<const Entity>;

struct Entity {
    Op op;
    char name = 0;   // Op::Var
    int value = 0;   // Op::Const, 0 or 1
    EntityPtr left;  // first/only child
    EntityPtr right; // second child (Add/Mul)
};

inline EntityPtr var(char name) {
    return std::make_shared<Entity>(Entity{Op::Var, name, 0, nullptr, nullptr});
}
inline EntityPtr constant(int v) {
    return std::make_shared<Entity>(Entity{Op::Const, 0, v, nullptr, nullptr});
}
inline EntityPtr zero() { static EntityPtr e = constant(0); return e; }
inline EntityPtr one()  { static EntityPtr e = constant(1); return e; }
inline EntityPtr add(EntityPtr l, EntityPtr r) {
    return std::make_shared<Entity>(Entity{Op::Add, 0, 0, std::move(l), std::move(r)});
}
inline EntityPtr mul(EntityPtr l, EntityPtr r) {
    return std::make_shared<Entity>(Entity{Op::Mul, 0, 0, std::move(l), std::move(r)});
}
inline EntityPtr neg(EntityPtr c) {
    return std::make_shared<Entity>(Entity{Op::Neg, 0, 0, std::move(c), nullptr});
}
inline EntityPtr inv(EntityPtr c) {
    return std::make_shared<Entity>(Entity{Op::Inv, 0, 0, std::move(c), nullptr});
}
inline EntityPtr sqr(EntityPtr c) {
    return std::make_shared<Entity>(Entity{Op::Sqr, 0, 0, std::move(c), nullptr});
}

inline bool equal(const EntityPtr& a, const EntityPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->op != b->op) return false;
    switch (a->op) {
    case Op::Var:   return a->name == b->name;
    case Op::Const: return a->value == b->value;
    case Op::Add:
    case Op::Mul:   return equal(a->left, b->left) && equal(a->right, b->right);
    default:        return equal(a->left, b->left);
    }
}

inline bool is_const(const EntityPtr& e, int v) {
    return e->op == Op::Const && e->value == v;
}

// Number of operators (Add/Mul/Neg/Inv/Sqr) in the tree.
inline int degree(const EntityPtr& e) {
    switch (e->op) {
    case Op::Var:
    case Op::Const: return 0;
    case Op::Add:
    case Op::Mul:   return 1 + degree(e->left) + degree(e->right);
    default:        return 1 + degree(e->left);
    }
}

// ---------------------------------------------------------------------------
// Canonical printing. Fully parenthesized, so that parse(print(x)) == x.
//   (X+Y) (X*Y) (-X) (1/X) (X^2)
// ---------------------------------------------------------------------------

inline void print_to(const EntityPtr& e, std::string& out) {
    switch (e->op) {
    case Op::Var:   out.push_back(e->name); break;
    case Op::Const: out.push_back(static_cast<char>('0' + e->value)); break;
    case Op::Add:
        out.push_back('(');
        print_to(e->left, out);
        out.push_back('+');
        print_to(e->right, out);
        out.push_back(')');
        break;
    case Op::Mul:
        out.push_back('(');
        print_to(e->left, out);
        out.push_back('*');
        print_to(e->right, out);
        out.push_back(')');
        break;
    case Op::Neg:
        out += "(-";
        print_to(e->left, out);
        out.push_back(')');
        break;
    case Op::Inv:
        out += "(1/";
        print_to(e->left, out);
        out.push_back(')');
        break;
    case Op::Sqr:
        out.push_back('(');
        print_to(e->left, out);
        out += "^2)";
        break;
    }
}

inline std::string print(const EntityPtr& e) {
    std::string s;
    print_to(e, s);
    return s;
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

enum class Rel : std::uint8_t { Eq, Geq, Leq };

struct Statement {
    Rel rel = Rel::Eq;
    EntityPtr lhs;
    EntityPtr rhs;
};

inline bool equal(const Statement& a, const Statement& b) {
    return a.rel == b.rel && equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
}

inline std::string print(const Statement& s) {
    std::string out;
    print_to(s.lhs, out);
    switch (s.rel) {
    case Rel::Eq:  out += "="; break;
    case Rel::Geq: out += ">="; break;
    case Rel::Leq: out += "<="; break;
    }
    print_to(s.rhs, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing. Whitespace-insensitive recursive descent over the canonical
// grammar. Errors carry the byte offset and what was expected.
// ---------------------------------------------------------------------------

struct ParseError : std::runtime_error {
    std::size_t offset;
    std::string expected;
    ParseError(std::size_t off, std::string exp)
        : std::runtime_error("parse error at byte " + std::to_string(off) +
                             ": expected " + exp),
          offset(off), expected(std::move(exp)) {}
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    EntityPtr entity() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "entity");
        char c = text_[pos_];
        if (c >= 'a' && c <= 'z') { ++pos_; return var(c); }
        if (c == '0' || c == '1') { ++pos_; return constant(c - '0'); }
        if (c != '(') throw ParseError(pos_, "variable, constant or '('");
        ++pos_;
        skip_ws();
        if (peek() == '-') { ++pos_; EntityPtr child = entity(); expect(')'); return neg(child); }
        if (peek() == '1' && peek_at(1) == '/') {
            pos_ += 2;
            EntityPtr child = entity();
            expect(')');
            return inv(child);
        }
        EntityPtr l = entity();
        skip_ws();
        char op = peek();
        if (op == '+' || op == '*') {
            ++pos_;
            EntityPtr r = entity();
            expect(')');
            return op == '+' ? add(l, r) : mul(l, r);
        }
        if (op == '^') {
            ++pos_;
            expect('2');
            expect(')');
            return sqr(l);
        }
        throw ParseError(pos_, "'+', '*' or '^2'");
    }

    Statement statement() {
        EntityPtr l = entity();
        skip_ws();
        Rel rel;
        if (peek() == '=') { ++pos_; rel = Rel::Eq; }
        else if (peek() == '>') { ++pos_; expect('='); rel = Rel::Geq; }
        else if (peek() == '<') { ++pos_; expect('='); rel = Rel::Leq; }
        else throw ParseError(pos_, "'=', '>=' or '<='");
        EntityPtr r = entity();
        return Statement{rel, l, r};
    }

    void finish() {
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char peek_at(std::size_t k) const {
        std::size_t p = pos_;
        // skip whitespace between the probed characters
        std::size_t seen = 0;
        while (p < text_.size()) {
            if (!std::isspace(static_cast<unsigned char>(text_[p]))) {
                if (seen == k) return text_[p];
                ++seen;
            }
            ++p;
        }
        return '\0';
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError(pos_, std::string("'") + c + "'");
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline EntityPtr parse_entity(std::string_view text) {
    detail::Parser p(text);
    EntityPtr e = p.entity();
    p.finish();
    return e;
}

inline Statement parse_statement(std::string_view text) {
    detail::Parser p(text);
    Statement s = p.statement();
    p.finish();
    return s;
}

// ---------------------------------------------------------------------------
// Node addressing within one statement. A path is a sequence of child
// indices (0 = left/only child, 1 = right) below the chosen side root.
// ---------------------------------------------------------------------------

enum class Side : std::uint8_t { Lhs, Rhs, Stmt };
// Side::Stmt marks an argument that refers to the statement as a whole
// (an axiom's "fact root" argument) rather than to an entity node.

inline const EntityPtr& side_root(const Statement& s, Side side) {
    return side == Side::Rhs ? s.rhs : s.lhs;
}

inline EntityPtr resolve_in(const EntityPtr& root, std::span<const std::uint8_t> path) {
    EntityPtr cur = root;
    for (std::uint8_t step : path) {
        if (!cur) return nullptr;
        switch (cur->op) {
        case Op::Add:
        case Op::Mul:
            if (step > 1) return nullptr;
            cur = step == 0 ? cur->left : cur->right;
            break;
        case Op::Neg:
        case Op::Inv:
        case Op::Sqr:
            if (step != 0) return nullptr;
            cur = cur->left;
            break;
        default:
            return nullptr;
        }
    }
    return cur;
}

// Persistent substitution: rebuilds the spine above the path only.
inline EntityPtr replace_in(const EntityPtr& root, std::span<const std::uint8_t> path,
                            const EntityPtr& replacement) {
    if (path.empty()) return replacement;
    std::uint8_t step = path.front();
    auto rest = path.subspan(1);
    switch (root->op) {
    case Op::Add:
    case Op::Mul:
        if (step > 1) return nullptr;
        if (step == 0) {
            auto l = replace_in(root->left, rest, replacement);
            if (!l) return nullptr;
            return root->op == Op::Add ? add(l, root->right) : mul(l, root->right);
        } else {
            auto r = replace_in(root->right, rest, replacement);
            if (!r) return nullptr;
            return root->op == Op::Add ? add(root->left, r) : mul(root->left, r);
        }
    case Op::Neg:
    case Op::Inv:
    case Op::Sqr: {
        if (step != 0) return nullptr;
        auto c = replace_in(root->left, rest, replacement);
        if (!c) return nullptr;
        if (root->op == Op::Neg) return neg(c);
        if (root->op == Op::Inv) return inv(c);
        return sqr(c);
    }
    default:
        return nullptr;
    }
}

struct StatementNode {
    Side side;
    std::vector<std::uint8_t> path;
    EntityPtr entity;
};

// Pre-order enumeration of every entity subterm: lhs before rhs, parent
// before children. Duplicated subterms appear once per position.
inline void enumerate_side(Side side, const EntityPtr& root,
                           std::vector<StatementNode>& out) {
    struct Item { EntityPtr e; std::vector<std::uint8_t> path; };
    std::vector<Item> stack{{root, {}}};
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        out.push_back({side, it.path, it.e});
        switch (it.e->op) {
        case Op::Add:
        case Op::Mul: {
            auto rp = it.path; rp.push_back(1);
            auto lp = std::move(it.path); lp.push_back(0);
            stack.push_back({it.e->right, std::move(rp)});
            stack.push_back({it.e->left, std::move(lp)});
            break;
        }
        case Op::Neg:
        case Op::Inv:
        case Op::Sqr: {
            auto p = std::move(it.path); p.push_back(0);
            stack.push_back({it.e->left, std::move(p)});
            break;
        }
        default: break;
        }
    }
}

inline std::vector<StatementNode> enumerate_nodes(const Statement& s) {
    std::vector<StatementNode> out;
    enumerate_side(Side::Lhs, s.lhs, out);
    enumerate_side(Side::Rhs, s.rhs, out);
    return out;
}

// ---------------------------------------------------------------------------
// Exact rational evaluation (soundness oracle). Sqr(x) = x*x, Neg(x) = -x,
// Inv(x) = 1/x. Division by zero and unassigned variables throw.
// ---------------------------------------------------------------------------

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZero : EvalError {
    DivisionByZero() : EvalError("division by zero") {}
};
struct UnassignedVariable : EvalError {
    explicit UnassignedVariable(char v)
        : EvalError(std::string("unassigned variable ") + v) {}
};

using Assignment = std::map<char, mpq_class>;

inline mpq_class eval_numeric(const EntityPtr& e, const Assignment& assignment) {
    switch (e->op) {
    case Op::Var: {
        auto it = assignment.find(e->name);
        if (it == assignment.end()) throw UnassignedVariable(e->name);
        return it->second;
    }
    case Op::Const: return mpq_class(e->value);
    case Op::Add:   return eval_numeric(e->left, assignment) + eval_numeric(e->right, assignment);
    case Op::Mul:   return eval_numeric(e->left, assignment) * eval_numeric(e->right, assignment);
    case Op::Neg:   return -eval_numeric(e->left, assignment);
    case Op::Inv: {
        mpq_class v = eval_numeric(e->left, assignment);
        if (v == 0) throw DivisionByZero();
        return 1 / v;
    }
    case Op::Sqr: {
        mpq_class v = eval_numeric(e->left, assignment);
        return v * v;
    }
    }
    throw EvalError("corrupt entity");
}

// True iff the relation holds under the assignment. Throws on division by
// zero; callers resample such assignments.
inline bool holds_numeric(const Statement& s, const Assignment& assignment) {
    mpq_class l = eval_numeric(s.lhs, assignment);
    mpq_class r = eval_numeric(s.rhs, assignment);
    switch (s.rel) {
    case Rel::Eq:  return l == r;
    case Rel::Geq: return l >= r;
    case Rel::Leq: return l <= r;
    }
    return false;
}

inline void collect_vars(const EntityPtr& e, std::vector<char>& out) {
    if (e->op == Op::Var) {
        for (char c : out) if (c == e->name) return;
        out.push_back(e->name);
        return;
    }
    if (e->left) collect_vars(e->left, out);
    if (e->right) collect_vars(e->right, out);
}

} // namespace ineq
