#include <catch2/catch_amalgamated.hpp>

#include "ineq/expr.hpp"
#include "ineq/rng.hpp"

using namespace ineq;

namespace {

// Independent random term builder, constants included.
EntityPtr random_term(Rng& rng, int max_depth) {
    if (max_depth == 0 || rng.index(4) == 0) {
        if (rng.coin()) return var(static_cast<char>('a' + rng.index(5)));
        return constant(static_cast<int>(rng.index(2)));
    }
    switch (rng.index(5)) {
    case 0: return add(random_term(rng, max_depth - 1), random_term(rng, max_depth - 1));
    case 1: return mul(random_term(rng, max_depth - 1), random_term(rng, max_depth - 1));
    case 2: return neg(random_term(rng, max_depth - 1));
    case 3: return inv(random_term(rng, max_depth - 1));
    default: return sqr(random_term(rng, max_depth - 1));
    }
}

int count_operators(const EntityPtr& e) {
    if (!e->left) return 0;
    int n = 1 + count_operators(e->left);
    if (e->right) n += count_operators(e->right);
    return n;
}

} // namespace

TEST_CASE("canonical printing") {
    CHECK(print(add(var('a'), zero())) == "(a+0)");
    CHECK(print(sqr(mul(mul(var('a'), var('c')), var('b')))) == "(((a*c)*b)^2)");
    Statement s{Rel::Geq, add(var('a'), add(var('b'), var('c'))), var('c')};
    CHECK(print(s) == "(a+(b+c))>=c");
    CHECK(print(neg(var('a'))) == "(-a)");
    CHECK(print(inv(var('b'))) == "(1/b)");
}

TEST_CASE("parsing") {
    EntityPtr e = parse_entity("(a+(b+c))");
    REQUIRE(e->op == Op::Add);
    CHECK(e->left->name == 'a');
    CHECK(e->right->op == Op::Add);

    Statement s = parse_statement("(a+0)=a");
    CHECK(s.rel == Rel::Eq);
    CHECK(s.lhs->op == Op::Add);
    CHECK(is_const(s.lhs->right, 0));
    CHECK(s.rhs->name == 'a');

    CHECK(parse_statement("a>=b").rel == Rel::Geq);
    CHECK(parse_statement("a<=b").rel == Rel::Leq);
    CHECK(equal(parse_entity(" ( a + ( b * c ) ) "), parse_entity("(a+(b*c))")));
    // (1/x) vs (1*x) disambiguation
    CHECK(parse_entity("(1/a)")->op == Op::Inv);
    CHECK(parse_entity("(1*a)")->op == Op::Mul);
    CHECK(parse_entity("(1+a)")->op == Op::Add);
}

TEST_CASE("parse errors carry offsets") {
    CHECK_THROWS_AS(parse_entity("(a+"), ParseError);
    CHECK_THROWS_AS(parse_entity("(a+b"), ParseError);
    CHECK_THROWS_AS(parse_entity("a+b"), ParseError); // trailing input
    CHECK_THROWS_AS(parse_entity("2"), ParseError);
    CHECK_THROWS_AS(parse_statement("a"), ParseError);
    try {
        parse_entity("(a%b)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
        CHECK(!e.expected.empty());
    }
}

TEST_CASE("parse-print round trip on 1e5 random entities") {
    Rng rng(20240817);
    for (int i = 0; i < 100000; ++i) {
        EntityPtr e = random_term(rng, 4); // depth 4 reaches degree well past 8
        EntityPtr back = parse_entity(print(e));
        REQUIRE(equal(e, back));
    }
}

TEST_CASE("degree equals operator count") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        EntityPtr e = random_term(rng, 4);
        CHECK(degree(e) == count_operators(e));
    }
    CHECK(degree(var('a')) == 0);
    CHECK(degree(add(var('a'), var('b'))) == 1);
    CHECK(degree(sqr(mul(var('a'), var('b')))) == 2);
}

TEST_CASE("node enumeration") {
    Statement s = parse_statement("(a+b)=c");
    auto nodes = enumerate_nodes(s);
    REQUIRE(nodes.size() == 4);
    CHECK(print(nodes[0].entity) == "(a+b)");
    CHECK(nodes[0].side == Side::Lhs);
    CHECK(nodes[0].path.empty());
    CHECK(print(nodes[1].entity) == "a");
    CHECK(print(nodes[2].entity) == "b");
    CHECK(print(nodes[3].entity) == "c");
    CHECK(nodes[3].side == Side::Rhs);

    CHECK(enumerate_nodes(parse_statement("a=a")).size() == 2);

    // pre-order: parent first, lhs side fully before rhs
    Statement t = parse_statement("((a+b)*c)=((-d)+e)");
    auto tn = enumerate_nodes(t);
    std::vector<std::string> got;
    for (auto& n : tn) got.push_back(print(n.entity));
    std::vector<std::string> want = {"((a+b)*c)", "(a+b)", "a", "b", "c", "((-d)+e)", "(-d)", "d", "e"};
    CHECK(got == want);
}

TEST_CASE("resolve and replace") {
    Statement s = parse_statement("((p+q)+l)=(p+(q+l))");
    std::vector<std::uint8_t> path{0};
    EntityPtr at = resolve_in(s.lhs, path);
    REQUIRE(at);
    CHECK(print(at) == "(p+q)");

    EntityPtr new_lhs = replace_in(s.lhs, path, parse_entity("(q+p)"));
    Statement s2{s.rel, new_lhs, s.rhs};
    CHECK(print(s2) == "((q+p)+l)=(p+(q+l))");
    // locality: rhs shared untouched
    CHECK(s2.rhs.get() == s.rhs.get());
    CHECK(s2.lhs->right.get() == s.lhs->right.get());

    CHECK(print(resolve_in(parse_entity("a"), std::vector<std::uint8_t>{})) == "a");
    CHECK(resolve_in(s.lhs, std::vector<std::uint8_t>{0, 0, 0}) == nullptr);
    CHECK(resolve_in(s.lhs, std::vector<std::uint8_t>{2}) == nullptr);

    // replace then resolve returns the inserted entity
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        EntityPtr e = random_term(rng, 3);
        auto nodes = enumerate_nodes(Statement{Rel::Eq, e, e});
        auto& n = nodes[rng.index(nodes.size())];
        EntityPtr ins = random_term(rng, 2);
        EntityPtr root = replace_in(n.side == Side::Lhs ? e : e, n.path, ins);
        REQUIRE(root);
        CHECK(equal(resolve_in(root, n.path), ins));
    }
}

TEST_CASE("numeric evaluation") {
    Assignment asg{{'a', mpq_class(3)}};
    CHECK(eval_numeric(parse_entity("(a+0)"), asg) == 3);

    Assignment abc{{'a', mpq_class(1)}, {'b', mpq_class(2)}, {'c', mpq_class(3)}};
    CHECK(eval_numeric(parse_entity("(((a*c)*b)^2)"), abc) == 36);
    CHECK(eval_numeric(parse_entity("(-a)"), abc) == -1);
    CHECK(eval_numeric(parse_entity("(1/b)"), abc) == mpq_class(1, 2));

    Assignment z{{'a', mpq_class(0)}};
    CHECK_THROWS_AS(eval_numeric(parse_entity("(1/a)"), z), DivisionByZero);
    CHECK_THROWS_AS(eval_numeric(parse_entity("x"), z), UnassignedVariable);

    CHECK(holds_numeric(parse_statement("(a+b)>=b"), abc));
    CHECK_FALSE(holds_numeric(parse_statement("a=b"), abc));
    CHECK(holds_numeric(parse_statement("a<=b"), abc));
}
