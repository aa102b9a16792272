#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "weldinv/algebra.hpp"

using namespace weldinv;

TEST_CASE("cyclic and symmetric groups") {
    GroupPtr z6 = make_cyclic_group(6);
    CHECK(z6->order() == 6);
    CHECK(z6->is_abelian());
    CHECK(z6->mul(2, 5) == 1);
    CHECK(z6->inv(2) == 4);
    CHECK(z6->check_axioms().empty());
    CHECK(z6->conjugacy_classes().size() == 6);

    GroupPtr s3 = make_symmetric_group(3);
    CHECK(s3->order() == 6);
    CHECK_FALSE(s3->is_abelian());
    CHECK(s3->check_axioms().empty());
    // identity, transpositions, 3-cycles
    auto classes = s3->conjugacy_classes();
    REQUIRE(classes.size() == 3);
    int total = 0;
    for (auto [rep, size] : classes) {
        CHECK(s3->class_of()[rep] >= 0);
        total += size;
    }
    CHECK(total == 6);

    GroupPtr s4 = make_symmetric_group(4);
    CHECK(s4->order() == 24);
    CHECK(s4->conjugacy_classes().size() == 5);
}

TEST_CASE("general linear groups") {
    GroupPtr g22 = make_gl_group(2, 2);
    CHECK(g22->order() == 6);
    CHECK(g22->check_axioms().empty());
    GroupPtr g23 = make_gl_group(2, 3);
    CHECK(g23->order() == 48);
    GroupPtr g25 = make_gl_group(2, 5);
    CHECK(g25->order() == 480);
    // composite modulus: units of M_1(Z_4) are {1,3}
    GroupPtr g14 = make_gl_group(1, 4);
    CHECK(g14->order() == 2);
    CHECK_THROWS_AS(make_gl_group(3, 5, 1000), std::exception);
}

TEST_CASE("crossed module builders") {
    CrossedModule a3 = make_sign_module(3);
    CHECK(a3.group().order() == 2);
    CHECK(a3.coeffs().m == 3);
    CHECK(a3.coeffs().k == 1);
    CHECK(a3.coeffs().size() == 3);
    CHECK(a3.check_axioms().empty());
    // non-identity element negates
    long in = 2, out = 0;
    a3.act(1 - a3.group().identity(), &in, &out);
    CHECK(out == 1);

    CrossedModule g23 = make_gl_module(2, 3);
    CHECK(g23.group().order() == 48);
    CHECK(g23.coeffs().m == 3);
    CHECK(g23.coeffs().k == 2);
    CHECK(g23.check_axioms().empty());

    CrossedModule triv = make_trivial_E(make_symmetric_group(3));
    CHECK(triv.coeffs().trivial());
    CHECK(triv.check_axioms().empty());
}

TEST_CASE("group table parser") {
    // Z3 with labels
    std::string text =
        "# additive group of order 3\n"
        "group 3\n"
        "mul 0 1 2\n"
        "mul 1 2 0\n"
        "mul 2 0 1\n"
        "label 0 zero\n";
    GroupPtr g = parse_group_table(text);
    CHECK(g->order() == 3);
    CHECK(g->identity() == 0);
    CHECK(g->mul(1, 2) == 0);
    CHECK(g->label(0) == "zero");
    CHECK(g->check_axioms().empty());

    CHECK_THROWS_AS(parse_group_table("group 2\nmul 0 1\n"), std::exception);
    CHECK_THROWS_AS(parse_group_table("mul 0\n"), std::exception);
}

TEST_CASE("crossed module table parser") {
    // sign action of Z2 on Z5
    std::string text =
        "group 2\n"
        "mul 0 1\n"
        "mul 1 0\n"
        "abelian 5 1\n"
        "action 0 1\n"
        "action 1 4\n";
    CrossedModule cm = parse_crossed_module_table(text);
    CHECK(cm.group().order() == 2);
    CHECK(cm.coeffs().m == 5);
    CHECK(cm.check_axioms().empty());
    long in = 3, out = 0;
    cm.act(1, &in, &out);
    CHECK(out == 2);
}

TEST_CASE("crossed module spec strings") {
    CHECK(parse_cm_spec("sign(7)").coeffs().m == 7);
    CHECK(parse_cm_spec("gl(2,2)").group().order() == 6);
    CHECK_THROWS_AS(parse_cm_spec("sign7"), std::invalid_argument);
    CHECK_THROWS_AS(parse_cm_spec("frob(3)"), std::invalid_argument);
}

TEST_CASE("smith normal form") {
    IntMatrix a(2, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = 4;
    a.at(1, 0) = 6;
    a.at(1, 1) = 8;
    SnfResult s = smith_normal_form(a);
    REQUIRE(s.diagonal.size() == 2);
    CHECK(s.diagonal[0] == 2);
    CHECK(s.diagonal[1] == 4);
    // U*A*V reproduces the diagonal
    IntMatrix uav = s.u.mul(a).mul(s.v);
    CHECK(uav.at(0, 0) == 2);
    CHECK(uav.at(0, 1) == 0);
    CHECK(uav.at(1, 0) == 0);
    CHECK(uav.at(1, 1) == 4);
}

TEST_CASE("solution counting mod m") {
    // x + y = 0 mod 3: one free choice
    IntMatrix a(1, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    CHECK(count_solutions_mod(a, {}, 3, 2) == 3);
    // 2x = 0 mod 4: x in {0, 2}
    IntMatrix b(1, 1);
    b.at(0, 0) = 2;
    CHECK(count_solutions_mod(b, {}, 4, 1) == 2);
    // 2x = 1 mod 4: none
    CHECK(count_solutions_mod(b, {mpz_class(1)}, 4, 1) == 0);
    // 2x = 2 mod 4: x in {1, 3}
    CHECK(count_solutions_mod(b, {mpz_class(2)}, 4, 1) == 2);
    // unconstrained extra variables multiply by m
    CHECK(count_solutions_mod(b, {}, 4, 3) == 32);
}
