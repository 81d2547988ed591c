#include "doctest.h"
#include "sigmalib/perm.hpp"
#include "test_helpers.hpp"

using namespace sigmalib;
using sigmalib::testing::cyc;

TEST_CASE("cycle parsing basics") {
  CHECK(cyc("(1 2 3)", 3).images() == std::vector<Point>{1, 2, 0});
  CHECK(cyc("()", 4) == Perm::identity(4));
  CHECK(cyc("(1 2)(3 4)", 4).images() == std::vector<Point>{1, 0, 3, 2});
  CHECK(cyc(" ( 1 2 ) ( 3 4 ) ", 4).images() == std::vector<Point>{1, 0, 3, 2});
}

TEST_CASE("cycle parsing errors") {
  CHECK_THROWS_AS(cyc("(1 2)(2 3)", 4), ParseError);   // repeated point
  CHECK_THROWS_AS(cyc("(1 5)", 4), ParseError);        // out of range
  CHECK_THROWS_AS(cyc("(1 2", 4), ParseError);         // unclosed
  CHECK_THROWS_AS(cyc("1 2)", 4), ParseError);         // missing open
  CHECK_THROWS_AS(cyc("", 3), ParseError);
  CHECK_THROWS_AS(cyc("(0 1)", 4), ParseError);        // 1-based points
}

TEST_CASE("compose and inverse") {
  Perm a = cyc("(1 2 3)", 5);
  Perm b = cyc("(3 4 5)", 5);
  // right action: apply a first
  CHECK(compose(a, b)[0] == 1);
  CHECK(compose(a, b)[1] == 3);
  CHECK(compose(a, a.inverse()) == Perm::identity(5));
  CHECK(compose(a.inverse(), a) == Perm::identity(5));
}

TEST_CASE("print round trip") {
  for (const char *text : {"(1 2 3)", "(1 2)(3 4)", "()", "(1 4)(2 5 3)"}) {
    Perm p = cyc(text, 6);
    CHECK(cyc(perm_to_cycles(p), 6) == p);
  }
}

TEST_CASE("inverse text composes to identity") {
  // compose(parse(inverse-text), parse(text)) = identity
  Perm p = cyc("(1 5 2)(3 6)", 6);
  Perm q = cyc(perm_to_cycles(p.inverse()), 6);
  CHECK(compose(q, p) == Perm::identity(6));
}

TEST_CASE("conjugation convention a^x = x^-1 a x") {
  Perm a = cyc("(1 2)", 4);
  Perm x = cyc("(1 3)", 4);
  CHECK(conjugate(a, x) == cyc("(2 3)", 4));
  CHECK(conjugate(a, x) == compose(compose(x.inverse(), a), x));
}

TEST_CASE("order and powers") {
  Perm p = cyc("(1 2 3)(4 5)", 5);
  CHECK(p.order() == 6);
  CHECK(perm_power(p, 6) == Perm::identity(5));
  CHECK(perm_power(p, 2) == cyc("(1 3 2)", 5));
  CHECK(perm_power(p, 3) == cyc("(4 5)", 5));
}
