#include "doctest.h"
#include "sigmalib/dsl.hpp"
#include "sigmalib/group_ops.hpp"
#include "test_helpers.hpp"

using namespace sigmalib;
using namespace sigmalib::testing;

namespace {
CapConfig caps;
}

TEST_CASE("parsing and validation") {
  auto e = parse_group_expr("C29 : C7 @ 16");
  CHECK(e->kind == GroupExpr::Kind::Semidirect);
  CHECK(e->n == 29);
  CHECK(e->m == 7);
  CHECK(e->k == 16);
  // the action x -> 16x really has order 7 mod 29
  CHECK(multiplicative_order(16, 29) == 7);

  auto big = parse_group_expr("SL(2,7) x A7 x A5 x (C43 : C7 @ 4)");
  CHECK(big->kind == GroupExpr::Kind::Direct);
  CHECK(multiplicative_order(4, 43) == 7);

  CHECK_THROWS_AS(parse_group_expr("C4 : C2 @ 2"), ParseError);
  CHECK_THROWS_AS(parse_group_expr("C5 : C3 @ 2"), ParseError);  // 2^3=8≠1(5)
  CHECK_THROWS_AS(parse_group_expr("D2"), ParseError);
  CHECK_THROWS_AS(parse_group_expr("SL(2,4)"), ParseError);
  CHECK_THROWS_AS(parse_group_expr("C3 C4"), ParseError);  // trailing input
  CHECK_THROWS_AS(parse_group_expr(""), ParseError);

  auto p = parse_group_expr("perm[4; (1 2), (3 4)]");
  CHECK(p->kind == GroupExpr::Kind::ExplicitPerms);
  CHECK(p->degree == 4);
  CHECK(p->cycles.size() == 2);
}

TEST_CASE("print round trip") {
  for (const char *txt :
       {"C12", "D5", "S4", "A5", "Q8", "SL(2,3)", "(C29 : C7 @ 16)",
        "A5 x (C29 : C7 @ 16)", "C2 x C2 x C2", "preset:ex15iii",
        "perm[4; (1 2), (3 4)]"}) {
    auto e = parse_group_expr(txt);
    std::string printed = print_group_expr(*e);
    CHECK(print_group_expr(*parse_group_expr(printed)) == printed);
  }
}

TEST_CASE("realize basic groups") {
  CHECK(realize_text("C12", caps)->order() == 12);
  CHECK(realize_text("C1", caps)->order() == 1);
  CHECK(realize_text("D4", caps)->order() == 8);
  CHECK(realize_text("S4", caps)->order() == 24);
  CHECK(realize_text("S5", caps)->order() == 120);
  CHECK(realize_text("A4", caps)->order() == 12);
  CHECK(realize_text("A5", caps)->order() == 60);
  CHECK(realize_text("A6", caps)->order() == 360);
  CHECK(realize_text("A7", caps)->order() == 2520);
  CHECK(realize_text("Q8", caps)->order() == 8);
  CHECK(realize_text("perm[3; (1 2), (1 2 3)]", caps)->order() == 6);
}

TEST_CASE("realize SL(2,q)") {
  auto sl23 = realize_text("SL(2,3)", caps);
  CHECK(sl23->degree() == 8);
  CHECK(sl23->order() == 24);
  CHECK(sl23->order() == brute_order(*sl23));

  CHECK(realize_text("SL(2,2)", caps)->order() == 6);
  CHECK(realize_text("SL(2,5)", caps)->order() == 120);
  auto sl27 = realize_text("SL(2,7)", caps);
  CHECK(sl27->degree() == 48);
  CHECK(sl27->order() == 336);
  CHECK(is_perfect(*sl27));
}

TEST_CASE("realize semidirect products") {
  auto b = realize_text("C29 : C7 @ 16", caps);
  CHECK(b->degree() == 36);
  CHECK(b->order() == 203);
  CHECK_FALSE(b->is_abelian());

  // k = 1 gives the direct product
  auto ab = realize_text("C3 : C5 @ 1", caps);
  CHECK(ab->order() == 15);
  CHECK(ab->is_abelian());

  auto s3 = realize_text("C3 : C2 @ 2", caps);
  CHECK(s3->order() == 6);
  CHECK_FALSE(s3->is_abelian());
  CHECK(s3->order() == brute_order(*s3));

  auto c7c3 = realize_text("C7 : C3 @ 2", caps);
  CHECK(c7c3->order() == 21);
  CHECK_FALSE(c7c3->is_abelian());
}

TEST_CASE("realize direct products with flattened metadata") {
  auto g = realize_text("A5 x (C29 : C7 @ 16)", caps);
  CHECK(g->order() == 12180);
  CHECK(g->degree() == 41);
  REQUIRE(g->meta());
  CHECK(g->meta()->kind == Meta::Kind::Direct);
  CHECK(g->meta()->factors.size() == 2);

  auto h = realize_text("C2 x C3 x C5", caps);
  CHECK(h->order() == 30);
  REQUIRE(h->meta());
  CHECK(h->meta()->factors.size() == 3);

  // arithmetic orders match the constructed chains
  for (const char *txt : {"C6 x S3", "D5 x C2", "Q8 x C3", "S4 x C2"}) {
    auto e = realize_text(txt, caps);
    u64 expected = 1;
    for (const auto &f : e->meta()->factors)
      expected *= f.group->order();
    CHECK(e->order() == expected);
  }
}

TEST_CASE("presets") {
  CHECK(realize(*preset("ex13_sl23"), caps)->order() == 24);
  CHECK(realize(*preset("ex13_c7c3"), caps)->order() == 21);
  CHECK(realize(*preset("ex15iii"), caps)->order() == 12180);
  auto core = realize(*preset("ex18_core"), caps);
  CHECK(core->order() == 846720);  // 336 * 2520
  CHECK_THROWS_AS(preset("nope"), ParseError);

  auto big = realize(*preset("ex15iv"), caps);
  CHECK(big->order() == 15291763200ull);  // 336 * 2520 * 60 * 301
  CHECK(big->degree() == 110);
}

TEST_CASE("degree overflow guard") {
  CapConfig small = caps;
  small.max_degree = 100;
  CHECK_THROWS_AS(realize_text("C200", small), OverflowError);
  CHECK(realize_text("C100", small)->order() == 100);
}

TEST_CASE("catalog generation") {
  auto tiny = generate_catalog(1, caps);
  REQUIRE(tiny.size() == 1);
  CHECK(tiny[0].group->order() == 1);

  auto cat = generate_catalog(24, caps);
  // sanity: orders bounded, signatures deduplicated, deterministic order
  std::size_t nonabelian6 = 0;
  for (const auto &e : cat) {
    CHECK(e.group->order() <= 24);
    if (e.group->order() == 6 && !e.group->is_abelian()) ++nonabelian6;
  }
  CHECK(nonabelian6 == 1);  // S3 = D3 = C3:C2 deduplicated
  // all five groups of order 8 are reachable: C8, C4xC2, C2^3, D4, Q8
  std::size_t order8 = 0;
  for (const auto &e : cat)
    if (e.group->order() == 8) ++order8;
  CHECK(order8 == 5);
  // catalog contains SL(2,3) (order 24, nonabelian, one element of order 2)
  bool has_sl23 = false;
  for (const auto &e : cat)
    if (e.group->order() == 24 && e.text == "SL(2,3)") has_sl23 = true;
  CHECK(has_sl23);

  // deterministic: regenerating gives the same texts
  auto cat2 = generate_catalog(24, caps);
  REQUIRE(cat.size() == cat2.size());
  for (std::size_t i = 0; i < cat.size(); ++i)
    CHECK(cat[i].text == cat2[i].text);
}

TEST_CASE("catalog at 60 contains A5") {
  auto cat = generate_catalog(60, caps);
  bool has_a5 = false;
  for (const auto &e : cat)
    if (e.group->order() == 60 && !e.group->is_abelian() &&
        soluble_residual(*e.group)->order() == 60)
      has_a5 = true;
  CHECK(has_a5);
}
