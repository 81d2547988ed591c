#include "doctest.h"
#include "sigmalib/sigma.hpp"
#include "test_helpers.hpp"

using namespace sigmalib;
using namespace sigmalib::testing;

namespace {
CapConfig caps;

GroupRef s3() { return grp(3, {"(1 2)", "(1 2 3)"}); }
GroupRef s4() { return grp(4, {"(1 2 3 4)", "(1 2)"}); }
GroupRef a4() { return grp(4, {"(1 2 3)", "(1 2)(3 4)"}); }
GroupRef a5() { return grp(5, {"(1 2 3 4 5)", "(3 4 5)"}); }
GroupRef q8() { return grp(8, {"(1 3 2 4)(5 8 6 7)", "(1 5 2 6)(3 7 4 8)"}); }
GroupRef c12() { return grp(12, {"(1 2 3 4 5 6 7 8 9 10 11 12)"}); }
}  // namespace

TEST_CASE("sigma spec parsing") {
  auto s = SigmaPartition::parse("2 3 | 5 | *");
  CHECK(s.blocks().size() == 2);
  CHECK(s.blocks()[0] == std::vector<u64>{2, 3});
  CHECK(s.blocks()[1] == std::vector<u64>{5});
  CHECK(s.rest_written());
  CHECK(s.block_of(7) == BlockId::rest());
  CHECK(s.block_of(3) == BlockId::listed(0));

  auto syl = SigmaPartition::parse("sylow");
  CHECK(syl.is_sylow());
  CHECK(syl.block_of(7) == BlockId::prime(7));

  CHECK_THROWS_AS(SigmaPartition::parse("2 | 2 3 | *"), ParseError);
  CHECK_THROWS_AS(SigmaPartition::parse("2 4 | *"), ParseError);  // 4 not prime
  CHECK_THROWS_AS(SigmaPartition::parse("* | *"), ParseError);
  CHECK_THROWS_AS(SigmaPartition::parse(""), ParseError);

  // round trip through the canonical printer
  for (const char *txt : {"2 3|5|*", "sylow", "7|29|2 3 5|*"}) {
    auto p = SigmaPartition::parse(txt);
    CHECK(SigmaPartition::parse(p.str()).str() == p.str());
  }
}

TEST_CASE("sigma of a number") {
  auto s = SigmaPartition::parse("2 3|5|*");
  CHECK(s.blocks_of_number(60).size() == 2);
  CHECK(s.blocks_of_number(1).empty());
  CHECK(s.is_primary_number(1));
  CHECK(s.is_primary_number(12));   // {2,3}
  CHECK_FALSE(s.is_primary_number(60));
  auto syl = SigmaPartition::sylow();
  CHECK(syl.blocks_of_number(12).size() == 2);
}

TEST_CASE("O_upper") {
  auto syl = SigmaPartition::sylow();
  CHECK(O_upper(s3(), syl, BlockId::prime(3), caps)->order() == 6);
  CHECK(O_upper(s3(), syl, BlockId::prime(2), caps)->order() == 3);
  // G a sigma_i-group iff O_upper trivial
  CHECK(O_upper(c12(), SigmaPartition::parse("2 3|*"), BlockId::listed(0),
                caps)
            ->is_trivial());
  // A5 simple: every O_upper over a block meeting pi(G) is A5 itself
  for (u64 p : {2, 3, 5})
    CHECK(O_upper(a5(), syl, BlockId::prime(p), caps)->order() == 60);
}

TEST_CASE("O_lower") {
  auto syl = SigmaPartition::sylow();
  auto o3 = O_lower(s3(), syl, BlockId::prime(3), caps);
  REQUIRE(o3);
  CHECK((*o3)->order() == 3);
  auto o2 = O_lower(s3(), syl, BlockId::prime(2), caps);
  REQUIRE(o2);
  CHECK((*o2)->is_trivial());
  // G itself a sigma_i-group
  auto all = SigmaPartition::parse("2 3 5|*");
  auto og = O_lower(a5(), all, BlockId::listed(0), caps);
  REQUIRE(og);
  CHECK((*og)->order() == 60);
}

TEST_CASE("residuals") {
  auto syl = SigmaPartition::sylow();
  auto r = residual(s3(), syl, ResidualTag::SigmaNilpotent, caps);
  REQUIRE(r);
  CHECK((*r)->order() == 3);  // nilpotent residual of S3 = A3

  // abelian groups have trivial residual for every tag
  for (auto tag : {ResidualTag::SigmaNilpotent, ResidualTag::SigmaSoluble,
                   ResidualTag::SigmaSupersoluble, ResidualTag::Soluble}) {
    auto rc = residual(c12(), syl, tag, caps);
    REQUIRE(rc);
    CHECK((*rc)->is_trivial());
  }

  // S4: sigma-nilpotent residual A4, sigma-soluble residual 1 (soluble)
  auto r4 = residual(s4(), syl, ResidualTag::SigmaNilpotent, caps);
  REQUIRE(r4);
  CHECK((*r4)->order() == 12);
  auto rs4 = residual(s4(), syl, ResidualTag::SigmaSoluble, caps);
  REQUIRE(rs4);
  CHECK((*rs4)->is_trivial());

  // A5 is sigma-perfect for sylow: the soluble and sigma-soluble residuals
  // are A5 itself.
  auto ra5 = residual(a5(), syl, ResidualTag::SigmaSoluble, caps);
  REQUIRE(ra5);
  CHECK((*ra5)->order() == 60);

  // S4 sigma-supersoluble residual: S4 is supersoluble? No: residual = A4?
  // chief factors of S4 below A4-residual: V4 (order 4, not cyclic), C3.
  // The U-residual is the smallest normal with supersoluble quotient: V4.
  auto ru = residual(s4(), syl, ResidualTag::SigmaSupersoluble, caps);
  REQUIRE(ru);
  CHECK((*ru)->order() == 4);
}

TEST_CASE("residual identity: intersection-of-normals definition") {
  auto syl = SigmaPartition::sylow();
  for (auto g : {s3(), s4(), a4(), q8(), c12(),
                 grp(5, {"(1 2 3 4 5)", "(2 3 5 4)"})}) {
    auto fast = residual(g, syl, ResidualTag::SigmaNilpotent, caps);
    REQUIRE(fast);
    // brute: intersect all normal N with G/N sigma-nilpotent
    auto normals = normal_subgroups(g, caps);
    REQUIRE(normals);
    GroupRef meet = g;
    for (const GroupRef &n : *normals) {
      auto q = quotient(*g, *n, caps.index_cap);
      REQUIRE(q);
      auto qres = residual(q->group, syl, ResidualTag::SigmaNilpotent, caps);
      REQUIRE(qres);
      if ((*qres)->is_trivial()) {
        auto m = intersect_normals(*g, *meet, *n, caps.index_cap);
        REQUIRE(m);
        meet = *m;
      }
    }
    CHECK(equal_groups(**fast, *meet));
  }
}

TEST_CASE("residual idempotence on quotients") {
  auto syl = SigmaPartition::sylow();
  for (auto g : {s3(), s4(), a4()}) {
    for (auto tag : {ResidualTag::SigmaNilpotent, ResidualTag::SigmaSoluble,
                     ResidualTag::SigmaSupersoluble, ResidualTag::Soluble}) {
      auto r = residual(g, syl, tag, caps);
      REQUIRE(r);
      auto q = quotient(*g, **r, caps.index_cap);
      REQUIRE(q);
      auto r2 = residual(q->group, syl, tag, caps);
      REQUIRE(r2);
      CHECK((*r2)->is_trivial());
    }
  }
}

TEST_CASE("radicals") {
  auto syl = SigmaPartition::sylow();
  auto r = radical_subgroup(a5(), syl, RadicalTag::Soluble, caps);
  REQUIRE(r);
  CHECK((*r)->is_trivial());

  auto rs = radical_subgroup(s4(), syl, RadicalTag::Soluble, caps);
  REQUIRE(rs);
  CHECK((*rs)->order() == 24);  // soluble group: radical is G

  // S3 x A5 via orbit decomposition: soluble radical = S3-part
  std::vector<Perm> gens{cyc("(1 2)", 8), cyc("(1 2 3)", 8),
                         cyc("(4 5 6 7 8)", 8), cyc("(6 7 8)", 8)};
  auto g = Group::from_generators(8, gens);
  REQUIRE(g->order() == 360);
  auto rg = radical_subgroup(g, syl, RadicalTag::Soluble, caps);
  REQUIRE(rg);
  CHECK((*rg)->order() == 6);
}

TEST_CASE("hall subgroups") {
  auto whole = SigmaPartition::parse("2 3|*");
  auto h = hall_subgroup(s3(), whole, BlockId::listed(0), caps);
  CHECK(h.verdict.is_yes());
  CHECK(h.subgroup->order() == 6);

  auto split = SigmaPartition::parse("2 3|5|*");
  auto h12 = hall_subgroup(a5(), split, BlockId::listed(0), caps);
  CHECK(h12.verdict.is_yes());
  CHECK(h12.subgroup->order() == 12);

  auto bad = SigmaPartition::parse("3 5|2|*");
  auto h15 = hall_subgroup(a5(), bad, BlockId::listed(0), caps);
  CHECK(h15.verdict.is_no());  // A5 has no subgroup of order 15
}

TEST_CASE("complete hall sets") {
  auto syl = SigmaPartition::sylow();
  auto hs = complete_hall_set(s3(), syl, caps);
  CHECK(hs.verdict.is_yes());
  REQUIRE(hs.set.members.size() == 2);

  auto bad = SigmaPartition::parse("3 5|2|*");
  CHECK(complete_hall_set(a5(), bad, caps).verdict.is_no());

  CHECK(complete_hall_set(Group::trivial(1), syl, caps).verdict.is_yes());
}

TEST_CASE("classification flags") {
  auto syl = SigmaPartition::sylow();
  auto c = classify(s3(), syl, caps);
  CHECK(c.sigma_primary.is_no());
  CHECK(c.sigma_nilpotent.is_no());
  CHECK(c.sigma_soluble.is_yes());
  CHECK(c.sigma_supersoluble.is_yes());  // chief factor below A3: C3
  CHECK(c.sigma_sc.is_yes());
  CHECK(c.sigma_perfect.is_no());
  CHECK(c.sigma_full.is_yes());
  CHECK(c.soluble.is_yes());

  // nilpotent groups are sigma-nilpotent for every sigma
  for (auto g : {q8(), c12()})
    for (auto s : {SigmaPartition::sylow(), SigmaPartition::parse("2|3|*"),
                   SigmaPartition::parse("2 3|*")})
      CHECK(classify(g, s, caps).sigma_nilpotent.is_yes());

  auto ca5 = classify(a5(), syl, caps);
  CHECK(ca5.sigma_perfect.is_yes());
  CHECK(ca5.sigma_soluble.is_no());
  CHECK(ca5.sigma_sc.is_yes());          // single simple chief factor
  CHECK(ca5.sigma_supersoluble.is_no());
  CHECK(ca5.soluble.is_no());

  // A5 is sigma-primary (hence sigma-nilpotent) for sigma = {2 3 5 | *}
  auto all = SigmaPartition::parse("2 3 5|*");
  auto cp = classify(a5(), all, caps);
  CHECK(cp.sigma_primary.is_yes());
  CHECK(cp.sigma_nilpotent.is_yes());
  CHECK(cp.sigma_soluble.is_yes());
  CHECK(cp.sigma_perfect.is_no());  // residual trivial since G is primary
}

TEST_CASE("sigma-subnormal subgroups") {
  auto syl = SigmaPartition::sylow();
  auto g = s3();
  auto ctx = make_sigma_context(g, syl, caps);
  REQUIRE(ctx);
  // S3 with sylow sigma: only 1, A3, S3 are sigma-subnormal
  std::size_t count = 0;
  for (std::size_t i = 0; i < ctx->lat->subs.size(); ++i)
    if (ctx->subnormal[i]) ++count;
  CHECK(count == 3);

  CHECK(is_sigma_subnormal(g, syl, Subgroup(g, grp(3, {"(1 2 3)"})), caps)
            .is_yes());
  CHECK(is_sigma_subnormal(g, syl, Subgroup(g, grp(3, {"(1 2)"})), caps)
            .is_no());

  // sigma-primary group: every subgroup is sigma-subnormal
  auto all = SigmaPartition::parse("2 3 5|*");
  auto ctx5 = make_sigma_context(a5(), all, caps);
  REQUIRE(ctx5);
  for (std::size_t i = 0; i < ctx5->lat->subs.size(); ++i)
    CHECK(ctx5->subnormal[i]);
}

TEST_CASE("sigma-permutability") {
  auto syl = SigmaPartition::sylow();
  auto g = s3();
  CHECK(is_sigma_permutable(g, syl, Subgroup(g, grp(3, {"(1 2)"})), caps)
            .is_no());
  CHECK(is_sigma_permutable(g, syl, Subgroup(g, grp(3, {"(1 2 3)"})), caps)
            .is_yes());  // normal
  CHECK(is_sigma_permutable(g, syl, Subgroup(g, Group::trivial(3)), caps)
            .is_yes());
  CHECK(is_sigma_permutable(g, syl, Subgroup(g, g), caps).is_yes());

  // not sigma-full: nothing is sigma-permutable
  auto bad = SigmaPartition::parse("3 5|2|*");
  auto a = a5();
  CHECK(is_sigma_permutable(a, bad, Subgroup(a, a), caps).is_no());
}

TEST_CASE("R1 and R2 agree") {
  auto syl = SigmaPartition::sylow();
  for (auto g : {s3(), a4(), q8()}) {
    auto lat = all_subgroups(g, caps);
    REQUIRE(lat);
    for (const auto &sub : lat->subs) {
      Subgroup A(g, lat->model->group_from_set(sub.set));
      Verdict r1 = is_sigma_permutable(g, syl, A, caps);
      Verdict r2 = is_sigma_permutable_r2(g, syl, A, caps);
      REQUIRE(r1.decided());
      REQUIRE(r2.decided());
      CHECK(r1.same_state(r2));
    }
  }
}

TEST_CASE("R3 normalizer fast path agrees on sigma-subnormal block groups") {
  auto syl = SigmaPartition::sylow();
  for (auto g : {s4(), a4(), q8()}) {
    auto ctx = make_sigma_context(g, syl, caps);
    REQUIRE(ctx);
    for (std::size_t i = 0; i < ctx->lat->subs.size(); ++i) {
      if (!ctx->subnormal[i]) continue;
      const auto &sub = ctx->lat->subs[i];
      if (sub.order == 1) continue;
      Factorization f = factorize(sub.order);
      if (f.size() != 1) continue;  // p-subgroups only under sylow sigma
      BlockId block = BlockId::prime(f.begin()->first);
      Subgroup A(g, ctx->lat->model->group_from_set(sub.set));
      Verdict r3 = is_sigma_permutable_r3(g, syl, block, A, caps);
      CHECK(r3.same_state(Verdict::of(ctx->permutable[i])));
    }
  }
}

TEST_CASE("Hall intersections with sigma-subnormal subgroups") {
  // For sigma-subnormal A that is not a sigma_i'-group and a Hall
  // sigma_i-subgroup H != 1, A ∩ H is a Hall sigma_i-subgroup of A.
  auto syl = SigmaPartition::sylow();
  for (auto g : {s4(), a4()}) {
    auto ctx = make_sigma_context(g, syl, caps);
    REQUIRE(ctx);
    for (std::size_t bi = 0; bi < ctx->relevant.size(); ++bi) {
      const BlockId &block = ctx->relevant[bi];
      for (std::size_t hid : ctx->hall_ids[bi]) {
        const auto &hall = ctx->lat->subs[hid];
        for (std::size_t i = 0; i < ctx->lat->subs.size(); ++i) {
          if (!ctx->subnormal[i]) continue;
          const auto &sub = ctx->lat->subs[i];
          Factorization f = factorize(sub.order);
          u64 a_part = ctx->sigma.part_of(f, block);
          if (a_part == 1) continue;  // sigma_i'-subgroup
          u64 meet = sub.set.intersect(hall.set).count();
          CHECK(meet == a_part);
        }
      }
    }
  }
}

TEST_CASE("N_sigma_i") {
  auto syl = SigmaPartition::sylow();
  CHECK(satisfies_N_sigma_i(s3(), syl, BlockId::prime(3), caps).is_yes());
  CHECK(satisfies_N_sigma_i(s4(), syl, BlockId::prime(2), caps).is_no());
  // vacuous when all the radicals in quotients vanish
  CHECK(satisfies_N_sigma_i(a5(), syl, BlockId::prime(2), caps).is_yes());
  // abelian shortcut
  CHECK(satisfies_N_sigma_i(c12(), syl, BlockId::prime(2), caps).is_yes());
}

TEST_CASE("Theorem A property: A^G/A_G is sigma-nilpotent for permutable A") {
  auto syl = SigmaPartition::sylow();
  for (auto g : {s3(), s4(), a4(), q8()}) {
    auto ctx = make_sigma_context(g, syl, caps);
    REQUIRE(ctx);
    for (std::size_t i = 0; i < ctx->lat->subs.size(); ++i) {
      if (!ctx->permutable[i]) continue;
      GroupRef A = ctx->lat->model->group_from_set(ctx->lat->subs[i].set);
      GroupRef closure_g = normal_closure(*g, A->generators());
      auto core_g = core(*g, *A, caps.index_cap);
      REQUIRE(core_g);
      auto q = quotient(*closure_g, **core_g, caps.index_cap);
      REQUIRE(q);
      auto qc = classify(q->group, syl, caps);
      CHECK(qc.sigma_nilpotent.is_yes());
    }
  }
}

TEST_CASE("with sylow sigma, supersolubility matches the classical notion") {
  auto syl = SigmaPartition::sylow();
  // S3 and C12 supersoluble; A4 is not (V4 chief factor); S4 is not.
  CHECK(classify(s3(), syl, caps).sigma_supersoluble.is_yes());
  CHECK(classify(c12(), syl, caps).sigma_supersoluble.is_yes());
  CHECK(classify(a4(), syl, caps).sigma_supersoluble.is_no());
  CHECK(classify(s4(), syl, caps).sigma_supersoluble.is_no());
}
