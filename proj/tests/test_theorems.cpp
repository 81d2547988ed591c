#include "doctest.h"
#include "sigmalib/dsl.hpp"
#include "sigmalib/theorems.hpp"
#include "test_helpers.hpp"

using namespace sigmalib;
using namespace sigmalib::testing;

namespace {
CapConfig caps;
SigmaPartition syl() { return SigmaPartition::sylow(); }
GroupRef mk(const char *txt) { return realize_text(txt, caps); }
}  // namespace

TEST_CASE("robinson complex of A5") {
  // A5 is sigma-perfect for the Sylow partition (not for "2 3 5|*", where
  // it is sigma-primary and hence sigma-nilpotent).
  auto a5 = mk("A5");
  auto rr = robinson_complex(a5, syl(), a5, caps);
  CHECK(rr.report.overall.is_yes());
  REQUIRE(rr.complex);
  CHECK(rr.complex->Z->is_trivial());
  CHECK(rr.complex->components.size() == 1);
  CHECK(rr.complex->components[0]->order() == 60);

  // For the one-block partition A5 fails condition (i).
  auto sigma = SigmaPartition::parse("2 3 5|*");
  CHECK(robinson_complex(a5, sigma, a5, caps).report.items[0].verdict.is_no());
}

TEST_CASE("robinson complex rejects abelian D") {
  auto g = mk("S3");
  auto a3 = mk("perm[3; (1 2 3)]");
  auto rr = robinson_complex(g, syl(), a3, caps);
  CHECK(rr.report.overall.is_no());
  // condition (ii) fails: no nonabelian simple factors over the center
  CHECK(rr.report.items[1].verdict.is_no());
}

TEST_CASE("robinson complex of SL(2,7) x A7") {
  auto g = mk("preset:ex18_core");
  auto sigma = SigmaPartition::parse("2 3 5|7 43|*");
  auto rr = robinson_complex(g, sigma, g, caps);
  CHECK(rr.report.overall.is_yes());
  REQUIRE(rr.complex);
  CHECK(rr.complex->Z->order() == 2);  // Z(SL(2,7))
  REQUIRE(rr.complex->components.size() == 2);
  std::multiset<u64> orders{rr.complex->components[0]->order(),
                            rr.complex->components[1]->order()};
  // SL(2,7) and A7 * Z(SL(2,7))
  CHECK(orders == std::multiset<u64>{336, 5040});
}

TEST_CASE("theorem B on S3") {
  auto rep = theorem_B_check(mk("S3"), syl(), caps);
  CHECK(rep.overall.is_yes());
  CHECK(is_PsigmaT_brute(mk("S3"), syl(), caps).is_yes());
}

TEST_CASE("theorem B equals the oracle on dicyclic and friends") {
  for (const char *txt : {"C3 : C4 @ 2", "S3", "C12", "D4", "D5", "Q8",
                          "C7 : C3 @ 2", "C5 : C4 @ 2", "C5 : C4 @ 3"}) {
    auto g = mk(txt);
    auto rep = theorem_B_check(g, syl(), caps);
    auto oracle = is_PsigmaT_brute(g, syl(), caps);
    REQUIRE(oracle.decided());
    REQUIRE_MESSAGE(rep.overall.decided(), txt);
    CHECK_MESSAGE(rep.overall.same_state(oracle), txt, ": theorem B ",
                  rep.overall.str(), " vs oracle ", oracle.str());
  }
}

TEST_CASE("sigma-nilpotent groups satisfy theorem B trivially") {
  auto rep = theorem_B_check(mk("C12 x C2"), syl(), caps);
  CHECK(rep.overall.is_yes());
}

TEST_CASE("PST oracles on classical groups") {
  CHECK(is_PsigmaT_brute(mk("Q8"), syl(), caps).is_yes());
  CHECK(is_PsigmaT_brute(mk("S3"), syl(), caps).is_yes());
  CHECK(is_PsigmaT_brute(mk("S4"), syl(), caps).is_no());
  CHECK(is_PsigmaT_transitive(mk("Q8"), syl(), caps).is_yes());
  CHECK(is_PsigmaT_transitive(mk("S4"), syl(), caps).is_no());
  CHECK(is_PsigmaT_brute(mk("C1"), syl(), caps).is_yes());
}

TEST_CASE("oracle equivalence across a small sweep") {
  std::vector<SigmaPartition> sigmas{syl(), SigmaPartition::parse("2 3|*"),
                                     SigmaPartition::parse("2|3 5|*")};
  for (const char *txt :
       {"C1", "C6", "S3", "S4", "A4", "A5", "Q8", "D4", "D6", "C12",
        "C3 : C4 @ 2", "C7 : C3 @ 2", "S3 x C5", "SL(2,3)"}) {
    auto g = mk(txt);
    for (const auto &sigma : sigmas) {
      Verdict brute = is_PsigmaT_brute(g, sigma, caps);
      Verdict trans = is_PsigmaT_transitive(g, sigma, caps);
      REQUIRE(brute.decided());
      REQUIRE(trans.decided());
      CHECK_MESSAGE(brute.same_state(trans), txt, " sigma=", sigma.str(),
                    " brute=", brute.str(), " transitive=", trans.str());
    }
  }
}

TEST_CASE("theorem C on A5 with the one-block partition") {
  auto sigma = SigmaPartition::parse("2 3 5|*");
  auto rep = theorem_C_check(mk("A5"), sigma, caps);
  CHECK(rep.items.front().verdict.is_yes());  // hypothesis holds
  CHECK(rep.overall.is_yes());
  CHECK(is_PsigmaT_brute(mk("A5"), sigma, caps).is_yes());
}

TEST_CASE("theorem C on S4 is No, matching the oracle") {
  auto rep = theorem_C_check(mk("S4"), syl(), caps);
  CHECK(rep.items.front().verdict.is_yes());  // Sylows are PST-groups
  CHECK(rep.overall.is_no());
  CHECK(is_PsigmaT_brute(mk("S4"), syl(), caps).is_no());
}

TEST_CASE("theorem C equals the oracle when the hypothesis holds") {
  std::vector<SigmaPartition> sigmas{syl(), SigmaPartition::parse("2 3|*")};
  for (const char *txt : {"S3", "S4", "A4", "A5", "Q8", "D4", "C12",
                          "C3 : C4 @ 2", "SL(2,3)", "S3 x C5"}) {
    auto g = mk(txt);
    for (const auto &sigma : sigmas) {
      auto rep = theorem_C_check(g, sigma, caps);
      if (!rep.items.front().verdict.is_yes()) continue;
      auto oracle = is_PsigmaT_brute(g, sigma, caps);
      REQUIRE(oracle.decided());
      REQUIRE_MESSAGE(rep.overall.decided(), txt, " ", sigma.str());
      CHECK_MESSAGE(rep.overall.same_state(oracle), txt, " sigma=",
                    sigma.str(), " C=", rep.overall.str(), " oracle=",
                    oracle.str());
    }
  }
}

TEST_CASE("theorem D equals the direct sigma-SC test") {
  std::vector<SigmaPartition> sigmas{syl(), SigmaPartition::parse("2 3|*"),
                                     SigmaPartition::parse("2|3 5|*")};
  for (const char *txt : {"C1", "S3", "S4", "A4", "A5", "Q8", "C12",
                          "C3 : C4 @ 2", "SL(2,3)", "S3 x C5", "A5 x C2"}) {
    auto g = mk(txt);
    for (const auto &sigma : sigmas) {
      auto rep = theorem_D_check(g, sigma, caps);
      auto cls = classify(g, sigma, caps);
      REQUIRE(cls.sigma_sc.decided());
      REQUIRE_MESSAGE(rep.overall.decided(), txt, " ", sigma.str());
      CHECK_MESSAGE(rep.overall.same_state(cls.sigma_sc), txt, " sigma=",
                    sigma.str(), " D=", rep.overall.str(), " sc=",
                    cls.sigma_sc.str());
    }
  }
}

TEST_CASE("corollary regressions with the Sylow partition") {
  // Robinson's PST characterization (theorem C at sigma^0) and the SC-group
  // characterization (theorem D at sigma^0) on a catalog sample.
  for (const char *txt : {"S3", "S4", "A4", "A5", "Q8", "D6", "C3 : C4 @ 2",
                          "SL(2,3)", "A5 x C2"}) {
    auto g = mk(txt);
    auto repC = theorem_C_check(g, syl(), caps);
    if (repC.items.front().verdict.is_yes()) {
      auto oracle = is_PsigmaT_brute(g, syl(), caps);
      CHECK_MESSAGE(repC.overall.same_state(oracle), txt);
    }
    auto repD = theorem_D_check(g, syl(), caps);
    auto sc = classify(g, syl(), caps).sigma_sc;
    CHECK_MESSAGE(repD.overall.same_state(sc), txt);
  }
}

TEST_CASE("proposition: PsigmaT groups with PST Hall members are sigma-SC") {
  std::vector<SigmaPartition> sigmas{syl(), SigmaPartition::parse("2 3|*"),
                                     SigmaPartition::parse("2 3 5|*")};
  for (const char *txt : {"S3", "S4", "A4", "A5", "Q8", "C12", "SL(2,3)",
                          "S3 x C5", "A5 x C2"}) {
    auto g = mk(txt);
    for (const auto &sigma : sigmas) {
      auto pst = is_PsigmaT_brute(g, sigma, caps);
      if (!pst.is_yes()) continue;
      auto rep = theorem_C_check(g, sigma, caps);
      if (!rep.items.front().verdict.is_yes()) continue;
      CHECK_MESSAGE(classify(g, sigma, caps).sigma_sc.is_yes(), txt, " ",
                    sigma.str());
    }
  }
}

TEST_CASE("proposition: heredity spot checks") {
  // sigma-supersoluble groups have sigma-supersoluble subgroups; sigma-SC
  // groups have sigma-SC quotients and normal subgroups.
  auto sigma = syl();
  auto g = mk("S3 x C5");  // supersoluble
  REQUIRE(classify(g, sigma, caps).sigma_supersoluble.is_yes());
  auto lat = all_subgroups(g, caps);
  REQUIRE(lat);
  for (const auto &sub : lat->subs) {
    GroupRef h = lat->model->group_from_set(sub.set);
    CHECK(classify(h, sigma, caps).sigma_supersoluble.is_yes());
  }

  auto a5c2 = mk("A5 x C2");  // SC-group for sylow sigma
  REQUIRE(classify(a5c2, sigma, caps).sigma_sc.is_yes());
  auto normals = normal_subgroups(a5c2, caps);
  REQUIRE(normals);
  for (const GroupRef &n : *normals) {
    CHECK(classify(n, sigma, caps).sigma_sc.is_yes());
    auto q = quotient(*a5c2, *n, caps.index_cap);
    REQUIRE(q);
    CHECK(classify(q->group, sigma, caps).sigma_sc.is_yes());
  }
}

TEST_CASE("cross validation has no disagreements on a sample") {
  std::vector<SigmaPartition> sigmas{syl(), SigmaPartition::parse("2 3|*"),
                                     SigmaPartition::parse("2|3 5|*")};
  for (const char *txt : {"C1", "S3", "S4", "A5", "Q8", "C3 : C4 @ 2",
                          "SL(2,3)", "S3 x C5"}) {
    auto g = mk(txt);
    for (const auto &sigma : sigmas) {
      auto rep = cross_validate(g, sigma, caps);
      CHECK_MESSAGE(rep.consistent, txt, " sigma=", sigma.str(),
                    rep.disagreements.empty() ? ""
                                              : rep.disagreements.front());
    }
  }
}

TEST_CASE("non-sigma-full groups: both oracles say No") {
  auto sigma = SigmaPartition::parse("3 5|2|*");
  auto a5 = mk("A5");
  CHECK(is_PsigmaT_brute(a5, sigma, caps).is_no());
  CHECK(is_PsigmaT_transitive(a5, sigma, caps).is_no());
}
