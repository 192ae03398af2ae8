#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsec/enumerate.hpp"
#include "gsec/intrinsic.hpp"

using namespace gsec;

namespace {

const char* kMixedProgram = "(\\x:Bool@L. x)@L ((\\x:Bool@?. x)@L false@H)";

GradualType gty(const SecurityLattice& lat, const std::string& src) {
  return resolve_gradual_type(lat, *parse_type(src), {}).value();
}

CheckResult<GradualType> gcheck(const SecurityLattice& lat, const std::string& src) {
  return typecheck_gradual(lat, {}, *parse(src));
}

}  // namespace

TEST_CASE("the mixed-channel program typechecks at Bool@L") {
  auto lat = SecurityLattice::two_point();
  CheckResult<GradualType> r = gcheck(*lat, kMixedProgram);
  REQUIRE(r.ok());
  CHECK(r.value() == gty(*lat, "Bool@L"));
}

TEST_CASE("the direct private-to-public application is rejected") {
  auto lat = SecurityLattice::two_point();
  CheckResult<GradualType> r = gcheck(*lat, "(\\x:Bool@L. x)@L false@H");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().rule == "app");
}

TEST_CASE("gradual rules accept unknown-label flows") {
  auto lat = SecurityLattice::two_point();
  CHECK(gcheck(*lat, "true@? && false@H").value() == gty(*lat, "Bool@H"));
  CHECK(gcheck(*lat, "true@? && false@L").value() == gty(*lat, "Bool@?"));
  CHECK(gcheck(*lat, "if true@? then true@L else false@L").value() == gty(*lat, "Bool@?"));
  CHECK(gcheck(*lat, "true@H :: Bool@?").value() == gty(*lat, "Bool@?"));
  CHECK(gcheck(*lat, "(\\x:Bool@?. x)@L false@H").value() == gty(*lat, "Bool@?"));
  CHECK_FALSE(gcheck(*lat, "true@H :: Bool@L").ok());
}

TEST_CASE("fully static terms get their static types") {
  auto lat = SecurityLattice::two_point();
  for (const char* src : {"true@L", "if true@H then true@L else false@L",
                          "(\\x:Bool@L. x)@H true@L", "true@L :: Bool@H"}) {
    TermPtr t = parse(src);
    CheckResult<StaticType> st = typecheck_static(*lat, {}, *t);
    CheckResult<GradualType> gt = typecheck_gradual(*lat, {}, *t);
    REQUIRE(st.ok());
    REQUIRE(gt.ok());
    CHECK(to_gradual(st.value()) == gt.value());
  }
}

TEST_CASE("elaboration of the mixed-channel program carries the expected evidence") {
  auto lat = SecurityLattice::two_point();
  CheckResult<ITermPtr> r = elaborate(*lat, {}, *parse(kMixedProgram));
  REQUIRE(r.ok());
  const ITermPtr& root = r.value();
  CHECK(root->type == gty(*lat, "Bool@L"));

  GradualType tf = gty(*lat, "(Bool@L -> Bool@L)@L");
  GradualType tg = gty(*lat, "(Bool@? -> Bool@?)@L");

  const auto* outer = std::get_if<IApp>(&root->node);
  REQUIRE(outer != nullptr);
  CHECK(outer->fn_type == tf);
  CHECK(outer->fn.ev == Evidence{tf, tf});
  CHECK(outer->arg.ev == Evidence{gty(*lat, "Bool@L"), gty(*lat, "Bool@L")});
  CHECK(outer->arg.target == gty(*lat, "Bool@L"));

  const auto* inner = std::get_if<IApp>(&outer->arg.term->node);
  REQUIRE(inner != nullptr);
  CHECK(inner->fn.ev == Evidence{tg, tg});
  CHECK(inner->arg.ev == Evidence{gty(*lat, "Bool@H"), gty(*lat, "Bool@H")});
  CHECK(inner->arg.target == gty(*lat, "Bool@?"));

  std::string why;
  CHECK(well_formed(root, &why));
}

TEST_CASE("literals elaborate without evidence") {
  auto lat = SecurityLattice::two_point();
  CheckResult<ITermPtr> r = elaborate(*lat, {}, *parse("true@L"));
  REQUIRE(r.ok());
  CHECK(std::holds_alternative<IBool>(r.value()->node));
  CHECK(print(*r.value()) == "true@L");
}

TEST_CASE("ascription evidence is the interior, not the raw judgment") {
  auto lat = SecurityLattice::two_point();
  CheckResult<ITermPtr> r = elaborate(*lat, {}, *parse("true@H :: Bool@?"));
  REQUIRE(r.ok());
  const auto* asc = std::get_if<IAsc>(&r.value()->node);
  REQUIRE(asc != nullptr);
  // H is the top of the two-point lattice, so the interior pins both sides.
  CHECK(asc->body.ev == Evidence{gty(*lat, "Bool@H"), gty(*lat, "Bool@H")});
  CHECK(print(*r.value()) == "<Bool@H, Bool@H>true@H :: Bool@?");
}

TEST_CASE("elaborated types match the checker everywhere") {
  auto lat = SecurityLattice::two_point();
  CorpusParams params;
  params.term_depth = 2;
  params.gradual = true;
  Corpus corpus(*lat, params);
  NodeMemo memo;
  corpus.for_each([&](const TermPtr& t) {
    CheckResult<GradualType> gt = typecheck_gradual(*lat, {}, *t);
    CheckResult<ITermPtr> it = elaborate(*lat, {}, *t);
    REQUIRE(gt.ok() == it.ok());
    if (gt.ok()) {
      CHECK(it.value()->type == gt.value());
      std::string why;
      bool wf = well_formed(it.value(), &why, &memo);
      if (!wf) {
        CAPTURE(print(*t));
        CAPTURE(why);
        CHECK(wf);
      }
    }
  });
}

TEST_CASE("substitution replaces free occurrences and respects shadowing") {
  auto lat = SecurityLattice::two_point();
  GradualType bh = gty(*lat, "Bool@H");
  GradualEnv env = GradualEnv().extended("x", bh);
  ITermPtr body = elaborate(*lat, env, *parse("x && (\\x:Bool@L. x)@L true@L")).value();
  ITermPtr val = ibool(true, GradualLabel(lat->label("H")));
  ITermPtr closed = substitute(body, "x", val);
  // the left operand becomes the literal, the bound x stays
  const auto* op = std::get_if<IOp>(&closed->node);
  REQUIRE(op != nullptr);
  CHECK(std::holds_alternative<IBool>(op->lhs.term->node));
  std::string why;
  CHECK(well_formed(closed, &why));
}
