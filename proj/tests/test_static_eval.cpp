#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsec/static_eval.hpp"

using namespace gsec;

namespace {

STermPtr prep(const SecurityLattice& lat, const std::string& src) {
  TermPtr t = parse(src);
  REQUIRE(typecheck_static(lat, {}, *t).ok());
  return lower(lat, *t).value();
}

STermPtr bool_value(const SecurityLattice& lat, bool b, const std::string& label) {
  return make_sterm(SBool{b, lat.label(label)});
}

}  // namespace

TEST_CASE("operator reduction joins the labels") {
  auto lat = SecurityLattice::two_point();
  STermPtr t = prep(*lat, "true@H && false@L");
  std::optional<STermPtr> r = step_static(t);
  REQUIRE(r.has_value());
  CHECK(equal(**r, *bool_value(*lat, false, "H")));
  CHECK_FALSE(step_static(*r).has_value());  // a value in 0 further steps
}

TEST_CASE("branch selection stamps through a term stamp") {
  auto lat = SecurityLattice::two_point();
  STermPtr t = prep(*lat, "if true@H then true@L else false@L");
  std::optional<STermPtr> one = step_static(t);
  REQUIRE(one.has_value());
  // first the branch is stamped, then the stamp collapses into the value
  CHECK(print(**one) == "true@L \\/ H");
  std::optional<STermPtr> two = step_static(*one);
  REQUIRE(two.has_value());
  CHECK(equal(**two, *bool_value(*lat, true, "H")));
}

TEST_CASE("beta reduction stamps with the function label") {
  auto lat = SecurityLattice::two_point();
  STermPtr t = prep(*lat, "(\\x:Bool@L. x)@H true@L");
  std::optional<STermPtr> one = step_static(t);
  REQUIRE(one.has_value());
  CHECK(print(**one) == "true@L \\/ H");
  CHECK(equal(*eval_small(t), *bool_value(*lat, true, "H")));
}

TEST_CASE("ascription evaluates its body and is discarded") {
  auto lat = SecurityLattice::two_point();
  STermPtr t = prep(*lat, "(true@L && true@L) :: Bool@H");
  CHECK(equal(*eval_small(t), *bool_value(*lat, true, "L")));
}

TEST_CASE("small-step traces are printable") {
  auto lat = SecurityLattice::two_point();
  std::vector<std::string> trace;
  eval_small(prep(*lat, "if true@H then true@L else false@L"), &trace);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0] == "true@L \\/ H");
  CHECK(trace[1] == "true@H");
}

TEST_CASE("big-step agrees with small-step on the worked examples") {
  auto lat = SecurityLattice::two_point();
  CHECK(equal(*eval_big(prep(*lat, "true@L")), *bool_value(*lat, true, "L")));
  CHECK(equal(*eval_big(prep(*lat, "if false@H then true@L else false@L")),
              *bool_value(*lat, false, "H")));
  for (const char* src : {
           "(\\x:Bool@L. x)@L ((\\x:Bool@L. x)@L false@L)",
           "(\\x:Bool@H. x && x)@L true@H",
           "(if true@L then (\\x:Bool@L. x)@L else (\\x:Bool@L. true@H :: Bool@H)@L) false@L",
           "true@L => false@H",
           "(\\f:(Bool@L -> Bool@L)@L. f (f true@L))@H (\\x:Bool@L. x)@L",
       }) {
    STermPtr t = prep(*lat, src);
    CHECK(equal(*eval_small(t), *eval_big(t)));
  }
}

TEST_CASE("per-step preservation up to subtyping") {
  auto lat = SecurityLattice::two_point();
  STermPtr t = prep(*lat, "((\\x:Bool@L. x)@H true@L) :: Bool@H");
  std::optional<StaticType> ty = typecheck_core(*lat, {}, *t);
  REQUIRE(ty.has_value());
  STermPtr cur = t;
  while (auto next = step_static(cur)) {
    cur = *next;
    std::optional<StaticType> now = typecheck_core(*lat, {}, *cur);
    REQUIRE(now.has_value());
    CHECK(is_subtype(*now, *ty));
    ty = now;
  }
  CHECK(is_static_value(*cur));
}
