#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsec/enumerate.hpp"
#include "gsec/statics.hpp"

using namespace gsec;

namespace {

StaticType ty(const SecurityLattice& lat, const std::string& src) {
  return resolve_static_type(lat, *parse_type(src), {}).value();
}

std::optional<StaticType> check(const SecurityLattice& lat, const std::string& src) {
  return typecheck_static(lat, {}, *parse(src)).value_opt();
}

std::vector<StaticType> static_types(const SecurityLattice& lat, int depth) {
  std::vector<StaticType> out;
  for (const SurfaceTypePtr& t : enumerate_types(label_alphabet(lat, false), depth)) {
    out.push_back(resolve_static_type(lat, *t, {}).value());
  }
  return out;
}

}  // namespace

TEST_CASE("subtyping is covariant on booleans, contravariant on domains") {
  auto lat = SecurityLattice::two_point();
  CHECK(is_subtype(ty(*lat, "Bool@L"), ty(*lat, "Bool@H")));
  CHECK_FALSE(is_subtype(ty(*lat, "Bool@H"), ty(*lat, "Bool@L")));
  // Widening the domain of a function is not allowed.
  CHECK_FALSE(is_subtype(ty(*lat, "(Bool@L -> Bool@L)@L"), ty(*lat, "(Bool@H -> Bool@L)@L")));
  CHECK(is_subtype(ty(*lat, "(Bool@H -> Bool@L)@L"), ty(*lat, "(Bool@L -> Bool@H)@H")));
  for (const StaticType& s : static_types(*lat, 2)) {
    CHECK(is_subtype(s, s));
  }
}

TEST_CASE("join and meet follow the structural equations") {
  auto lat = SecurityLattice::two_point();
  CHECK(*subtype_join(ty(*lat, "Bool@L"), ty(*lat, "Bool@H")) == ty(*lat, "Bool@H"));
  // Hand evaluation: domains meet (H meet L = L), codomain and label join.
  CHECK(*subtype_join(ty(*lat, "(Bool@H -> Bool@L)@L"), ty(*lat, "(Bool@L -> Bool@H)@H")) ==
        ty(*lat, "(Bool@L -> Bool@H)@H"));
  CHECK(*subtype_meet(ty(*lat, "(Bool@H -> Bool@L)@L"), ty(*lat, "(Bool@L -> Bool@H)@H")) ==
        ty(*lat, "(Bool@H -> Bool@L)@L"));
  CHECK_FALSE(subtype_join(ty(*lat, "Bool@L"), ty(*lat, "(Bool@L -> Bool@L)@L")).has_value());
  CHECK_FALSE(subtype_meet(ty(*lat, "Bool@L"), ty(*lat, "(Bool@L -> Bool@L)@L")).has_value());
}

TEST_CASE("stamping joins the top-level label") {
  auto lat2 = SecurityLattice::two_point();
  CHECK(stamp(ty(*lat2, "Bool@L"), lat2->label("H")) == ty(*lat2, "Bool@H"));
  CHECK(stamp(ty(*lat2, "(Bool@L -> Bool@L)@L"), lat2->label("H")) ==
        ty(*lat2, "(Bool@L -> Bool@L)@H"));
  for (const StaticType& s : static_types(*lat2, 2)) {
    CHECK(stamp(s, lat2->bottom()) == s);
  }
  auto dia = SecurityLattice::diamond();
  CHECK(stamp(ty(*dia, "Bool@M1"), dia->label("M2")) == ty(*dia, "Bool@Top"));
}

TEST_CASE("checker accepts and rejects the channel examples") {
  auto lat = SecurityLattice::two_point();
  // a public channel cannot take a private value
  auto rejected = typecheck_static(*lat, {}, *parse("(\\x:Bool@L. x)@L false@H"));
  REQUIRE_FALSE(rejected.ok());
  CHECK(rejected.error().rule == "app");
  CHECK(*check(*lat, "true@L") == ty(*lat, "Bool@L"));
  CHECK(*check(*lat, "if true@H then true@L else false@L") == ty(*lat, "Bool@H"));
}

TEST_CASE("checker rule coverage") {
  auto lat = SecurityLattice::two_point();
  CHECK(*check(*lat, "true@H && false@L") == ty(*lat, "Bool@H"));
  CHECK(*check(*lat, "(\\x:Bool@L. x)@H") == ty(*lat, "(Bool@L -> Bool@L)@H"));
  CHECK(*check(*lat, "(\\x:Bool@L. x)@H true@L") == ty(*lat, "Bool@H"));
  CHECK(*check(*lat, "true@L :: Bool@H") == ty(*lat, "Bool@H"));
  CHECK(*check(*lat, "true") == ty(*lat, "Bool@L"));  // defaults to bottom

  auto err = [&](const std::string& src) {
    CheckResult<StaticType> r = typecheck_static(*lat, {}, *parse(src));
    REQUIRE_FALSE(r.ok());
    return r.error().rule;
  };
  CHECK(err("x") == "var");
  CHECK(err("true@L && (\\x:Bool@L. x)@L") == "op");
  CHECK(err("true@L false@L") == "app");
  CHECK(err("if (\\x:Bool@L. x)@L then true@L else false@L") == "if");
  CHECK(err("if true@L then (\\x:Bool@L. x)@L else false@L") == "if");
  CHECK(err("true@H :: Bool@L") == "asc");
  CHECK(err("true@? ") == "label");
  CHECK(err("true@Secret") == "label");
  CHECK(err("(\\x:Bool@?. x)@L") == "label");
}

TEST_CASE("checker is deterministic across repeated runs") {
  auto lat = SecurityLattice::two_point();
  TermPtr t = parse("if true@H then true@L else false@L");
  auto a = typecheck_static(*lat, {}, *t);
  auto b = typecheck_static(*lat, {}, *t);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(a.value() == b.value());
}

TEST_CASE("join is an upper bound at depth 2 on both built-in lattices") {
  for (auto lat : {SecurityLattice::two_point(), SecurityLattice::diamond()}) {
    std::vector<StaticType> types = static_types(*lat, 2);
    for (const StaticType& a : types) {
      for (const StaticType& b : types) {
        auto j = subtype_join(a, b);
        if (j) {
          CHECK(is_subtype(a, *j));
          CHECK(is_subtype(b, *j));
        }
        auto m = subtype_meet(a, b);
        if (m) {
          CHECK(is_subtype(*m, a));
          CHECK(is_subtype(*m, b));
        }
      }
    }
  }
}
