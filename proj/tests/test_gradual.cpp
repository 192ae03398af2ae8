#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsec/enumerate.hpp"
#include "gsec/gradual.hpp"
#include "gsec/intrinsic.hpp"

using namespace gsec;

namespace {

GradualLabel unknown() { return GradualLabel::unknown(); }

GradualType gty(const SecurityLattice& lat, const std::string& src) {
  return resolve_gradual_type(lat, *parse_type(src), {}).value();
}

std::vector<GradualLabel> glabels(const SecurityLattice& lat) {
  std::vector<GradualLabel> out;
  for (Label l : lat.all()) out.push_back(l);
  out.push_back(unknown());
  return out;
}

// Existential oracles, straight from the definitions.
bool consistent_leq_oracle(const SecurityLattice& lat, GradualLabel a, GradualLabel b) {
  for (Label x : concretize(lat, a).labels()) {
    for (Label y : concretize(lat, b).labels()) {
      if (leq(x, y)) return true;
    }
  }
  return false;
}

bool consistent_subtype_oracle(const SecurityLattice& lat, const GradualType& a,
                               const GradualType& b) {
  for (const StaticType& x : concretize(lat, a)) {
    for (const StaticType& y : concretize(lat, b)) {
      if (is_subtype(x, y)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("label concretization") {
  auto lat = SecurityLattice::two_point();
  CHECK(concretize(*lat, GradualLabel(lat->label("L"))).labels() ==
        std::vector<Label>{lat->label("L")});
  CHECK(concretize(*lat, unknown()).size() == 2);
  CHECK(concretize(*SecurityLattice::diamond(), unknown()).size() == 4);
}

TEST_CASE("label abstraction") {
  auto lat = SecurityLattice::two_point();
  Label h = lat->label("H");
  CHECK(*abstract_labels(*lat, LabelSet::of(*lat, {h})) == GradualLabel(h));
  CHECK(*abstract_labels(*lat, LabelSet::of(*lat, {lat->label("L"), h})) == unknown());
  CHECK_FALSE(abstract_labels(*lat, LabelSet{lat.get(), 0}).has_value());
}

TEST_CASE("type concretization and abstraction") {
  auto lat = SecurityLattice::two_point();
  CHECK(concretize(*lat, gty(*lat, "Bool@?")).size() == 2);
  CHECK(concretize(*lat, gty(*lat, "Bool@L")).size() == 1);
  CHECK(concretize(*lat, gty(*lat, "(Bool@? -> Bool@?)@?")).size() == 8);

  std::vector<StaticType> bools = concretize(*lat, gty(*lat, "Bool@?"));
  CHECK(*abstract_types(*lat, bools) == gty(*lat, "Bool@?"));
  CHECK(*abstract_types(*lat, {bools[0]}) == to_gradual(bools[0]));
  std::vector<StaticType> mixed = {
      concretize(*lat, gty(*lat, "Bool@L"))[0],
      concretize(*lat, gty(*lat, "(Bool@L -> Bool@L)@L"))[0]};
  CHECK_FALSE(is_valid_type_set(mixed));
  CHECK_FALSE(abstract_types(*lat, mixed).has_value());
  CHECK_FALSE(abstract_types(*lat, {}).has_value());
}

TEST_CASE("precision") {
  auto lat = SecurityLattice::two_point();
  GradualLabel l(lat->label("L"));
  CHECK(precision_leq(l, unknown()));
  CHECK_FALSE(precision_leq(unknown(), l));
  for (const GradualLabel& g : glabels(*lat)) CHECK(precision_leq(g, g));
  CHECK(precision_leq(gty(*lat, "Bool@L"), gty(*lat, "Bool@?")));
  CHECK_FALSE(precision_leq(gty(*lat, "Bool@?"), gty(*lat, "(Bool@? -> Bool@?)@?")));
}

TEST_CASE("consistent label ordering matches its existential definition") {
  auto two = SecurityLattice::two_point();
  CHECK(consistent_leq(unknown(), GradualLabel(two->label("L"))));
  CHECK(consistent_leq(GradualLabel(two->label("H")), unknown()));
  CHECK_FALSE(consistent_leq(GradualLabel(two->label("H")), GradualLabel(two->label("L"))));
  for (auto lat : {SecurityLattice::two_point(), SecurityLattice::diamond()}) {
    for (const GradualLabel& a : glabels(*lat)) {
      for (const GradualLabel& b : glabels(*lat)) {
        CHECK(consistent_leq(a, b) == consistent_leq_oracle(*lat, a, b));
      }
    }
  }
}

TEST_CASE("gradual join and meet") {
  auto lat = SecurityLattice::two_point();
  GradualLabel l(lat->label("L")), h(lat->label("H"));
  CHECK(gradual_join(h, unknown()) == h);          // top absorbs
  CHECK(gradual_join(unknown(), h) == h);
  CHECK(gradual_join(l, unknown()) == unknown());  // anything else stays unknown
  CHECK(gradual_join(l, h) == h);
  CHECK(gradual_meet(l, unknown()) == l);          // bottom absorbs
  CHECK(gradual_meet(unknown(), unknown()) == unknown());
  CHECK(gradual_meet(l, h) == l);
}

TEST_CASE("gradual stamping") {
  auto lat = SecurityLattice::two_point();
  CHECK(gstamp(gty(*lat, "Bool@L"), unknown()) == gty(*lat, "Bool@?"));
  CHECK(gstamp(gty(*lat, "Bool@H"), unknown()) == gty(*lat, "Bool@H"));
  for (const SurfaceTypePtr& t : enumerate_types(label_alphabet(*lat, true), 2)) {
    GradualType g = gty(*lat, print(*t));
    CHECK(gstamp(g, GradualLabel(lat->bottom())) == g);
  }
}

TEST_CASE("consistent subtyping matches its existential definition") {
  auto lat = SecurityLattice::two_point();
  CHECK(consistent_subtype(gty(*lat, "Bool@?"), gty(*lat, "Bool@L")));
  CHECK_FALSE(consistent_subtype(gty(*lat, "Bool@H"), gty(*lat, "Bool@L")));
  CHECK(consistent_subtype(gty(*lat, "(Bool@L -> Bool@L)@?"),
                           gty(*lat, "(Bool@? -> Bool@L)@H")));
  std::vector<GradualType> types;
  for (const SurfaceTypePtr& t : enumerate_types(label_alphabet(*lat, true), 2)) {
    types.push_back(gty(*lat, print(*t)));
  }
  for (const GradualType& a : types) {
    for (const GradualType& b : types) {
      CHECK(consistent_subtype(a, b) == consistent_subtype_oracle(*lat, a, b));
    }
  }
}

TEST_CASE("consistent join and meet") {
  auto lat = SecurityLattice::two_point();
  CHECK(*consistent_join(gty(*lat, "Bool@L"), gty(*lat, "Bool@?")) == gty(*lat, "Bool@?"));
  CHECK(*consistent_join(gty(*lat, "Bool@H"), gty(*lat, "Bool@?")) == gty(*lat, "Bool@H"));
  CHECK_FALSE(
      consistent_join(gty(*lat, "Bool@L"), gty(*lat, "(Bool@L -> Bool@L)@L")).has_value());
  CHECK(*consistent_join(gty(*lat, "(Bool@H -> Bool@L)@L"), gty(*lat, "(Bool@? -> Bool@H)@?")) ==
        gty(*lat, "(Bool@? -> Bool@H)@?"));
}

TEST_CASE("precision meet") {
  auto lat = SecurityLattice::two_point();
  GradualLabel l(lat->label("L")), h(lat->label("H"));
  CHECK(*precision_meet(h, unknown()) == h);
  CHECK(*precision_meet(unknown(), h) == h);
  CHECK_FALSE(precision_meet(h, l).has_value());
  CHECK(*precision_meet(gty(*lat, "Bool@?"), gty(*lat, "Bool@H")) == gty(*lat, "Bool@H"));
  CHECK_FALSE(precision_meet(gty(*lat, "Bool@H"), gty(*lat, "Bool@L")).has_value());
}

TEST_CASE("interior label rules") {
  auto lat = SecurityLattice::two_point();
  GradualLabel l(lat->label("L")), h(lat->label("H"));
  CHECK(*interior(h, unknown()) == LabelEvidence{h, h});          // top case
  CHECK(*interior(unknown(), l) == LabelEvidence{l, l});          // bottom case
  CHECK(*interior(unknown(), h) == LabelEvidence{unknown(), h});
  CHECK(*interior(l, unknown()) == LabelEvidence{l, unknown()});
  CHECK(*interior(l, l) == LabelEvidence{l, l});
  CHECK(*interior(l, h) == LabelEvidence{l, h});  // static-static rule
  CHECK_FALSE(interior(h, l).has_value());
  auto dia = SecurityLattice::diamond();
  CHECK_FALSE(interior(GradualLabel(dia->label("M1")), GradualLabel(dia->label("M2")))
                  .has_value());
}

TEST_CASE("interior type rules") {
  auto lat = SecurityLattice::two_point();
  CHECK(*interior(gty(*lat, "Bool@?"), gty(*lat, "Bool@L")) ==
        Evidence{gty(*lat, "Bool@L"), gty(*lat, "Bool@L")});
  CHECK(*interior(gty(*lat, "Bool@L"), gty(*lat, "Bool@L")) ==
        Evidence{gty(*lat, "Bool@L"), gty(*lat, "Bool@L")});
  CHECK(*interior(gty(*lat, "Bool@H"), gty(*lat, "Bool@?")) ==
        Evidence{gty(*lat, "Bool@H"), gty(*lat, "Bool@H")});
  // contravariant domains: the argument-side interior lands swapped
  CHECK(*interior(gty(*lat, "(Bool@H -> Bool@?)@L"), gty(*lat, "(Bool@? -> Bool@L)@?")) ==
        Evidence{gty(*lat, "(Bool@H -> Bool@L)@L"), gty(*lat, "(Bool@? -> Bool@L)@?")});
  CHECK_FALSE(interior(gty(*lat, "Bool@?"), gty(*lat, "(Bool@? -> Bool@?)@?")).has_value());
}

TEST_CASE("merge follows the middle-label case analysis") {
  auto lat = SecurityLattice::two_point();
  GradualLabel l(lat->label("L")), h(lat->label("H")), q = unknown();
  // middle is top
  CHECK(*merge(h, h, q) == LabelEvidence{h, h});
  CHECK_FALSE(merge(h, h, l).has_value());
  // middle is bottom
  CHECK(*merge(l, l, q) == LabelEvidence{l, q});
  CHECK_FALSE(merge(h, l, q).has_value());
  // general middle
  CHECK(*merge(q, q, q) == LabelEvidence{q, q});
  CHECK(*merge(l, q, h) == LabelEvidence{l, h});
  auto dia = SecurityLattice::diamond();
  GradualLabel m1(dia->label("M1"));
  CHECK(*merge(GradualLabel::unknown(), m1, GradualLabel::unknown()) ==
        LabelEvidence{GradualLabel::unknown(), GradualLabel::unknown()});
}

TEST_CASE("merge in the one-point lattice dispatches to the top rule") {
  auto one = SecurityLattice::from_json(R"({"elements":["X"],"order":[]})");
  GradualLabel x(one->label("X"));
  CHECK(*merge(x, x, GradualLabel::unknown()) == LabelEvidence{x, x});
  CHECK(*merge(GradualLabel::unknown(), x, x) == LabelEvidence{GradualLabel::unknown(), x});
}

TEST_CASE("consistent transitivity combines through the meet") {
  auto lat = SecurityLattice::two_point();
  auto bev = [&](const char* a, const char* b) {
    return Evidence{gty(*lat, a), gty(*lat, b)};
  };
  // the trace steps of the mixed-channel program
  CHECK(*consistent_transitivity(bev("Bool@H", "Bool@H"), bev("Bool@?", "Bool@?")) ==
        bev("Bool@H", "Bool@H"));
  CHECK_FALSE(consistent_transitivity(bev("Bool@H", "Bool@H"), bev("Bool@L", "Bool@L"))
                  .has_value());
  CHECK(*consistent_transitivity(bev("Bool@L", "Bool@L"), bev("Bool@L", "Bool@H")) ==
        bev("Bool@L", "Bool@H"));
}

TEST_CASE("evidence inversion") {
  auto lat = SecurityLattice::two_point();
  Evidence e{gty(*lat, "(Bool@H -> Bool@L)@L"), gty(*lat, "(Bool@? -> Bool@?)@?")};
  CHECK(*evidence_domain(e) == Evidence{gty(*lat, "Bool@?"), gty(*lat, "Bool@H")});
  CHECK(*evidence_codomain(e) == Evidence{gty(*lat, "Bool@L"), gty(*lat, "Bool@?")});
  Evidence flat{gty(*lat, "Bool@L"), gty(*lat, "Bool@L")};
  CHECK_FALSE(evidence_domain(flat).has_value());
  CHECK_FALSE(evidence_codomain(flat).has_value());
}

TEST_CASE("the 81-entry two-point combination table") {
  auto lat = SecurityLattice::two_point();
  std::vector<GradualLabel> gs = glabels(*lat);

  // Independent transcription of the combination on labels: meet the middle,
  // then the three-way merge, written directly over two-point cases.
  auto meet3 = [&](const GradualLabel& a, const GradualLabel& b) -> std::optional<GradualLabel> {
    if (a.is_unknown()) return b;
    if (b.is_unknown()) return a;
    return a == b ? std::optional<GradualLabel>(a) : std::nullopt;
  };
  auto expected = [&](GradualLabel a, GradualLabel b, GradualLabel c,
                      GradualLabel d) -> std::optional<LabelEvidence> {
    std::optional<GradualLabel> m = meet3(b, c);
    if (!m) return std::nullopt;
    Label top = lat->top(), bot = lat->bottom();
    if (m->is_known() && m->known() == top) {
      if (!(d.is_unknown() || d.known() == top)) return std::nullopt;
      return LabelEvidence{a, GradualLabel(top)};
    }
    if (m->is_known() && m->known() == bot) {
      if (!(a.is_unknown() || a.known() == bot)) return std::nullopt;
      return LabelEvidence{GradualLabel(bot), d};
    }
    auto cleq = [&](const GradualLabel& x, const GradualLabel& y) {
      if (x.is_unknown() || y.is_unknown()) return true;
      return leq(x.known(), y.known());
    };
    if (!cleq(a, *m) || !cleq(*m, d) || !cleq(a, d)) return std::nullopt;
    return LabelEvidence{a, d};
  };

  int checked = 0;
  for (const GradualLabel& a : gs) {
    for (const GradualLabel& b : gs) {
      for (const GradualLabel& c : gs) {
        for (const GradualLabel& d : gs) {
          ++checked;
          std::optional<Evidence> got = consistent_transitivity(
              Evidence{GradualType::boolean(a), GradualType::boolean(b)},
              Evidence{GradualType::boolean(c), GradualType::boolean(d)});
          std::optional<LabelEvidence> want = expected(a, b, c, d);
          REQUIRE(got.has_value() == want.has_value());
          if (got) {
            CHECK(got->lhs == GradualType::boolean(want->lhs));
            CHECK(got->rhs == GradualType::boolean(want->rhs));
          }
        }
      }
    }
  }
  CHECK(checked == 81);
}
