#include "gsec/gradual.hpp"

namespace gsec {

std::vector<Label> LabelSet::labels() const {
  std::vector<Label> out;
  uint64_t b = bits;
  while (b) {
    uint32_t i = static_cast<uint32_t>(__builtin_ctzll(b));
    b &= b - 1;
    out.push_back(lattice->at(i));
  }
  return out;
}

LabelSet LabelSet::of(const SecurityLattice& lat, std::initializer_list<Label> ls) {
  LabelSet s{&lat, 0};
  for (Label l : ls) s.insert(l);
  return s;
}

LabelSet concretize(const SecurityLattice& lat, const GradualLabel& l) {
  LabelSet s{&lat, 0};
  if (l.is_known()) {
    s.insert(l.known());
  } else {
    s.bits = lat.size() == 64 ? ~uint64_t{0} : (uint64_t{1} << lat.size()) - 1;
  }
  return s;
}

std::optional<GradualLabel> abstract_labels(const SecurityLattice& lat, const LabelSet& s) {
  if (s.empty()) return std::nullopt;
  if (s.size() == 1) return GradualLabel(lat.at(static_cast<uint32_t>(__builtin_ctzll(s.bits))));
  return GradualLabel::unknown();
}

std::vector<StaticType> concretize(const SecurityLattice& lat, const GradualType& t) {
  std::vector<StaticType> out;
  std::vector<Label> labels = concretize(lat, t.label()).labels();
  if (!t.is_function()) {
    for (Label l : labels) out.push_back(StaticType::boolean(l));
    return out;
  }
  std::vector<StaticType> doms = concretize(lat, t.dom());
  std::vector<StaticType> cods = concretize(lat, t.cod());
  for (const StaticType& d : doms) {
    for (const StaticType& c : cods) {
      for (Label l : labels) out.push_back(StaticType::function(d, c, l));
    }
  }
  return out;
}

bool is_valid_type_set(const std::vector<StaticType>& ts) {
  if (ts.empty()) return false;
  bool fn = ts.front().is_function();
  for (const StaticType& t : ts) {
    if (t.is_function() != fn) return false;
  }
  if (!fn) return true;
  std::vector<StaticType> doms, cods;
  doms.reserve(ts.size());
  cods.reserve(ts.size());
  for (const StaticType& t : ts) {
    doms.push_back(t.dom());
    cods.push_back(t.cod());
  }
  return is_valid_type_set(doms) && is_valid_type_set(cods);
}

std::optional<GradualType> abstract_types(const SecurityLattice& lat,
                                          const std::vector<StaticType>& ts) {
  if (!is_valid_type_set(ts)) return std::nullopt;
  LabelSet labels{&lat, 0};
  for (const StaticType& t : ts) labels.insert(t.label());
  std::optional<GradualLabel> l = abstract_labels(lat, labels);
  if (!l) return std::nullopt;
  if (!ts.front().is_function()) return GradualType::boolean(*l);
  std::vector<StaticType> doms, cods;
  for (const StaticType& t : ts) {
    doms.push_back(t.dom());
    cods.push_back(t.cod());
  }
  std::optional<GradualType> d = abstract_types(lat, doms);
  std::optional<GradualType> c = abstract_types(lat, cods);
  if (!d || !c) return std::nullopt;
  return GradualType::function(*d, *c, *l);
}

bool precision_leq(const GradualLabel& a, const GradualLabel& b) {
  return b.is_unknown() || a == b;
}

bool precision_leq(const GradualType& a, const GradualType& b) {
  if (a.is_function() != b.is_function()) return false;
  if (!precision_leq(a.label(), b.label())) return false;
  if (!a.is_function()) return true;
  return precision_leq(a.dom(), b.dom()) && precision_leq(a.cod(), b.cod());
}

bool consistent_leq(const GradualLabel& a, const GradualLabel& b) {
  if (a.is_unknown() || b.is_unknown()) return true;
  return leq(a.known(), b.known());
}

GradualLabel gradual_join(const GradualLabel& a, const GradualLabel& b) {
  if (a.is_known() && b.is_known()) return join(a.known(), b.known());
  if (a.is_known() && is_top(a.known())) return a;
  if (b.is_known() && is_top(b.known())) return b;
  return GradualLabel::unknown();
}

GradualLabel gradual_meet(const GradualLabel& a, const GradualLabel& b) {
  if (a.is_known() && b.is_known()) return meet(a.known(), b.known());
  if (a.is_known() && is_bottom(a.known())) return a;
  if (b.is_known() && is_bottom(b.known())) return b;
  return GradualLabel::unknown();
}

GradualType gstamp(const GradualType& t, const GradualLabel& l) {
  return t.with_label(gradual_join(t.label(), l));
}

bool consistent_subtype(const GradualType& a, const GradualType& b) {
  if (a.is_function() != b.is_function()) return false;
  if (!consistent_leq(a.label(), b.label())) return false;
  if (!a.is_function()) return true;
  return consistent_subtype(b.dom(), a.dom()) && consistent_subtype(a.cod(), b.cod());
}

std::optional<GradualType> consistent_join(const GradualType& a, const GradualType& b) {
  if (a.is_function() != b.is_function()) return std::nullopt;
  GradualLabel l = gradual_join(a.label(), b.label());
  if (!a.is_function()) return GradualType::boolean(l);
  std::optional<GradualType> d = consistent_meet(a.dom(), b.dom());
  std::optional<GradualType> c = consistent_join(a.cod(), b.cod());
  if (!d || !c) return std::nullopt;
  return GradualType::function(*d, *c, l);
}

std::optional<GradualType> consistent_meet(const GradualType& a, const GradualType& b) {
  if (a.is_function() != b.is_function()) return std::nullopt;
  GradualLabel l = gradual_meet(a.label(), b.label());
  if (!a.is_function()) return GradualType::boolean(l);
  std::optional<GradualType> d = consistent_join(a.dom(), b.dom());
  std::optional<GradualType> c = consistent_meet(a.cod(), b.cod());
  if (!d || !c) return std::nullopt;
  return GradualType::function(*d, *c, l);
}

std::optional<GradualLabel> precision_meet(const GradualLabel& a, const GradualLabel& b) {
  if (a.is_unknown()) return b;
  if (b.is_unknown()) return a;
  if (a == b) return a;
  return std::nullopt;
}

std::optional<GradualType> precision_meet(const GradualType& a, const GradualType& b) {
  if (a.is_function() != b.is_function()) return std::nullopt;
  std::optional<GradualLabel> l = precision_meet(a.label(), b.label());
  if (!l) return std::nullopt;
  if (!a.is_function()) return GradualType::boolean(*l);
  std::optional<GradualType> d = precision_meet(a.dom(), b.dom());
  std::optional<GradualType> c = precision_meet(a.cod(), b.cod());
  if (!d || !c) return std::nullopt;
  return GradualType::function(*d, *c, *l);
}

std::string to_string(const LabelEvidence& e) {
  return "<" + to_string(e.lhs) + ", " + to_string(e.rhs) + ">";
}

std::string to_string(const Evidence& e) {
  return "<" + to_string(e.lhs) + ", " + to_string(e.rhs) + ">";
}

std::optional<LabelEvidence> interior(const GradualLabel& a, const GradualLabel& b) {
  if (a.is_unknown() && b.is_unknown()) {
    return LabelEvidence{a, b};
  }
  if (a.is_known() && b.is_unknown()) {
    if (is_top(a.known())) return LabelEvidence{a, a};
    return LabelEvidence{a, GradualLabel::unknown()};
  }
  if (a.is_unknown() && b.is_known()) {
    if (is_bottom(b.known())) return LabelEvidence{b, b};
    return LabelEvidence{GradualLabel::unknown(), b};
  }
  if (leq(a.known(), b.known())) return LabelEvidence{a, b};
  return std::nullopt;
}

std::optional<Evidence> interior(const GradualType& a, const GradualType& b) {
  if (a.is_function() != b.is_function()) return std::nullopt;
  if (!a.is_function()) {
    std::optional<LabelEvidence> l = interior(a.label(), b.label());
    if (!l) return std::nullopt;
    return Evidence{GradualType::boolean(l->lhs), GradualType::boolean(l->rhs)};
  }
  std::optional<Evidence> d = interior(b.dom(), a.dom());
  std::optional<Evidence> c = interior(a.cod(), b.cod());
  std::optional<LabelEvidence> l = interior(a.label(), b.label());
  if (!d || !c || !l) return std::nullopt;
  return Evidence{GradualType::function(d->rhs, c->lhs, l->lhs),
                  GradualType::function(d->lhs, c->rhs, l->rhs)};
}

std::optional<LabelEvidence> merge(const GradualLabel& l1, const GradualLabel& l2,
                                   const GradualLabel& l3) {
  // Dispatch on the middle: top rule, bottom rule, then the general rule.
  if (l2.is_known() && is_top(l2.known())) {
    if (!consistent_leq(l2, l3)) return std::nullopt;
    return LabelEvidence{l1, l2};
  }
  if (l2.is_known() && is_bottom(l2.known())) {
    if (!consistent_leq(l1, l2)) return std::nullopt;
    return LabelEvidence{l2, l3};
  }
  // The endpoint premise is implied for known middles; with an unknown middle
  // it is exactly what keeps the result a consistent pair (the set of label
  // pairs threaded through any middle is empty when the endpoints cannot be
  // ordered).
  if (!consistent_leq(l1, l2) || !consistent_leq(l2, l3) || !consistent_leq(l1, l3)) {
    return std::nullopt;
  }
  return LabelEvidence{l1, l3};
}

std::optional<Evidence> merge(const GradualType& t1, const GradualType& t2,
                              const GradualType& t3) {
  if (t1.is_function() != t2.is_function() || t2.is_function() != t3.is_function()) {
    return std::nullopt;
  }
  if (!t1.is_function()) {
    std::optional<LabelEvidence> l = merge(t1.label(), t2.label(), t3.label());
    if (!l) return std::nullopt;
    return Evidence{GradualType::boolean(l->lhs), GradualType::boolean(l->rhs)};
  }
  // Domains merge with the endpoints swapped (contravariance).
  std::optional<Evidence> d = merge(t3.dom(), t2.dom(), t1.dom());
  std::optional<Evidence> c = merge(t1.cod(), t2.cod(), t3.cod());
  std::optional<LabelEvidence> l = merge(t1.label(), t2.label(), t3.label());
  if (!d || !c || !l) return std::nullopt;
  return Evidence{GradualType::function(d->rhs, c->lhs, l->lhs),
                  GradualType::function(d->lhs, c->rhs, l->rhs)};
}

std::optional<Evidence> consistent_transitivity(const Evidence& e1, const Evidence& e2) {
  std::optional<GradualType> mid = precision_meet(e1.rhs, e2.lhs);
  if (!mid) return std::nullopt;
  return merge(e1.lhs, *mid, e2.rhs);
}

std::optional<Evidence> evidence_domain(const Evidence& e) {
  if (!e.lhs.is_function() || !e.rhs.is_function()) return std::nullopt;
  return Evidence{e.rhs.dom(), e.lhs.dom()};
}

std::optional<Evidence> evidence_codomain(const Evidence& e) {
  // Only the target side absorbs the latent label. Stamping the source side
  // as well makes the later combine against the body value's evidence demand
  // a meet of distinct known labels, so even fully static applications with a
  // raised function label would fail at runtime.
  if (!e.lhs.is_function() || !e.rhs.is_function()) return std::nullopt;
  return Evidence{e.lhs.cod(), gstamp(e.rhs.cod(), e.rhs.label())};
}

bool evidence_justifies(const Evidence& e, const GradualType& from, const GradualType& to) {
  std::optional<Evidence> i = interior(from, to);
  if (!i) return false;
  return precision_leq(e.lhs, i->lhs) && precision_leq(e.rhs, i->rhs);
}

}  // namespace gsec
