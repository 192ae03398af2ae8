#include "gsec/types.hpp"

namespace gsec {

std::string to_string(const GradualLabel& l) {
  return l.is_known() ? to_string(l.known()) : "?";
}

namespace {

template <class LabelT>
std::string type_str(const SecType<LabelT>& t) {
  if (!t.is_function()) return "Bool@" + to_string(t.label());
  return "(" + type_str(t.dom()) + " -> " + type_str(t.cod()) + ")@" + to_string(t.label());
}

}  // namespace

std::string to_string(const StaticType& t) { return type_str(t); }
std::string to_string(const GradualType& t) { return type_str(t); }

GradualType to_gradual(const StaticType& t) {
  if (!t.is_function()) return GradualType::boolean(t.label());
  return GradualType::function(to_gradual(t.dom()), to_gradual(t.cod()), t.label());
}

std::optional<StaticType> to_static(const GradualType& t) {
  if (t.label().is_unknown()) return std::nullopt;
  if (!t.is_function()) return StaticType::boolean(t.label().known());
  std::optional<StaticType> d = to_static(t.dom());
  std::optional<StaticType> c = to_static(t.cod());
  if (!d || !c) return std::nullopt;
  return StaticType::function(*d, *c, t.label().known());
}

}  // namespace gsec
