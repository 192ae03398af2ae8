#ifndef GSEC_TYPES_HPP
#define GSEC_TYPES_HPP

#include <memory>
#include <optional>
#include <string>

#include "gsec/lattice.hpp"

namespace gsec {

/// A lattice label or the unknown label `?`.
class GradualLabel {
 public:
  GradualLabel(Label l) : known_(l) {}  // NOLINT: implicit by design
  static GradualLabel unknown() { return GradualLabel(); }

  bool is_known() const { return known_.has_value(); }
  bool is_unknown() const { return !known_.has_value(); }
  Label known() const { return *known_; }

  friend bool operator==(const GradualLabel&, const GradualLabel&) = default;

 private:
  GradualLabel() = default;
  std::optional<Label> known_;
};

std::string to_string(const GradualLabel& l);

/// Security types: booleans and functions, each carrying a label of type
/// LabelT. Instantiated at Label (fully static) and GradualLabel.
/// Immutable trees with shared structure.
template <class LabelT>
class SecType {
  struct Node {
    LabelT label;
    std::shared_ptr<const Node> dom, cod;  // null => boolean
    Node(LabelT l) : label(l) {}
    Node(LabelT l, std::shared_ptr<const Node> d, std::shared_ptr<const Node> c)
        : label(l), dom(std::move(d)), cod(std::move(c)) {}
  };
  std::shared_ptr<const Node> n_;
  explicit SecType(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

 public:
  static SecType boolean(LabelT l) { return SecType(std::make_shared<Node>(l)); }
  static SecType function(const SecType& dom, const SecType& cod, LabelT l) {
    return SecType(std::make_shared<Node>(l, dom.n_, cod.n_));
  }

  bool is_function() const { return n_->dom != nullptr; }
  bool is_boolean() const { return n_->dom == nullptr; }
  const LabelT& label() const { return n_->label; }
  SecType dom() const { return SecType(n_->dom); }
  SecType cod() const { return SecType(n_->cod); }
  SecType with_label(LabelT l) const {
    if (is_boolean()) return boolean(l);
    return SecType(std::make_shared<Node>(l, n_->dom, n_->cod));
  }

  friend bool operator==(const SecType& a, const SecType& b) {
    if (a.n_ == b.n_) return true;
    if (!(a.n_->label == b.n_->label)) return false;
    if ((a.n_->dom == nullptr) != (b.n_->dom == nullptr)) return false;
    if (a.n_->dom == nullptr) return true;
    return SecType(a.n_->dom) == SecType(b.n_->dom) &&
           SecType(a.n_->cod) == SecType(b.n_->cod);
  }
  friend bool operator!=(const SecType& a, const SecType& b) { return !(a == b); }
};

using StaticType = SecType<Label>;
using GradualType = SecType<GradualLabel>;

std::string to_string(const StaticType& t);
std::string to_string(const GradualType& t);

/// Embeds a fully static type into the gradual types (every label known).
GradualType to_gradual(const StaticType& t);

/// Inverse of to_gradual; absent if the type mentions `?` anywhere.
std::optional<StaticType> to_static(const GradualType& t);

}  // namespace gsec

#endif
