#ifndef GSEC_GRADUAL_HPP
#define GSEC_GRADUAL_HPP

#include <optional>
#include <vector>

#include "gsec/types.hpp"

namespace gsec {

/// A subset of one lattice's elements, as a bitmask.
struct LabelSet {
  const SecurityLattice* lattice = nullptr;
  uint64_t bits = 0;

  bool empty() const { return bits == 0; }
  size_t size() const { return static_cast<size_t>(__builtin_popcountll(bits)); }
  bool contains(Label l) const { return (bits >> l.index) & 1u; }
  void insert(Label l) { bits |= uint64_t{1} << l.index; }
  bool subset_of(const LabelSet& o) const { return (bits & ~o.bits) == 0; }
  std::vector<Label> labels() const;
  static LabelSet of(const SecurityLattice& lat, std::initializer_list<Label> ls);
};

// --- Concretization and abstraction -----------------------------------------

LabelSet concretize(const SecurityLattice& lat, const GradualLabel& l);
std::optional<GradualLabel> abstract_labels(const SecurityLattice& lat, const LabelSet& s);

std::vector<StaticType> concretize(const SecurityLattice& lat, const GradualType& t);
// Valid sets: nonempty, all members share one constructor skeleton.
bool is_valid_type_set(const std::vector<StaticType>& ts);
std::optional<GradualType> abstract_types(const SecurityLattice& lat,
                                          const std::vector<StaticType>& ts);

// --- Precision ("less imprecise than") --------------------------------------

bool precision_leq(const GradualLabel& a, const GradualLabel& b);
bool precision_leq(const GradualType& a, const GradualType& b);

// --- Consistent liftings of the label algebra -------------------------------

bool consistent_leq(const GradualLabel& a, const GradualLabel& b);
GradualLabel gradual_join(const GradualLabel& a, const GradualLabel& b);
GradualLabel gradual_meet(const GradualLabel& a, const GradualLabel& b);

/// Stamping lifted: joins the top-level label with l.
GradualType gstamp(const GradualType& t, const GradualLabel& l);

bool consistent_subtype(const GradualType& a, const GradualType& b);
std::optional<GradualType> consistent_join(const GradualType& a, const GradualType& b);
std::optional<GradualType> consistent_meet(const GradualType& a, const GradualType& b);

// --- Precision meet ----------------------------------------------------------

std::optional<GradualLabel> precision_meet(const GradualLabel& a, const GradualLabel& b);
std::optional<GradualType> precision_meet(const GradualType& a, const GradualType& b);

// --- Evidence ----------------------------------------------------------------

/// Evidence for a consistent label ordering judgment.
struct LabelEvidence {
  GradualLabel lhs, rhs;
  friend bool operator==(const LabelEvidence&, const LabelEvidence&) = default;
};

/// Evidence for a consistent subtyping judgment: a pair of gradual types at
/// least as precise as the judgment's two sides.
struct Evidence {
  GradualType lhs, rhs;
  friend bool operator==(const Evidence& a, const Evidence& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

std::string to_string(const LabelEvidence& e);
std::string to_string(const Evidence& e);

/// The most precise evidence refining a consistent judgment; absent when the
/// judgment does not hold.
std::optional<LabelEvidence> interior(const GradualLabel& a, const GradualLabel& b);
std::optional<Evidence> interior(const GradualType& a, const GradualType& b);

/// Three-point merge through a middle; the backbone of evidence combination.
std::optional<LabelEvidence> merge(const GradualLabel& l1, const GradualLabel& l2,
                                   const GradualLabel& l3);
std::optional<Evidence> merge(const GradualType& t1, const GradualType& t2,
                              const GradualType& t3);

/// Combines evidence for A <~ B with evidence for B <~ C; absent when the
/// two cannot be reconciled, which the runtime turns into an error.
std::optional<Evidence> consistent_transitivity(const Evidence& e1, const Evidence& e2);

/// Evidence inversion for applications: the domain side swaps (contravariance);
/// the codomain side stamps the target component with its latent label.
std::optional<Evidence> evidence_domain(const Evidence& e);
std::optional<Evidence> evidence_codomain(const Evidence& e);

/// Does e justify the judgment `from <~ to`? (Componentwise at least as
/// precise as the interior.)
bool evidence_justifies(const Evidence& e, const GradualType& from, const GradualType& to);

}  // namespace gsec

#endif
