#ifndef GSEC_ENUMERATE_HPP
#define GSEC_ENUMERATE_HPP

#include <functional>
#include <random>
#include <vector>

#include "gsec/statics.hpp"

namespace gsec {

/// Generation parameters for an exhaustive term corpus. Depth counts AST
/// height: literals and variables sit at depth 1, every other node at one
/// plus the deepest child. Type depth counts the same way over type trees.
struct CorpusParams {
  int term_depth = 3;
  int type_depth = 2;
  bool gradual = false;  // add `?` at every label position
  std::vector<std::string> scope;  // free variables available to the terms
};

std::vector<SurfaceLabel> label_alphabet(const SecurityLattice& lat, bool gradual);

/// All annotation types up to max_depth over the alphabet, in a stable order.
std::vector<SurfaceTypePtr> enumerate_types(const std::vector<SurfaceLabel>& alphabet,
                                            int max_depth);

/// A deterministic stream of every term within the bounds. Nothing above the
/// second-to-last depth layer is materialized, so depth-3 sweeps stream.
class Corpus {
 public:
  Corpus(const SecurityLattice& lat, CorpusParams params);

  /// Calls fn on every term of depth <= term_depth, deterministically
  /// ordered; returns the number of terms visited.
  uint64_t for_each(const std::function<void(const TermPtr&)>& fn) const;
  uint64_t size() const;

  const CorpusParams& params() const { return params_; }
  const SecurityLattice& lattice() const { return *lat_; }

 private:
  const SecurityLattice* lat_;
  CorpusParams params_;
};

// Label positions of a term (literal labels, lambda labels and every label
// inside annotation types), in preorder. Relaxing one yields the term with
// that position replaced by `?` — a single precision step.
int count_label_positions(const Term& t);
TermPtr relax_label_at(const TermPtr& t, int index);

/// Seeded random term of exactly the requested depth (approximately; falls
/// back to atoms when productions run out of room).
TermPtr random_term(std::mt19937_64& rng, const SecurityLattice& lat,
                    const CorpusParams& params, int depth);

}  // namespace gsec

#endif
