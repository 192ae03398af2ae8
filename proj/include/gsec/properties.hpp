#ifndef GSEC_PROPERTIES_HPP
#define GSEC_PROPERTIES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsec/enumerate.hpp"

namespace gsec {

struct PropertyReport {
  std::string name;
  uint64_t instances = 0;
  uint64_t cex_count = 0;
  std::vector<std::string> counterexamples;  // first few, printable and re-runnable
  double seconds = 0;

  static constexpr size_t kMaxKept = 10;
  bool pass() const { return cex_count == 0; }
  void add_cex(std::string desc);
  std::string summary_line() const;  // "PROP <name> PASS|FAIL n=<count> cex=<count>"
};

struct CheckOptions {
  std::shared_ptr<const SecurityLattice> lattice;  // term-corpus lattice
  std::vector<std::shared_ptr<const SecurityLattice>> algebra_lattices;
  int term_depth = 3;
  int type_depth = 2;
  std::optional<uint64_t> seed;  // extends term suites with random deep terms
  int random_samples = 300;
  int random_depth = 5;
  bool progress = false;  // print a note when a suite starts

  static CheckOptions defaults();
};

// Every suite reports zero counterexamples on the default options.
PropertyReport check_conservative_extension(const CheckOptions& opts);
PropertyReport check_static_guarantee(const CheckOptions& opts);
PropertyReport check_bigstep_smallstep(const CheckOptions& opts);
PropertyReport check_galois(const CheckOptions& opts);
PropertyReport check_interior_oracle(const CheckOptions& opts);
PropertyReport check_transitivity(const CheckOptions& opts);
PropertyReport check_preservation_progress(const CheckOptions& opts);
PropertyReport check_noninterference(const CheckOptions& opts);
PropertyReport check_subtyping_laws(const CheckOptions& opts);

const std::vector<std::string>& suite_names();
std::vector<PropertyReport> run_suites(const std::vector<std::string>& names,
                                       const CheckOptions& opts);

}  // namespace gsec

#endif
