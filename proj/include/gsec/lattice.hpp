#ifndef GSEC_LATTICE_HPP
#define GSEC_LATTICE_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsec {

class SecurityLattice;

/// One element of a loaded security lattice.
struct Label {
  const SecurityLattice* lattice = nullptr;
  uint32_t index = 0;

  std::string_view name() const;
  friend bool operator==(const Label&, const Label&) = default;
};

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite bounded lattice of security labels. The order relation is the
/// reflexive-transitive closure of the declared edges; join/meet tables are
/// precomputed at load time. Immutable after construction.
class SecurityLattice {
 public:
  static constexpr size_t kMaxElements = 64;

  // Throws LatticeError on: malformed config, order cycles, missing unique
  // join/meet for some pair, or missing top/bottom.
  static std::shared_ptr<const SecurityLattice> from_json(const std::string& text);
  static std::shared_ptr<const SecurityLattice> from_file(const std::string& path);

  // Built-ins: "two-point" (L below H) and "diamond" (Bot, M1, M2, Top).
  static std::shared_ptr<const SecurityLattice> builtin(std::string_view name);
  static std::shared_ptr<const SecurityLattice> two_point();
  static std::shared_ptr<const SecurityLattice> diamond();

  static std::shared_ptr<const SecurityLattice> make(
      std::vector<std::string> elements,
      const std::vector<std::pair<std::string, std::string>>& order);

  size_t size() const { return names_.size(); }
  std::string_view name_of(uint32_t index) const { return names_[index]; }
  Label label(std::string_view name) const;  // throws LatticeError if absent
  bool has(std::string_view name) const;
  Label at(uint32_t index) const { return Label{this, index}; }
  Label bottom() const { return at(bottom_); }
  Label top() const { return at(top_); }
  std::vector<Label> all() const;

  bool leq_index(uint32_t a, uint32_t b) const { return (up_[a] >> b) & 1u; }
  uint32_t join_index(uint32_t a, uint32_t b) const { return join_[a * size() + b]; }
  uint32_t meet_index(uint32_t a, uint32_t b) const { return meet_[a * size() + b]; }

  SecurityLattice(const SecurityLattice&) = delete;
  SecurityLattice& operator=(const SecurityLattice&) = delete;

 private:
  SecurityLattice() = default;

  std::vector<std::string> names_;
  std::vector<uint64_t> up_;  // up_[a] bit b set iff a is below-or-equal b
  std::vector<uint32_t> join_;
  std::vector<uint32_t> meet_;
  uint32_t bottom_ = 0;
  uint32_t top_ = 0;
};

// Label algebra. Mixing labels from different lattices is a usage error and
// throws std::invalid_argument.
bool leq(Label a, Label b);
Label join(Label a, Label b);
Label meet(Label a, Label b);

inline bool is_top(Label l) { return l == l.lattice->top(); }
inline bool is_bottom(Label l) { return l == l.lattice->bottom(); }

std::string to_string(Label l);

}  // namespace gsec

#endif
