#include "gsec/lattice.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace gsec {

std::string_view Label::name() const { return lattice->name_of(index); }

std::string to_string(Label l) { return std::string(l.name()); }

static void require_same_lattice(Label a, Label b) {
  if (a.lattice != b.lattice) {
    throw std::invalid_argument("labels belong to different lattices");
  }
}

bool leq(Label a, Label b) {
  require_same_lattice(a, b);
  return a.lattice->leq_index(a.index, b.index);
}

Label join(Label a, Label b) {
  require_same_lattice(a, b);
  return a.lattice->at(a.lattice->join_index(a.index, b.index));
}

Label meet(Label a, Label b) {
  require_same_lattice(a, b);
  return a.lattice->at(a.lattice->meet_index(a.index, b.index));
}

bool SecurityLattice::has(std::string_view name) const {
  for (const auto& n : names_) {
    if (n == name) return true;
  }
  return false;
}

Label SecurityLattice::label(std::string_view name) const {
  for (uint32_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return at(i);
  }
  throw LatticeError("unknown label '" + std::string(name) + "'");
}

std::vector<Label> SecurityLattice::all() const {
  std::vector<Label> out;
  out.reserve(size());
  for (uint32_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

std::shared_ptr<const SecurityLattice> SecurityLattice::make(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& order) {
  if (elements.empty()) throw LatticeError("lattice needs at least one element");
  if (elements.size() > kMaxElements) throw LatticeError("too many lattice elements");

  std::unordered_map<std::string, uint32_t> index;
  for (uint32_t i = 0; i < elements.size(); ++i) {
    if (index.count(elements[i])) {
      throw LatticeError("duplicate element '" + elements[i] + "'");
    }
    index[elements[i]] = i;
  }

  auto lat = std::shared_ptr<SecurityLattice>(new SecurityLattice());
  const size_t n = elements.size();
  lat->names_ = std::move(elements);
  lat->up_.assign(n, 0);
  for (uint32_t i = 0; i < n; ++i) lat->up_[i] |= uint64_t{1} << i;
  for (const auto& [lo, hi] : order) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end()) throw LatticeError("order mentions unknown element '" + lo + "'");
    if (b == index.end()) throw LatticeError("order mentions unknown element '" + hi + "'");
    lat->up_[a->second] |= uint64_t{1} << b->second;
  }

  // Reflexive-transitive closure.
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t a = 0; a < n; ++a) {
      uint64_t acc = lat->up_[a];
      uint64_t bits = acc;
      while (bits) {
        size_t b = static_cast<size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        acc |= lat->up_[b];
      }
      if (acc != lat->up_[a]) {
        lat->up_[a] = acc;
        changed = true;
      }
    }
  }

  // Antisymmetry: a cycle collapses two distinct elements onto each other.
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      if (lat->leq_index(a, b) && lat->leq_index(b, a)) {
        throw LatticeError("order cycle between '" + lat->names_[a] + "' and '" +
                           lat->names_[b] + "'");
      }
    }
  }

  // Unique least upper bound / greatest lower bound for every pair.
  lat->join_.assign(n * n, 0);
  lat->meet_.assign(n * n, 0);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      int lub = -1;
      for (size_t c = 0; c < n; ++c) {
        if (!lat->leq_index(a, c) || !lat->leq_index(b, c)) continue;
        bool least = true;
        for (size_t d = 0; d < n; ++d) {
          if (lat->leq_index(a, d) && lat->leq_index(b, d) && !lat->leq_index(c, d)) {
            least = false;
            break;
          }
        }
        if (least) {
          lub = static_cast<int>(c);
          break;
        }
      }
      if (lub < 0) {
        throw LatticeError("no unique join for '" + lat->names_[a] + "' and '" +
                           lat->names_[b] + "'");
      }
      lat->join_[a * n + b] = static_cast<uint32_t>(lub);

      int glb = -1;
      for (size_t c = 0; c < n; ++c) {
        if (!lat->leq_index(c, a) || !lat->leq_index(c, b)) continue;
        bool greatest = true;
        for (size_t d = 0; d < n; ++d) {
          if (lat->leq_index(d, a) && lat->leq_index(d, b) && !lat->leq_index(d, c)) {
            greatest = false;
            break;
          }
        }
        if (greatest) {
          glb = static_cast<int>(c);
          break;
        }
      }
      if (glb < 0) {
        throw LatticeError("no unique meet for '" + lat->names_[a] + "' and '" +
                           lat->names_[b] + "'");
      }
      lat->meet_[a * n + b] = static_cast<uint32_t>(glb);
    }
  }

  int bot = -1, top = -1;
  for (size_t a = 0; a < n; ++a) {
    bool below_all = true, above_all = true;
    for (size_t b = 0; b < n; ++b) {
      below_all = below_all && lat->leq_index(a, b);
      above_all = above_all && lat->leq_index(b, a);
    }
    if (below_all) bot = static_cast<int>(a);
    if (above_all) top = static_cast<int>(a);
  }
  if (bot < 0) throw LatticeError("lattice has no bottom element");
  if (top < 0) throw LatticeError("lattice has no top element");
  lat->bottom_ = static_cast<uint32_t>(bot);
  lat->top_ = static_cast<uint32_t>(top);
  return lat;
}

std::shared_ptr<const SecurityLattice> SecurityLattice::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw LatticeError(std::string("bad lattice config: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array()) {
    throw LatticeError("lattice config needs an 'elements' array");
  }
  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw LatticeError("lattice elements must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> order;
  if (j.contains("order")) {
    if (!j["order"].is_array()) throw LatticeError("'order' must be an array of pairs");
    for (const auto& e : j["order"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw LatticeError("'order' entries must be 2-element string arrays");
      }
      order.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return make(std::move(elements), order);
}

std::shared_ptr<const SecurityLattice> SecurityLattice::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LatticeError("cannot open lattice config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::shared_ptr<const SecurityLattice> SecurityLattice::two_point() {
  static const std::shared_ptr<const SecurityLattice> lat =
      make({"L", "H"}, {{"L", "H"}});
  return lat;
}

std::shared_ptr<const SecurityLattice> SecurityLattice::diamond() {
  static const std::shared_ptr<const SecurityLattice> lat =
      make({"Bot", "M1", "M2", "Top"},
           {{"Bot", "M1"}, {"Bot", "M2"}, {"M1", "Top"}, {"M2", "Top"}});
  return lat;
}

std::shared_ptr<const SecurityLattice> SecurityLattice::builtin(std::string_view name) {
  if (name == "two-point") return two_point();
  if (name == "diamond") return diamond();
  throw LatticeError("unknown built-in lattice '" + std::string(name) + "'");
}

}  // namespace gsec
