#include "gsec/enumerate.hpp"

#include <map>

namespace gsec {

std::vector<SurfaceLabel> label_alphabet(const SecurityLattice& lat, bool gradual) {
  std::vector<SurfaceLabel> out;
  for (uint32_t i = 0; i < lat.size(); ++i) {
    out.push_back(SurfaceLabel::named(std::string(lat.name_of(i))));
  }
  if (gradual) out.push_back(SurfaceLabel::unknown());
  return out;
}

std::vector<SurfaceTypePtr> enumerate_types(const std::vector<SurfaceLabel>& alphabet,
                                            int max_depth) {
  std::vector<SurfaceTypePtr> cumulative;
  size_t prev_size = 0;
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<SurfaceTypePtr> layer;
    if (d == 1) {
      for (const SurfaceLabel& l : alphabet) layer.push_back(SurfaceType::boolean(l));
    } else {
      size_t before = prev_size;
      for (size_t i = 0; i < cumulative.size(); ++i) {
        for (size_t j = 0; j < cumulative.size(); ++j) {
          if (i < before && j < before) continue;  // both shallower: emitted earlier
          for (const SurfaceLabel& l : alphabet) {
            layer.push_back(SurfaceType::function(cumulative[i], cumulative[j], l));
          }
        }
      }
    }
    prev_size = cumulative.size();
    cumulative.insert(cumulative.end(), layer.begin(), layer.end());
  }
  return cumulative;
}

namespace {

const char* kBinderNames[] = {"x", "y", "z", "w", "v", "u"};

std::string next_binder(const std::vector<std::string>& scope) {
  for (const char* n : kBinderNames) {
    bool used = false;
    for (const auto& s : scope) {
      if (s == n) used = true;
    }
    if (!used) return n;
  }
  return "x" + std::to_string(scope.size());
}

struct Entry {
  TermPtr term;
  int depth;
};

constexpr BoolOp kOps[] = {BoolOp::And, BoolOp::Or, BoolOp::Implies};

// Pools of every term up to a depth, per scope; only layers below the
// streaming depth are materialized.
class Generator {
 public:
  Generator(const SecurityLattice& lat, const CorpusParams& p)
      : params_(p),
        alphabet_(label_alphabet(lat, p.gradual)),
        types_(enumerate_types(alphabet_, p.type_depth)) {}

  uint64_t stream(const std::function<void(const TermPtr&)>& fn) {
    count_ = 0;
    emit_ = fn;
    int shallow = params_.term_depth >= 2 ? params_.term_depth - 1 : params_.term_depth;
    const std::vector<Entry>& pool = pool_upto(shallow, params_.scope);
    for (const Entry& e : pool) emit(e.term);
    if (params_.term_depth >= 2) {
      compose_layer(params_.term_depth, params_.scope,
                    [&](const TermPtr& t) { emit(t); });
    }
    return count_;
  }

 private:
  void emit(const TermPtr& t) {
    ++count_;
    if (emit_) emit_(t);
  }

  const std::vector<Entry>& pool_upto(int d, const std::vector<std::string>& scope) {
    auto key = std::make_pair(d, scope);
    auto it = pools_.find(key);
    if (it != pools_.end()) return it->second;

    std::vector<Entry> out;
    if (d >= 1) {
      for (bool value : {true, false}) {
        for (const SurfaceLabel& l : alphabet_) out.push_back({lit(value, l), 1});
      }
      for (const auto& name : scope) out.push_back({var(name), 1});
    }
    for (int layer = 2; layer <= d; ++layer) {
      compose_layer(layer, scope, [&](const TermPtr& t) { out.push_back({t, layer}); });
    }
    return pools_.emplace(std::move(key), std::move(out)).first->second;
  }

  // Every term of exactly the given depth, in production order.
  void compose_layer(int depth, const std::vector<std::string>& scope,
                     const std::function<void(const TermPtr&)>& out) {
    const int child_max = depth - 1;
    // Copy: recursive pool_upto calls below may invalidate map references.
    const std::vector<Entry> pool = pool_upto(child_max, scope);

    {
      std::string binder = next_binder(scope);
      std::vector<std::string> inner = scope;
      inner.push_back(binder);
      const std::vector<Entry> bodies = pool_upto(child_max, inner);
      for (const SurfaceTypePtr& ty : types_) {
        for (const Entry& b : bodies) {
          if (b.depth != child_max) continue;  // lambda depth = 1 + body depth
          for (const SurfaceLabel& l : alphabet_) {
            out(lam(binder, ty, b.term, l));
          }
        }
      }
    }
    for (const Entry& f : pool) {
      for (const Entry& a : pool) {
        if (std::max(f.depth, a.depth) != child_max) continue;
        out(app(f.term, a.term));
      }
    }
    for (BoolOp op : kOps) {
      for (const Entry& l : pool) {
        for (const Entry& r : pool) {
          if (std::max(l.depth, r.depth) != child_max) continue;
          out(binop(op, l.term, r.term));
        }
      }
    }
    for (const Entry& c : pool) {
      for (const Entry& a : pool) {
        for (const Entry& b : pool) {
          if (std::max(c.depth, std::max(a.depth, b.depth)) != child_max) continue;
          out(ifte(c.term, a.term, b.term));
        }
      }
    }
    for (const Entry& b : pool) {
      if (b.depth != child_max) continue;
      for (const SurfaceTypePtr& ty : types_) {
        out(ascribe(b.term, ty));
      }
    }
  }

  CorpusParams params_;
  std::vector<SurfaceLabel> alphabet_;
  std::vector<SurfaceTypePtr> types_;
  std::map<std::pair<int, std::vector<std::string>>, std::vector<Entry>> pools_;
  std::function<void(const TermPtr&)> emit_;
  uint64_t count_ = 0;
};

}  // namespace

Corpus::Corpus(const SecurityLattice& lat, CorpusParams params)
    : lat_(&lat), params_(std::move(params)) {}

uint64_t Corpus::for_each(const std::function<void(const TermPtr&)>& fn) const {
  Generator g(*lat_, params_);
  return g.stream(fn);
}

uint64_t Corpus::size() const { return for_each(nullptr); }

// ---------------------------------------------------------------------------
// Label positions
// ---------------------------------------------------------------------------

namespace {

void type_positions(const SurfaceType& t, int& n) {
  if (t.is_function()) {
    type_positions(*t.dom, n);
    type_positions(*t.cod, n);
  }
  ++n;  // the type's own label
}

void term_positions(const Term& t, int& n) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          ++n;
        } else if constexpr (std::is_same_v<T, Var>) {
        } else if constexpr (std::is_same_v<T, Lam>) {
          type_positions(*x.annot, n);
          ++n;  // the lambda's own label
          term_positions(*x.body, n);
        } else if constexpr (std::is_same_v<T, App>) {
          term_positions(*x.fn, n);
          term_positions(*x.arg, n);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          term_positions(*x.lhs, n);
          term_positions(*x.rhs, n);
        } else if constexpr (std::is_same_v<T, If>) {
          term_positions(*x.cond, n);
          term_positions(*x.then_branch, n);
          term_positions(*x.else_branch, n);
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          term_positions(*x.body, n);
          type_positions(*x.type, n);
        }
      },
      t.node);
}

SurfaceLabel maybe_relax(const SurfaceLabel& l, int& k) {
  if (k-- == 0) return SurfaceLabel::unknown();
  return l;
}

SurfaceTypePtr relax_type(const SurfaceTypePtr& t, int& k) {
  if (!t->is_function()) return SurfaceType::boolean(maybe_relax(t->label, k));
  SurfaceTypePtr d = relax_type(t->dom, k);
  SurfaceTypePtr c = relax_type(t->cod, k);
  return SurfaceType::function(d, c, maybe_relax(t->label, k));
}

TermPtr relax_term(const TermPtr& t, int& k) {
  return std::visit(
      [&](const auto& x) -> TermPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          return lit(x.value, maybe_relax(x.label, k), t->span);
        } else if constexpr (std::is_same_v<T, Var>) {
          return t;
        } else if constexpr (std::is_same_v<T, Lam>) {
          SurfaceTypePtr annot = relax_type(x.annot, k);
          SurfaceLabel l = maybe_relax(x.label, k);
          TermPtr body = relax_term(x.body, k);
          return lam(x.param, annot, body, l, t->span);
        } else if constexpr (std::is_same_v<T, App>) {
          TermPtr f = relax_term(x.fn, k);
          TermPtr a = relax_term(x.arg, k);
          return app(f, a, t->span);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          TermPtr l = relax_term(x.lhs, k);
          TermPtr r = relax_term(x.rhs, k);
          return binop(x.op, l, r, t->span);
        } else if constexpr (std::is_same_v<T, If>) {
          TermPtr c = relax_term(x.cond, k);
          TermPtr a = relax_term(x.then_branch, k);
          TermPtr b = relax_term(x.else_branch, k);
          return ifte(c, a, b, t->span);
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          TermPtr b = relax_term(x.body, k);
          SurfaceTypePtr ty = relax_type(x.type, k);
          return ascribe(b, ty, t->span);
        }
      },
      t->node);
}

}  // namespace

int count_label_positions(const Term& t) {
  int n = 0;
  term_positions(t, n);
  return n;
}

TermPtr relax_label_at(const TermPtr& t, int index) {
  int k = index;
  return relax_term(t, k);
}

// ---------------------------------------------------------------------------
// Random mode
// ---------------------------------------------------------------------------

TermPtr random_term(std::mt19937_64& rng, const SecurityLattice& lat,
                    const CorpusParams& params, int depth) {
  std::vector<SurfaceLabel> alphabet = label_alphabet(lat, params.gradual);
  std::vector<SurfaceTypePtr> types = enumerate_types(alphabet, params.type_depth);
  auto pick_label = [&]() { return alphabet[rng() % alphabet.size()]; };
  auto pick_type = [&]() { return types[rng() % types.size()]; };

  std::function<TermPtr(int, std::vector<std::string>&)> go =
      [&](int d, std::vector<std::string>& scope) -> TermPtr {
    if (d <= 1) {
      size_t n = 2 * alphabet.size() + scope.size();
      size_t k = rng() % n;
      if (k < 2 * alphabet.size()) {
        return lit(k % 2 == 0, alphabet[k / 2]);
      }
      return var(scope[k - 2 * alphabet.size()]);
    }
    auto sub = [&](std::vector<std::string>& sc) {
      return go(static_cast<int>(rng() % (d - 1)) + 1, sc);
    };
    switch (rng() % 6) {
      case 0: {
        std::string binder = next_binder(scope);
        scope.push_back(binder);
        TermPtr body = go(d - 1, scope);
        scope.pop_back();
        return lam(binder, pick_type(), body, pick_label());
      }
      case 1:
        return app(go(d - 1, scope), sub(scope));
      case 2:
        return binop(kOps[rng() % 3], go(d - 1, scope), sub(scope));
      case 3:
        return ifte(go(d - 1, scope), sub(scope), sub(scope));
      case 4:
        return ascribe(go(d - 1, scope), pick_type());
      default:
        return go(d - 1, scope);
    }
  };
  std::vector<std::string> scope = params.scope;
  return go(depth, scope);
}

}  // namespace gsec
