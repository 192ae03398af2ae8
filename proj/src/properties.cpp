#include "gsec/properties.hpp"

#include <chrono>
#include <cstdio>
#include <map>

#include "gsec/intrinsic.hpp"
#include "gsec/runtime.hpp"
#include "gsec/static_eval.hpp"

namespace gsec {

void PropertyReport::add_cex(std::string desc) {
  ++cex_count;
  if (counterexamples.size() < kMaxKept) counterexamples.push_back(std::move(desc));
}

std::string PropertyReport::summary_line() const {
  return "PROP " + name + (pass() ? " PASS" : " FAIL") + " n=" + std::to_string(instances) +
         " cex=" + std::to_string(cex_count);
}

CheckOptions CheckOptions::defaults() {
  CheckOptions o;
  o.lattice = SecurityLattice::two_point();
  o.algebra_lattices = {SecurityLattice::two_point(), SecurityLattice::diamond()};
  return o;
}

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void note(const CheckOptions& opts, const std::string& msg) {
  if (opts.progress) std::fprintf(stderr, "[props] %s\n", msg.c_str());
}

int term_depth_of(const Term& t) {
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit> || std::is_same_v<T, Var>) {
          return 1;
        } else if constexpr (std::is_same_v<T, Lam>) {
          return 1 + term_depth_of(*x.body);
        } else if constexpr (std::is_same_v<T, App>) {
          return 1 + std::max(term_depth_of(*x.fn), term_depth_of(*x.arg));
        } else if constexpr (std::is_same_v<T, BinOp>) {
          return 1 + std::max(term_depth_of(*x.lhs), term_depth_of(*x.rhs));
        } else if constexpr (std::is_same_v<T, If>) {
          return 1 + std::max(term_depth_of(*x.cond),
                              std::max(term_depth_of(*x.then_branch),
                                       term_depth_of(*x.else_branch)));
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          return 1 + term_depth_of(*x.body);
        }
      },
      t.node);
}

// ---------------------------------------------------------------------------
// Typed child pools: every term up to depth D-1, checked by both systems.
// Depth-D candidates are composed from them with the checkers' own per-node
// rule functions; every Kth composite is re-checked from the full tree.
// ---------------------------------------------------------------------------

struct PoolEntry {
  TermPtr term;
  int depth = 1;
  std::optional<StaticType> st;
  std::optional<GradualType> gt;
};

struct Pool {
  std::vector<PoolEntry> e;
  std::vector<int> typed;       // gradual-typed entries
  std::vector<int> bool_typed;  // gradual-typed at a boolean type
};

Pool build_pool(const SecurityLattice& lat, const CorpusParams& params,
                const StaticEnv& senv, const GradualEnv& genv) {
  Pool pool;
  Corpus corpus(lat, params);
  corpus.for_each([&](const TermPtr& t) {
    PoolEntry pe;
    pe.term = t;
    pe.depth = term_depth_of(*t);
    pe.st = typecheck_static(lat, senv, *t).value_opt();
    pe.gt = typecheck_gradual(lat, genv, *t).value_opt();
    if (pe.gt) {
      pool.typed.push_back(static_cast<int>(pool.e.size()));
      if (!pe.gt->is_function()) pool.bool_typed.push_back(static_cast<int>(pool.e.size()));
    }
    pool.e.push_back(std::move(pe));
  });
  return pool;
}

constexpr BoolOp kOps[] = {BoolOp::And, BoolOp::Or, BoolOp::Implies};
constexpr uint64_t kSampleMask = (1u << 16) - 1;  // full-tree re-check cadence

// Binder-type-indexed typing of the open pool used for lambda composition.
struct LamTyping {
  std::vector<SurfaceTypePtr> annots;
  std::vector<std::optional<StaticType>> annot_st;
  std::vector<std::optional<GradualType>> annot_gt;
  // [annot][body]: body results under the binder assumption
  std::vector<std::vector<std::optional<StaticType>>> body_st;
  std::vector<std::vector<std::optional<GradualType>>> body_gt;
};

LamTyping build_lam_typing(const SecurityLattice& lat, const Pool& inner,
                           const std::vector<SurfaceTypePtr>& annots,
                           const std::string& binder, const StaticEnv& senv,
                           const GradualEnv& genv) {
  LamTyping lt;
  lt.annots = annots;
  for (const SurfaceTypePtr& ty : annots) {
    lt.annot_st.push_back(resolve_static_type(lat, *ty, {}).value_opt());
    lt.annot_gt.push_back(resolve_gradual_type(lat, *ty, {}).value_opt());
    std::vector<std::optional<StaticType>> st_row(inner.e.size());
    std::vector<std::optional<GradualType>> gt_row(inner.e.size());
    for (size_t j = 0; j < inner.e.size(); ++j) {
      if (lt.annot_st.back()) {
        st_row[j] = typecheck_static(lat, senv.extended(binder, *lt.annot_st.back()),
                                     *inner.e[j].term)
                        .value_opt();
      }
      if (lt.annot_gt.back()) {
        gt_row[j] = typecheck_gradual(lat, genv.extended(binder, *lt.annot_gt.back()),
                                      *inner.e[j].term)
                        .value_opt();
      }
    }
    lt.body_st.push_back(std::move(st_row));
    lt.body_gt.push_back(std::move(gt_row));
  }
  return lt;
}

// Iterates every composite of exact depth D over the pools, computing both
// checkers' results compositionally. `alphabet`/`annots` are the label and
// type alphabets of the corpus.
class Composer {
 public:
  Composer(const SecurityLattice& lat, int target_depth, const Pool& pool,
           const Pool& inner, const LamTyping& lam_t, const std::string& binder,
           const std::vector<SurfaceLabel>& alphabet,
           const std::vector<SurfaceTypePtr>& annots)
      : d_(target_depth),
        pool_(pool),
        inner_(inner),
        lam_(lam_t),
        binder_(binder),
        alphabet_(alphabet),
        annots_(annots) {
    for (const SurfaceLabel& l : alphabet_) {
      lbl_st_.push_back(resolve_label(lat, l, {}).value_opt());
      lbl_gt_.push_back(resolve_gradual_label(lat, l, {}).value_opt());
    }
    for (const SurfaceTypePtr& ty : annots_) {
      asc_st_.push_back(resolve_static_type(lat, *ty, {}).value_opt());
      asc_gt_.push_back(resolve_gradual_type(lat, *ty, {}).value_opt());
    }
  }

  template <class Fn>
  void lams(Fn&& fn) {
    const int want = d_ - 1;
    for (size_t ti = 0; ti < lam_.annots.size(); ++ti) {
      for (size_t j = 0; j < inner_.e.size(); ++j) {
        if (inner_.e[j].depth != want) continue;
        for (size_t li = 0; li < alphabet_.size(); ++li) {
          std::optional<StaticType> st;
          if (lam_.annot_st[ti] && lbl_st_[li] && lam_.body_st[ti][j]) {
            st = StaticType::function(*lam_.annot_st[ti], *lam_.body_st[ti][j],
                                      *lbl_st_[li]);
          }
          std::optional<GradualType> gt;
          if (lam_.annot_gt[ti] && lam_.body_gt[ti][j]) {
            gt = GradualType::function(*lam_.annot_gt[ti], *lam_.body_gt[ti][j],
                                       *lbl_gt_[li]);
          }
          fn(st, gt, [&]() {
            return lam(binder_, lam_.annots[ti], inner_.e[j].term, alphabet_[li]);
          });
        }
      }
    }
  }

  template <class Fn>
  void apps(Fn&& fn) {
    const int want = d_ - 1;
    for (const PoolEntry& f : pool_.e) {
      for (const PoolEntry& a : pool_.e) {
        if (std::max(f.depth, a.depth) != want) continue;
        std::optional<StaticType> st;
        if (f.st && a.st) st = rules::app_result(*f.st, *a.st);
        std::optional<GradualType> gt;
        if (f.gt && a.gt) gt = rules::gapp_result(*f.gt, *a.gt);
        fn(st, gt, [&]() { return app(f.term, a.term); });
      }
    }
  }

  template <class Fn>
  void ops(Fn&& fn) {
    const int want = d_ - 1;
    for (BoolOp op : kOps) {
      for (const PoolEntry& l : pool_.e) {
        for (const PoolEntry& r : pool_.e) {
          if (std::max(l.depth, r.depth) != want) continue;
          std::optional<StaticType> st;
          if (l.st && r.st) st = rules::op_result(*l.st, *r.st);
          std::optional<GradualType> gt;
          if (l.gt && r.gt) gt = rules::gop_result(*l.gt, *r.gt);
          fn(st, gt, [&]() { return binop(op, l.term, r.term); });
        }
      }
    }
  }

  template <class Fn>
  void ifs(Fn&& fn) {
    const int want = d_ - 1;
    for (const PoolEntry& c : pool_.e) {
      for (const PoolEntry& a : pool_.e) {
        for (const PoolEntry& b : pool_.e) {
          if (std::max(c.depth, std::max(a.depth, b.depth)) != want) continue;
          std::optional<StaticType> st;
          if (c.st && a.st && b.st) st = rules::if_result(*c.st, *a.st, *b.st);
          std::optional<GradualType> gt;
          if (c.gt && a.gt && b.gt) gt = rules::gif_result(*c.gt, *a.gt, *b.gt);
          fn(st, gt, [&]() { return ifte(c.term, a.term, b.term); });
        }
      }
    }
  }

  template <class Fn>
  void ascs(Fn&& fn) {
    const int want = d_ - 1;
    for (const PoolEntry& b : pool_.e) {
      if (b.depth != want) continue;
      for (size_t ti = 0; ti < annots_.size(); ++ti) {
        std::optional<StaticType> st;
        if (b.st && asc_st_[ti]) st = rules::asc_result(*b.st, *asc_st_[ti]);
        std::optional<GradualType> gt;
        if (b.gt && asc_gt_[ti]) gt = rules::gasc_result(*b.gt, *asc_gt_[ti]);
        fn(st, gt, [&]() { return ascribe(b.term, annots_[ti]); });
      }
    }
  }

  // All forms in corpus order.
  template <class Fn>
  void all(Fn&& fn) {
    lams(fn);
    apps(fn);
    ops(fn);
    ifs(fn);
    ascs(fn);
  }

 private:
  int d_;
  const Pool& pool_;
  const Pool& inner_;
  const LamTyping& lam_;
  std::string binder_;
  std::vector<SurfaceLabel> alphabet_;
  std::vector<SurfaceTypePtr> annots_;
  std::vector<std::optional<Label>> lbl_st_;
  std::vector<std::optional<GradualLabel>> lbl_gt_;
  std::vector<std::optional<StaticType>> asc_st_;
  std::vector<std::optional<GradualType>> asc_gt_;
};

// Everything the term-corpus suites share.
struct SweepSetup {
  const SecurityLattice& lat;
  CorpusParams params;
  StaticEnv senv;
  GradualEnv genv;
  Pool pool;
  Pool inner;
  std::string binder;
  std::vector<SurfaceLabel> alphabet;
  std::vector<SurfaceTypePtr> annots;
  LamTyping lam_typing;
};

std::string next_free_binder(const std::vector<std::string>& scope) {
  for (const char* n : {"x", "y", "z", "w"}) {
    bool used = false;
    for (const auto& s : scope) used = used || s == n;
    if (!used) return n;
  }
  return "b0";
}

SweepSetup make_setup(const SecurityLattice& lat, const CorpusParams& params,
                      const StaticEnv& senv, const GradualEnv& genv) {
  CorpusParams shallow = params;
  shallow.term_depth = std::max(1, params.term_depth - 1);
  CorpusParams inner_params = shallow;
  std::string binder = next_free_binder(params.scope);
  inner_params.scope.push_back(binder);

  SweepSetup s{lat,
               params,
               senv,
               genv,
               build_pool(lat, shallow, senv, genv),
               build_pool(lat, inner_params, senv, genv),
               binder,
               label_alphabet(lat, params.gradual),
               enumerate_types(label_alphabet(lat, params.gradual), params.type_depth),
               {}};
  s.lam_typing = build_lam_typing(lat, s.inner, s.annots, binder, senv, genv);
  return s;
}

bool conservative_agree(const SecurityLattice&, const std::optional<StaticType>& st,
                        const std::optional<GradualType>& gt) {
  if (st.has_value() != gt.has_value()) return false;
  if (!st) return true;
  return to_gradual(*st) == *gt;
}

std::string describe_types(const std::optional<StaticType>& st,
                           const std::optional<GradualType>& gt) {
  std::string s = "static=";
  s += st ? to_string(*st) : "reject";
  s += " gradual=";
  s += gt ? to_string(*gt) : "reject";
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Conservative extension
// ---------------------------------------------------------------------------

PropertyReport check_conservative_extension(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "conservative-extension";
  note(opts, "conservative-extension: exhaustive ?-free differential");
  const SecurityLattice& lat = *opts.lattice;
  CorpusParams params;
  params.term_depth = opts.term_depth;
  params.type_depth = opts.type_depth;
  params.gradual = false;
  SweepSetup s = make_setup(lat, params, {}, {});

  for (const PoolEntry& pe : s.pool.e) {
    ++r.instances;
    if (!conservative_agree(lat, pe.st, pe.gt)) {
      r.add_cex(print(*pe.term) + " : " + describe_types(pe.st, pe.gt));
    }
  }

  uint64_t sampled = 0;
  Composer comp(lat, params.term_depth, s.pool, s.inner, s.lam_typing, s.binder,
                s.alphabet, s.annots);
  auto visit = [&](const std::optional<StaticType>& st, const std::optional<GradualType>& gt,
                   auto&& build) {
    ++r.instances;
    if (!conservative_agree(lat, st, gt)) {
      r.add_cex(print(*build()) + " : " + describe_types(st, gt));
      return;
    }
    if ((r.instances & kSampleMask) == 0) {
      ++sampled;
      TermPtr t = build();
      std::optional<StaticType> fst = typecheck_static(lat, {}, *t).value_opt();
      std::optional<GradualType> fgt = typecheck_gradual(lat, {}, *t).value_opt();
      bool same = fst.has_value() == st.has_value() && fgt.has_value() == gt.has_value() &&
                  (!fst || *fst == *st) && (!fgt || *fgt == *gt);
      if (!same) {
        r.add_cex("composed/full checker mismatch on " + print(*t));
      }
    }
  };
  if (params.term_depth >= 2) comp.all(visit);

  if (opts.seed) {
    std::mt19937_64 rng(*opts.seed);
    for (int i = 0; i < opts.random_samples; ++i) {
      TermPtr t = random_term(rng, lat, params, opts.random_depth);
      ++r.instances;
      std::optional<StaticType> st = typecheck_static(lat, {}, *t).value_opt();
      std::optional<GradualType> gt = typecheck_gradual(lat, {}, *t).value_opt();
      if (!conservative_agree(lat, st, gt)) {
        r.add_cex(print(*t) + " : " + describe_types(st, gt));
      }
    }
  }

  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Static gradual guarantee
// ---------------------------------------------------------------------------

namespace {

void guarantee_one(const SecurityLattice& lat, const GradualEnv& genv, const TermPtr& t,
                   const GradualType& before, PropertyReport& r) {
  int positions = count_label_positions(*t);
  for (int k = 0; k < positions; ++k) {
    ++r.instances;
    TermPtr relaxed = relax_label_at(t, k);
    CheckResult<GradualType> after = typecheck_gradual(lat, genv, *relaxed);
    if (!after.ok()) {
      r.add_cex("relaxation rejected: " + print(*relaxed));
    } else if (!precision_leq(before, after.value())) {
      r.add_cex("precision decreased: " + print(*relaxed) + " : " +
                to_string(after.value()) + " vs " + to_string(before));
    }
  }
}

}  // namespace

PropertyReport check_static_guarantee(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "static-guarantee";
  note(opts, "static-guarantee: single-step relaxations of every typed term");
  const SecurityLattice& lat = *opts.lattice;
  CorpusParams params;
  params.term_depth = opts.term_depth;
  params.type_depth = opts.type_depth;
  params.gradual = false;
  SweepSetup s = make_setup(lat, params, {}, {});

  for (const PoolEntry& pe : s.pool.e) {
    if (pe.gt) guarantee_one(lat, {}, pe.term, *pe.gt, r);
  }
  Composer comp(lat, params.term_depth, s.pool, s.inner, s.lam_typing, s.binder,
                s.alphabet, s.annots);
  if (params.term_depth >= 2) {
    comp.all([&](const std::optional<StaticType>&, const std::optional<GradualType>& gt,
                 auto&& build) {
      if (gt) guarantee_one(lat, {}, build(), *gt, r);
    });
  }

  // Terms already containing `?` (shallower sweep keeps this quick).
  CorpusParams gparams = params;
  gparams.gradual = true;
  gparams.term_depth = std::min(params.term_depth, 2);
  Corpus gcorpus(lat, gparams);
  gcorpus.for_each([&](const TermPtr& t) {
    std::optional<GradualType> gt = typecheck_gradual(lat, {}, *t).value_opt();
    if (gt) guarantee_one(lat, {}, t, *gt, r);
  });

  if (opts.seed) {
    std::mt19937_64 rng(*opts.seed);
    CorpusParams rparams = params;
    rparams.gradual = true;
    for (int i = 0; i < opts.random_samples; ++i) {
      TermPtr t = random_term(rng, lat, rparams, opts.random_depth);
      std::optional<GradualType> gt = typecheck_gradual(lat, {}, *t).value_opt();
      if (gt) guarantee_one(lat, {}, t, *gt, r);
    }
  }

  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Big-step / small-step agreement (plus per-step preservation and progress
// for the static evaluator)
// ---------------------------------------------------------------------------

namespace {

void bsss_one(const SecurityLattice& lat, const TermPtr& t, const StaticType& ty,
              PropertyReport& r) {
  ++r.instances;
  CheckResult<STermPtr> low = lower(lat, *t);
  if (!low.ok()) {
    r.add_cex("lowering failed on typed term " + print(*t));
    return;
  }
  // Small-step with per-step type observation.
  STermPtr cur = low.value();
  std::optional<StaticType> prev = ty;
  for (int steps = 0;; ++steps) {
    if (steps > 100000) {
      r.add_cex("static evaluation did not finish: " + print(*t));
      return;
    }
    std::optional<STermPtr> next;
    try {
      next = step_static(cur);
    } catch (const std::logic_error& e) {
      r.add_cex(std::string("stuck: ") + e.what() + " in " + print(*t));
      return;
    }
    if (!next) break;
    cur = *next;
    std::optional<StaticType> now = typecheck_core(lat, {}, *cur);
    if (!now || !is_subtype(*now, *prev)) {
      r.add_cex("preservation failed after a step of " + print(*t));
      return;
    }
    prev = now;
  }
  STermPtr big = eval_big(low.value());
  if (!equal(*cur, *big)) {
    r.add_cex("big/small disagree on " + print(*t) + ": small=" + print(*cur) +
              " big=" + print(*big));
  }
}

}  // namespace

PropertyReport check_bigstep_smallstep(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "bigstep-smallstep";
  note(opts, "bigstep-smallstep: differential evaluation of the ?-free corpus");
  const SecurityLattice& lat = *opts.lattice;
  CorpusParams params;
  params.term_depth = opts.term_depth;
  params.type_depth = opts.type_depth;
  params.gradual = false;
  SweepSetup s = make_setup(lat, params, {}, {});

  for (const PoolEntry& pe : s.pool.e) {
    if (pe.st) bsss_one(lat, pe.term, *pe.st, r);
  }
  Composer comp(lat, params.term_depth, s.pool, s.inner, s.lam_typing, s.binder,
                s.alphabet, s.annots);
  if (params.term_depth >= 2) {
    comp.all([&](const std::optional<StaticType>& st, const std::optional<GradualType>&,
                 auto&& build) {
      if (st) bsss_one(lat, build(), *st, r);
    });
  }

  if (opts.seed) {
    std::mt19937_64 rng(*opts.seed);
    for (int i = 0; i < opts.random_samples; ++i) {
      TermPtr t = random_term(rng, lat, params, opts.random_depth);
      std::optional<StaticType> st = typecheck_static(lat, {}, *t).value_opt();
      if (st) bsss_one(lat, t, *st, r);
    }
  }

  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Galois connection: soundness, optimality, alpha-gamma identity
// ---------------------------------------------------------------------------

namespace {

std::vector<GradualLabel> all_glabels(const SecurityLattice& lat) {
  std::vector<GradualLabel> out;
  for (Label l : lat.all()) out.push_back(l);
  out.push_back(GradualLabel::unknown());
  return out;
}

std::vector<GradualType> all_gtypes(const SecurityLattice& lat, int depth) {
  std::vector<GradualType> out;
  for (const SurfaceTypePtr& ty : enumerate_types(label_alphabet(lat, true), depth)) {
    out.push_back(resolve_gradual_type(lat, *ty, {}).value());
  }
  return out;
}

std::vector<StaticType> all_stypes(const SecurityLattice& lat, int depth) {
  std::vector<StaticType> out;
  for (const SurfaceTypePtr& ty : enumerate_types(label_alphabet(lat, false), depth)) {
    out.push_back(resolve_static_type(lat, *ty, {}).value());
  }
  return out;
}

void check_galois_one(const SecurityLattice& lat, int type_depth, PropertyReport& r) {
  const std::vector<GradualLabel> glabels = all_glabels(lat);
  const size_t n = lat.size();

  // Label level: every nonempty subset.
  for (uint64_t bits = 1; bits < (uint64_t{1} << n); ++bits) {
    LabelSet set{&lat, bits};
    ++r.instances;
    std::optional<GradualLabel> a = abstract_labels(lat, set);
    if (!a) {
      r.add_cex("abstraction undefined on a nonempty label set");
      continue;
    }
    if (!set.subset_of(concretize(lat, *a))) {
      r.add_cex("label abstraction not sound");
    }
    for (const GradualLabel& g : glabels) {
      if (set.subset_of(concretize(lat, g)) && !precision_leq(*a, g)) {
        r.add_cex("label abstraction not optimal vs " + to_string(g));
      }
    }
  }
  {
    ++r.instances;
    LabelSet empty{&lat, 0};
    if (abstract_labels(lat, empty)) r.add_cex("abstraction defined on the empty set");
  }
  for (const GradualLabel& g : glabels) {
    ++r.instances;
    std::optional<GradualLabel> round = abstract_labels(lat, concretize(lat, g));
    if (!round || !(*round == g)) {
      r.add_cex("alpha(gamma(" + to_string(g) + ")) is not the identity");
    }
  }

  // Type level, feasible only for small lattices.
  if (n <= 2) {
    std::vector<StaticType> stypes = all_stypes(lat, type_depth);
    std::vector<GradualType> gtypes = all_gtypes(lat, type_depth);
    for (uint64_t bits = 1; bits < (uint64_t{1} << stypes.size()); ++bits) {
      std::vector<StaticType> set;
      for (size_t i = 0; i < stypes.size(); ++i) {
        if ((bits >> i) & 1u) set.push_back(stypes[i]);
      }
      ++r.instances;
      std::optional<GradualType> a = abstract_types(lat, set);
      if (!is_valid_type_set(set)) {
        if (a) r.add_cex("abstraction defined on an invalid type set");
        continue;
      }
      if (!a) {
        r.add_cex("abstraction undefined on a valid type set");
        continue;
      }
      std::vector<StaticType> conc = concretize(lat, *a);
      for (const StaticType& t : set) {
        bool found = false;
        for (const StaticType& c : conc) found = found || c == t;
        if (!found) {
          r.add_cex("type abstraction not sound near " + to_string(t));
          break;
        }
      }
      for (const GradualType& g : gtypes) {
        std::vector<StaticType> gc = concretize(lat, g);
        bool subset = true;
        for (const StaticType& t : set) {
          bool found = false;
          for (const StaticType& c : gc) found = found || c == t;
          subset = subset && found;
        }
        if (subset && !precision_leq(*a, g)) {
          r.add_cex("type abstraction not optimal vs " + to_string(g));
        }
      }
    }
    for (const GradualType& g : gtypes) {
      ++r.instances;
      std::optional<GradualType> round = abstract_types(lat, concretize(lat, g));
      if (!round || !(*round == g)) {
        r.add_cex("alpha(gamma(" + to_string(g) + ")) is not the identity");
      }
    }
  }
}

}  // namespace

PropertyReport check_galois(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "galois";
  note(opts, "galois: soundness/optimality over all label and type sets");
  for (const auto& lat : opts.algebra_lattices) {
    check_galois_one(*lat, opts.type_depth, r);
  }
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Interior vs the brute-force abstraction of the filtered product
// ---------------------------------------------------------------------------

namespace {

std::optional<LabelEvidence> interior_label_oracle(const SecurityLattice& lat,
                                                   const GradualLabel& a,
                                                   const GradualLabel& b) {
  LabelSet lhs{&lat, 0}, rhs{&lat, 0};
  for (Label x : concretize(lat, a).labels()) {
    for (Label y : concretize(lat, b).labels()) {
      if (leq(x, y)) {
        lhs.insert(x);
        rhs.insert(y);
      }
    }
  }
  std::optional<GradualLabel> al = abstract_labels(lat, lhs);
  std::optional<GradualLabel> ar = abstract_labels(lat, rhs);
  if (!al || !ar) return std::nullopt;
  return LabelEvidence{*al, *ar};
}

std::optional<Evidence> interior_type_oracle(const SecurityLattice& lat,
                                             const GradualType& a, const GradualType& b) {
  std::vector<StaticType> lhs, rhs;
  for (const StaticType& x : concretize(lat, a)) {
    for (const StaticType& y : concretize(lat, b)) {
      if (is_subtype(x, y)) {
        lhs.push_back(x);
        rhs.push_back(y);
      }
    }
  }
  std::optional<GradualType> al = abstract_types(lat, lhs);
  std::optional<GradualType> ar = abstract_types(lat, rhs);
  if (!al || !ar) return std::nullopt;
  return Evidence{*al, *ar};
}

}  // namespace

PropertyReport check_interior_oracle(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "interior";
  note(opts, "interior: algorithmic rules vs brute-force abstraction");
  for (const auto& latp : opts.algebra_lattices) {
    const SecurityLattice& lat = *latp;
    std::vector<GradualLabel> glabels = all_glabels(lat);
    for (const GradualLabel& a : glabels) {
      for (const GradualLabel& b : glabels) {
        ++r.instances;
        std::optional<LabelEvidence> alg = interior(a, b);
        std::optional<LabelEvidence> ora = interior_label_oracle(lat, a, b);
        bool same = alg.has_value() == ora.has_value() && (!alg || *alg == *ora);
        if (!same) {
          r.add_cex("label interior of (" + to_string(a) + ", " + to_string(b) +
                    "): rules=" + (alg ? to_string(*alg) : "undefined") +
                    " oracle=" + (ora ? to_string(*ora) : "undefined"));
        }
      }
    }
    if (lat.size() <= 2) {
      std::vector<GradualType> gtypes = all_gtypes(lat, opts.type_depth);
      for (const GradualType& a : gtypes) {
        for (const GradualType& b : gtypes) {
          ++r.instances;
          std::optional<Evidence> alg = interior(a, b);
          std::optional<Evidence> ora = interior_type_oracle(lat, a, b);
          bool same = alg.has_value() == ora.has_value() && (!alg || *alg == *ora);
          if (!same) {
            r.add_cex("type interior of (" + to_string(a) + ", " + to_string(b) +
                      "): rules=" + (alg ? to_string(*alg) : "undefined") +
                      " oracle=" + (ora ? to_string(*ora) : "undefined"));
          }
        }
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Merge / consistent transitivity invariants
// ---------------------------------------------------------------------------

PropertyReport check_transitivity(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "transitivity";
  note(opts, "transitivity: merge and evidence-combination invariants");
  for (const auto& latp : opts.algebra_lattices) {
    const SecurityLattice& lat = *latp;
    std::vector<GradualLabel> glabels = all_glabels(lat);

    for (const GradualLabel& x : glabels) {
      for (const GradualLabel& y : glabels) {
        for (const GradualLabel& z : glabels) {
          ++r.instances;
          std::optional<LabelEvidence> m = merge(x, y, z);
          if (!m) continue;
          if (!precision_leq(m->lhs, x) || !precision_leq(m->rhs, z) ||
              !consistent_leq(m->lhs, m->rhs)) {
            r.add_cex("merge(" + to_string(x) + ", " + to_string(y) + ", " + to_string(z) +
                      ") = " + to_string(*m) + " breaks the precision invariants");
          }
        }
      }
    }

    auto ev = [](const GradualLabel& a, const GradualLabel& b) {
      return Evidence{GradualType::boolean(a), GradualType::boolean(b)};
    };
    for (const GradualLabel& a : glabels) {
      for (const GradualLabel& b : glabels) {
        for (const GradualLabel& c : glabels) {
          for (const GradualLabel& d : glabels) {
            ++r.instances;
            std::optional<Evidence> t = consistent_transitivity(ev(a, b), ev(c, d));
            if (!t) continue;
            if (!precision_leq(t->lhs, GradualType::boolean(a)) ||
                !precision_leq(t->rhs, GradualType::boolean(d)) ||
                !consistent_subtype(t->lhs, t->rhs)) {
              r.add_cex("combination <" + to_string(a) + "," + to_string(b) + "> o <" +
                        to_string(c) + "," + to_string(d) + "> breaks precision");
            }
          }
        }
      }
    }

    // Exact evidence is idempotent; top-to-bottom combination must be absent.
    for (Label l : lat.all()) {
      ++r.instances;
      GradualLabel g(l);
      std::optional<Evidence> t = consistent_transitivity(ev(g, g), ev(g, g));
      if (!t || !(*t == ev(g, g))) {
        r.add_cex("exact evidence on " + to_string(l) + " is not idempotent");
      }
    }
    if (lat.size() >= 2) {
      ++r.instances;
      GradualLabel top(lat.top()), bot(lat.bottom());
      if (consistent_transitivity(ev(top, top), ev(bot, bot))) {
        r.add_cex("top-to-bottom evidence combination unexpectedly defined");
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Preservation + progress over the gradual corpus, plus the static embedding
// ---------------------------------------------------------------------------

namespace {

// Elaborates and evaluates one closed typed term, re-checking formation after
// every step. Reports preservation, progress and termination failures.
void preservation_one(const SecurityLattice& lat, const GradualEnv& genv, const TermPtr& t,
                      const GradualType& expected, PropertyReport& r, NodeMemo& memo) {
  ++r.instances;
  CheckResult<ITermPtr> elab = elaborate(lat, genv, *t);
  if (!elab.ok()) {
    r.add_cex("elaboration failed on typed term " + print(*t) + ": " +
              elab.error().message);
    return;
  }
  ITermPtr cur = elab.value();
  if (!(cur->type == expected)) {
    r.add_cex("elaborated type differs from checker type on " + print(*t));
    return;
  }
  memo.clear();
  std::string why;
  if (!well_formed(cur, &why, &memo)) {
    r.add_cex("elaboration not well-formed on " + print(*t) + ": " + why);
    return;
  }
  for (int steps = 0;; ++steps) {
    if (steps > 10000) {
      r.add_cex("did not terminate within the step budget: " + print(*t));
      return;
    }
    StepResult sr;
    try {
      sr = step(cur);
    } catch (const std::logic_error& e) {
      r.add_cex(std::string("stuck: ") + e.what() + " in " + print(*t));
      return;
    }
    if (sr.kind == StepResult::Kind::Value) return;
    if (sr.kind == StepResult::Kind::Error) return;  // failed combination: allowed
    cur = sr.term;
    if (!(cur->type == expected)) {
      r.add_cex("type not preserved after a step of " + print(*t));
      return;
    }
    if (!well_formed(cur, &why, &memo)) {
      r.add_cex("ill-formed after a step of " + print(*t) + ": " + why);
      return;
    }
  }
}

// The ?-free sub-corpus must agree with the plain static evaluator.
void embedding_one(const SecurityLattice& lat, const TermPtr& t, PropertyReport& r) {
  ++r.instances;
  CheckResult<ITermPtr> elab = elaborate(lat, {}, *t);
  CheckResult<STermPtr> low = lower(lat, *t);
  if (!elab.ok() || !low.ok()) {
    r.add_cex("static program failed to elaborate or lower: " + print(*t));
    return;
  }
  EvalResult res = evaluate(elab.value());
  if (res.kind != EvalResult::Kind::Value) {
    r.add_cex("static program did not produce a value: " + print(*t));
    return;
  }
  STermPtr sval = eval_small(low.value());
  Label static_label = value_label(*sval);

  const ITerm& v = *res.value;
  const ITerm* simple = &v;
  if (const auto* asc = std::get_if<IAsc>(&v.node)) simple = asc->body.term.get();
  std::optional<bool> gb = bare_bool(*simple);
  const auto* sb = std::get_if<SBool>(&sval->node);
  if (gb.has_value() != (sb != nullptr)) {
    r.add_cex("result kind differs from the static evaluator on " + print(*t));
    return;
  }
  if (gb && sb && *gb != sb->value) {
    r.add_cex("bare value differs from the static evaluator on " + print(*t));
    return;
  }
  GradualLabel bare = simple->type.label();
  GradualLabel result = v.type.label();
  bool labels_ok = bare.is_known() && result.is_known() &&
                   leq(bare.known(), static_label) && leq(static_label, result.known());
  if (!labels_ok) {
    r.add_cex("label envelope violated on " + print(*t) + ": bare " + to_string(bare) +
              ", static " + to_string(static_label) + ", result " + to_string(result));
  }
}

}  // namespace

PropertyReport check_preservation_progress(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "preservation";
  note(opts, "preservation: evaluating every typed gradual term with per-step re-checks");
  const SecurityLattice& lat = *opts.lattice;
  CorpusParams params;
  params.term_depth = opts.term_depth;
  params.type_depth = opts.type_depth;
  params.gradual = true;
  SweepSetup s = make_setup(lat, params, {}, {});
  NodeMemo memo;

  for (const PoolEntry& pe : s.pool.e) {
    if (pe.gt) preservation_one(lat, {}, pe.term, *pe.gt, r, memo);
  }
  Composer comp(lat, params.term_depth, s.pool, s.inner, s.lam_typing, s.binder,
                s.alphabet, s.annots);
  if (params.term_depth >= 2) {
    comp.all([&](const std::optional<StaticType>&, const std::optional<GradualType>& gt,
                 auto&& build) {
      if (gt) preservation_one(lat, {}, build(), *gt, r, memo);
    });
  }

  // Static embedding over the ?-free corpus.
  note(opts, "preservation: static-embedding pass over the ?-free corpus");
  CorpusParams sparams = params;
  sparams.gradual = false;
  SweepSetup ss = make_setup(lat, sparams, {}, {});
  for (const PoolEntry& pe : ss.pool.e) {
    if (pe.st) embedding_one(lat, pe.term, r);
  }
  Composer scomp(lat, sparams.term_depth, ss.pool, ss.inner, ss.lam_typing, ss.binder,
                 ss.alphabet, ss.annots);
  if (sparams.term_depth >= 2) {
    scomp.all([&](const std::optional<StaticType>& st, const std::optional<GradualType>&,
                  auto&& build) {
      if (st) embedding_one(lat, build(), r);
    });
  }

  if (opts.seed) {
    std::mt19937_64 rng(*opts.seed);
    for (int i = 0; i < opts.random_samples; ++i) {
      TermPtr t = random_term(rng, lat, params, opts.random_depth);
      std::optional<GradualType> gt = typecheck_gradual(lat, {}, *t).value_opt();
      if (gt) preservation_one(lat, {}, t, *gt, r, memo);
    }
  }

  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Noninterference at desk scale
// ---------------------------------------------------------------------------

namespace {

// Values of the secret's type: the bare literals plus every validly-evidenced
// ascription of a literal.
std::vector<ITermPtr> secret_values(const SecurityLattice& lat, const GradualType& secret) {
  std::vector<ITermPtr> out;
  std::vector<GradualLabel> glabels = all_glabels(lat);
  for (bool b : {true, false}) {
    if (secret.label().is_known()) out.push_back(ibool(b, secret.label()));
    for (const GradualLabel& inner : glabels) {
      GradualType from = GradualType::boolean(inner);
      std::optional<Evidence> bound = interior(from, secret);
      if (!bound) continue;
      for (const GradualLabel& a : glabels) {
        for (const GradualLabel& bl : glabels) {
          Evidence ev{GradualType::boolean(a), GradualType::boolean(bl)};
          if (!precision_leq(ev.lhs, bound->lhs) || !precision_leq(ev.rhs, bound->rhs)) {
            continue;
          }
          if (!consistent_subtype(ev.lhs, ev.rhs)) continue;
          out.push_back(iasc(EvSlot{ev, ibool(b, inner), secret}));
        }
      }
    }
  }
  return out;
}

struct Observation {
  enum class Kind { Value, Error, Diverged } kind;
  bool bval = false;
};

Observation observe(const ITermPtr& closed) {
  EvalResult res = evaluate(closed);
  if (res.kind == EvalResult::Kind::Error) return {Observation::Kind::Error, false};
  if (res.kind != EvalResult::Kind::Value) return {Observation::Kind::Diverged, false};
  std::optional<bool> b = bare_bool(*res.value);
  return {Observation::Kind::Value, b.value_or(false)};
}

void noninterference_one(const SecurityLattice& lat, const GradualEnv& genv,
                         const TermPtr& body, const std::vector<ITermPtr>& values,
                         PropertyReport& r) {
  CheckResult<ITermPtr> elab = elaborate(lat, genv, *body);
  if (!elab.ok()) {
    r.add_cex("elaboration failed on noninterference family " + print(*body));
    return;
  }
  std::vector<Observation> obs;
  obs.reserve(values.size());
  for (const ITermPtr& v : values) {
    obs.push_back(observe(substitute(elab.value(), "x", v)));
  }
  for (size_t i = 0; i < obs.size(); ++i) {
    for (size_t j = 0; j < obs.size(); ++j) {
      ++r.instances;
      if (obs[i].kind == Observation::Kind::Value && obs[j].kind == Observation::Kind::Value &&
          obs[i].bval != obs[j].bval) {
        r.add_cex("observable disagreement for " + print(*body) + " between " +
                  print(*values[i]) + " and " + print(*values[j]));
        return;
      }
      if (obs[i].kind == Observation::Kind::Diverged) {
        r.add_cex("family run exceeded the step budget: " + print(*body));
        return;
      }
    }
  }
}

}  // namespace

PropertyReport check_noninterference(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "noninterference";
  note(opts, "noninterference: all one-secret bodies with low output");
  const SecurityLattice& lat = *opts.lattice;
  GradualType secret = GradualType::boolean(GradualLabel(lat.top()));
  GradualEnv genv = GradualEnv().extended("x", secret);

  // Output labels excluded by the theorem's premise are skipped: only types
  // whose label the secret cannot consistently flow to qualify.
  auto qualifies = [&](const GradualType& ty) {
    return !ty.is_function() && !consistent_leq(secret.label(), ty.label());
  };

  CorpusParams params;
  params.term_depth = opts.term_depth;
  params.type_depth = opts.type_depth;
  params.gradual = true;
  params.scope = {"x"};
  SweepSetup s = make_setup(lat, params, {}, genv);
  std::vector<ITermPtr> values = secret_values(lat, secret);

  for (const PoolEntry& pe : s.pool.e) {
    if (pe.gt && qualifies(*pe.gt)) noninterference_one(lat, genv, pe.term, values, r);
  }
  Composer comp(lat, params.term_depth, s.pool, s.inner, s.lam_typing, s.binder,
                s.alphabet, s.annots);
  if (params.term_depth >= 2) {
    comp.all([&](const std::optional<StaticType>&, const std::optional<GradualType>& gt,
                 auto&& build) {
      if (gt && qualifies(*gt)) noninterference_one(lat, genv, build(), values, r);
    });
  }

  if (opts.seed) {
    std::mt19937_64 rng(*opts.seed);
    for (int i = 0; i < opts.random_samples; ++i) {
      TermPtr t = random_term(rng, lat, params, opts.random_depth);
      std::optional<GradualType> gt = typecheck_gradual(lat, genv, *t).value_opt();
      if (gt && qualifies(*gt)) noninterference_one(lat, genv, t, values, r);
    }
  }

  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Subtyping join/meet, stamping and monotonicity laws; lattice identities
// ---------------------------------------------------------------------------

PropertyReport check_subtyping_laws(const CheckOptions& opts) {
  Timer timer;
  PropertyReport r;
  r.name = "subtyping-laws";
  note(opts, "subtyping-laws: join/meet/stamping laws at type depth 2");
  for (const auto& latp : opts.algebra_lattices) {
    const SecurityLattice& lat = *latp;
    std::vector<Label> labels = lat.all();

    // Lattice identities.
    for (Label x : labels) {
      for (Label y : labels) {
        ++r.instances;
        bool ok = join(x, y) == join(y, x) && meet(x, y) == meet(y, x) &&
                  join(x, meet(x, y)) == x &&
                  (leq(x, y) == (join(x, y) == y)) && (leq(x, y) == (meet(x, y) == x)) &&
                  leq(lat.bottom(), x) && leq(x, lat.top());
        for (Label z : labels) {
          ok = ok && join(join(x, y), z) == join(x, join(y, z)) &&
               meet(meet(x, y), z) == meet(x, meet(y, z));
        }
        if (!ok) r.add_cex("lattice identity failed at " + to_string(x) + "," + to_string(y));
      }
    }

    std::vector<StaticType> types = all_stypes(lat, opts.type_depth);
    for (const StaticType& a : types) {
      for (const StaticType& b : types) {
        ++r.instances;
        std::optional<StaticType> j = subtype_join(a, b);
        if (j && (!is_subtype(a, *j) || !is_subtype(b, *j))) {
          r.add_cex("join not an upper bound for " + to_string(a) + ", " + to_string(b));
        }
        std::optional<StaticType> m = subtype_meet(a, b);
        if (m && (!is_subtype(*m, a) || !is_subtype(*m, b))) {
          r.add_cex("meet not a lower bound for " + to_string(a) + ", " + to_string(b));
        }
        if (j.has_value() != m.has_value()) {
          r.add_cex("join/meet definedness differs for " + to_string(a) + ", " +
                    to_string(b));
        }
      }
      for (Label l : labels) {
        ++r.instances;
        if (!is_subtype(a, stamp(a, l))) {
          r.add_cex("stamping not monotone on " + to_string(a) + " with " + to_string(l));
        }
      }
    }
    for (const StaticType& a : types) {
      for (const StaticType& b : types) {
        if (!is_subtype(a, b)) continue;
        for (Label l1 : labels) {
          for (Label l2 : labels) {
            if (!leq(l1, l2)) continue;
            ++r.instances;
            if (!is_subtype(stamp(a, l1), stamp(b, l2))) {
              r.add_cex("stamping not monotone in both arguments on " + to_string(a) +
                        " <: " + to_string(b));
            }
          }
        }
        for (const StaticType& c : types) {
          // Least upper bound / greatest lower bound against a common bound.
          std::optional<StaticType> j = subtype_join(c, a);
          if (j && is_subtype(c, b) && is_subtype(a, b)) {
            ++r.instances;
            if (!is_subtype(*j, b)) {
              r.add_cex("join not least for " + to_string(c) + ", " + to_string(a));
            }
          }
          std::optional<StaticType> m = subtype_meet(c, a);
          if (m && is_subtype(b, c) && is_subtype(b, a)) {
            ++r.instances;
            if (!is_subtype(b, *m)) {
              r.add_cex("meet not greatest for " + to_string(c) + ", " + to_string(a));
            }
          }
        }
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Suite registry
// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "galois",          "interior",       "transitivity",
      "subtyping-laws",  "conservative-extension", "static-guarantee",
      "bigstep-smallstep", "preservation", "noninterference",
  };
  return names;
}

std::vector<PropertyReport> run_suites(const std::vector<std::string>& names,
                                       const CheckOptions& opts) {
  std::vector<PropertyReport> out;
  for (const std::string& name : names) {
    if (name == "galois") out.push_back(check_galois(opts));
    else if (name == "interior") out.push_back(check_interior_oracle(opts));
    else if (name == "transitivity") out.push_back(check_transitivity(opts));
    else if (name == "subtyping-laws") out.push_back(check_subtyping_laws(opts));
    else if (name == "conservative-extension") out.push_back(check_conservative_extension(opts));
    else if (name == "static-guarantee") out.push_back(check_static_guarantee(opts));
    else if (name == "bigstep-smallstep") out.push_back(check_bigstep_smallstep(opts));
    else if (name == "preservation") out.push_back(check_preservation_progress(opts));
    else if (name == "noninterference") out.push_back(check_noninterference(opts));
    else throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return out;
}

}  // namespace gsec
