// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets are enforced where a criterion states one.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "gsec/properties.hpp"
#include "gsec/runtime.hpp"

using namespace gsec;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("CRITERION %d %s: %s (%s)\n", criterion, name.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void report_suite(int criterion, const PropertyReport& r, double budget_seconds = 0) {
  bool in_budget = budget_seconds <= 0 || r.seconds < budget_seconds;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "n=%llu cex=%llu %.1fs%s",
                static_cast<unsigned long long>(r.instances),
                static_cast<unsigned long long>(r.cex_count), r.seconds,
                in_budget ? "" : " OVER BUDGET");
  report(criterion, r.name, r.pass() && in_budget, detail);
  for (const std::string& cex : r.counterexamples) {
    std::printf("  counterexample: %s\n", cex.c_str());
  }
}

// Criterion 1: the worked indirect-flow example, end to end and exact.
void golden_trace() {
  auto start = std::chrono::steady_clock::now();
  auto lat = SecurityLattice::two_point();
  std::string why;

  TermPtr accepted = parse("(\\x:Bool@L. x)@L ((\\x:Bool@?. x)@L false@H)");
  TermPtr rejected = parse("(\\x:Bool@L. x)@L false@H");

  CheckResult<GradualType> ty = typecheck_gradual(*lat, {}, *accepted);
  if (!ty.ok() || to_string(ty.value()) != "Bool@L") why += "type not Bool@L; ";
  if (typecheck_gradual(*lat, {}, *rejected).ok()) why += "direct flow accepted; ";
  if (typecheck_static(*lat, {}, *rejected).ok()) why += "direct flow accepted statically; ";

  CheckResult<ITermPtr> elab = elaborate(*lat, {}, *accepted);
  if (!elab.ok()) {
    why += "elaboration failed; ";
  } else {
    GradualType tf = resolve_gradual_type(*lat, *parse_type("(Bool@L -> Bool@L)@L"), {}).value();
    GradualType tg = resolve_gradual_type(*lat, *parse_type("(Bool@? -> Bool@?)@L"), {}).value();
    GradualType bl = GradualType::boolean(GradualLabel(lat->label("L")));
    GradualType bh = GradualType::boolean(GradualLabel(lat->label("H")));
    const auto* outer = std::get_if<IApp>(&elab.value()->node);
    const auto* inner = outer ? std::get_if<IApp>(&outer->arg.term->node) : nullptr;
    if (!outer || !inner) {
      why += "unexpected elaborated shape; ";
    } else {
      if (!(outer->fn.ev == Evidence{tf, tf})) why += "outer function evidence; ";
      if (!(outer->arg.ev == Evidence{bl, bl})) why += "outer argument evidence; ";
      if (!(inner->fn.ev == Evidence{tg, tg})) why += "inner function evidence; ";
      if (!(inner->arg.ev == Evidence{bh, bh})) why += "inner argument evidence; ";
    }

    EvalResult run = evaluate(elab.value(), 10000, true);
    const std::vector<std::string> expected = {
        "0: (<(Bool@L -> Bool@L)@L, (Bool@L -> Bool@L)@L>(\\x:Bool@L. x)@L) "
        "(<Bool@L, Bool@L>((<(Bool@? -> Bool@?)@L, (Bool@? -> Bool@?)@L>(\\x:Bool@?. x)@L) "
        "(<Bool@H, Bool@H>false@H)))",
        "1: --> (<(Bool@L -> Bool@L)@L, (Bool@L -> Bool@L)@L>(\\x:Bool@L. x)@L) "
        "(<Bool@L, Bool@L>(<Bool@?, Bool@?>(<Bool@H, Bool@H>false@H :: Bool@?) :: Bool@?))",
        "2: -->c (<(Bool@L -> Bool@L)@L, (Bool@L -> Bool@L)@L>(\\x:Bool@L. x)@L) "
        "(<Bool@L, Bool@L>(<Bool@H, Bool@H>false@H :: Bool@?))",
        "3: -->c error",
        "ERROR: cannot combine <Bool@H, Bool@H> with <Bool@L, Bool@L> at 1:19",
    };
    if (run.kind != EvalResult::Kind::Error) why += "run did not fail; ";
    if (run.trace != expected) why += "trace differs; ";
    if (!run.error || to_string(run.error->inner) != "<Bool@H, Bool@H>" ||
        to_string(run.error->outer) != "<Bool@L, Bool@L>") {
      why += "error payload differs; ";
    }
  }

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 1.0) why += "over the 1s budget; ";
  char detail[160];
  std::snprintf(detail, sizeof(detail), "%s%.3fs", why.empty() ? "" : why.c_str(), secs);
  report(1, "golden-trace", why.empty(), detail);
}

}  // namespace

int main() {
  CheckOptions opts = CheckOptions::defaults();
  opts.progress = true;

  golden_trace();
  report_suite(2, check_conservative_extension(opts), 300.0);
  report_suite(3, check_static_guarantee(opts));
  report_suite(4, check_bigstep_smallstep(opts));
  report_suite(5, check_galois(opts));
  report_suite(6, check_interior_oracle(opts));

  {
    PropertyReport r = check_transitivity(opts);
    // The specific failing combination must be absent, exactly as in the
    // worked example.
    auto lat = SecurityLattice::two_point();
    GradualType bh = GradualType::boolean(GradualLabel(lat->label("H")));
    GradualType bl = GradualType::boolean(GradualLabel(lat->label("L")));
    if (consistent_transitivity(Evidence{bh, bh}, Evidence{bl, bl}).has_value()) {
      r.add_cex("<Bool@H, Bool@H> o <Bool@L, Bool@L> is unexpectedly defined");
    }
    report_suite(7, r);
  }

  report_suite(8, check_preservation_progress(opts));
  report_suite(9, check_noninterference(opts), 600.0);
  report_suite(10, check_subtyping_laws(opts));

  std::printf("ACCEPTANCE: %d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
