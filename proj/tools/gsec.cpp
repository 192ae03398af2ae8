// gsec: check, elaborate and run security-typed programs, and run the
// property suites that validate the implementation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gsec/intrinsic.hpp"
#include "gsec/properties.hpp"
#include "gsec/runtime.hpp"
#include "gsec/static_eval.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTypeError = 1;
constexpr int kExitRuntimeError = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitCounterexamples = 4;

std::shared_ptr<const gsec::SecurityLattice> load_lattice(const std::string& spec) {
  if (spec == "two-point" || spec == "diamond") return gsec::SecurityLattice::builtin(spec);
  return gsec::SecurityLattice::from_file(spec);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_type_error(const gsec::TypeError& e) {
  std::cout << "type error at " << gsec::to_string(e.span) << " [" << e.rule
            << "]: " << e.message << "\n";
}

struct Loaded {
  std::shared_ptr<const gsec::SecurityLattice> lattice;
  gsec::TermPtr term;
};

int load_program(const std::string& file, const std::string& lattice_spec, Loaded& out) {
  try {
    out.lattice = load_lattice(lattice_spec);
  } catch (const std::exception& e) {
    std::cout << "lattice error: " << e.what() << "\n";
    return kExitBadInput;
  }
  try {
    out.term = gsec::parse(read_file(file));
  } catch (const gsec::ParseError& e) {
    std::cout << "parse error at " << gsec::to_string(e.span) << ": " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradual security-typed lambda calculus"};
  app.require_subcommand(1);

  const char* env_lattice = std::getenv("GSEC_LATTICE");
  std::string lattice_spec = env_lattice ? env_lattice : "two-point";

  std::string file;
  bool trace = false;
  int depth = 3;
  int type_depth = 2;
  std::optional<uint64_t> seed;
  std::vector<std::string> suites;

  CLI::App* check = app.add_subcommand("check", "type-check a program");
  check->add_option("file", file)->required();
  check->add_option("--lattice", lattice_spec, "built-in lattice name or config path");

  CLI::App* elab = app.add_subcommand("elab", "print the evidence-annotated form");
  elab->add_option("file", file)->required();
  elab->add_option("--lattice", lattice_spec);

  CLI::App* run = app.add_subcommand("run", "evaluate a program");
  run->add_option("file", file)->required();
  run->add_option("--lattice", lattice_spec);
  run->add_flag("--trace", trace, "print every reduction step");

  CLI::App* props = app.add_subcommand("props", "run the property suites");
  props->add_option("--suite", suites, "suites to run (default: all)");
  props->add_option("--lattice", lattice_spec);
  props->add_option("--depth", depth, "term depth bound (exhaustive mode, at most 3)");
  props->add_option("--type-depth", type_depth, "annotation type depth bound");
  props->add_option("--seed", seed, "extend suites with seeded random deep terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  if (check->parsed() || elab->parsed() || run->parsed()) {
    Loaded in;
    int rc = load_program(file, lattice_spec, in);
    if (rc != kExitOk) return rc;

    gsec::CheckResult<gsec::GradualType> ty =
        gsec::typecheck_gradual(*in.lattice, {}, *in.term);
    if (!ty.ok()) {
      print_type_error(ty.error());
      return kExitTypeError;
    }
    if (check->parsed()) {
      std::cout << ": " << gsec::to_string(ty.value()) << "\n";
      return kExitOk;
    }

    gsec::CheckResult<gsec::ITermPtr> elaborated =
        gsec::elaborate(*in.lattice, {}, *in.term);
    if (!elaborated.ok()) {
      print_type_error(elaborated.error());
      return kExitTypeError;
    }
    if (elab->parsed()) {
      std::cout << gsec::print(*elaborated.value()) << "\n";
      return kExitOk;
    }

    gsec::EvalResult result = gsec::evaluate(elaborated.value(), 10000, trace);
    if (trace) {
      for (const std::string& line : result.trace) std::cout << line << "\n";
    } else {
      std::cout << gsec::outcome_line(result) << "\n";
    }
    return result.kind == gsec::EvalResult::Kind::Value ? kExitOk : kExitRuntimeError;
  }

  // props
  gsec::CheckOptions opts = gsec::CheckOptions::defaults();
  opts.progress = true;
  if (props->count("--lattice") > 0 || env_lattice) {
    try {
      opts.lattice = load_lattice(lattice_spec);
      opts.algebra_lattices = {opts.lattice};
    } catch (const std::exception& e) {
      std::cout << "lattice error: " << e.what() << "\n";
      return kExitBadInput;
    }
  }
  if (depth < 1 || depth > 3) {
    std::cout << "usage error: --depth must be between 1 and 3 (exhaustive enumeration); "
                 "use --seed to sample deeper terms\n";
    return kExitBadInput;
  }
  opts.term_depth = depth;
  opts.type_depth = type_depth;
  opts.seed = seed;

  std::vector<std::string> to_run = suites.empty() ? gsec::suite_names() : suites;
  std::vector<gsec::PropertyReport> reports;
  try {
    reports = gsec::run_suites(to_run, opts);
  } catch (const std::invalid_argument& e) {
    std::cout << "usage error: " << e.what() << "\n";
    return kExitBadInput;
  }

  bool all_pass = true;
  for (const gsec::PropertyReport& r : reports) {
    std::cout << r.summary_line() << "\n";
    for (const std::string& cex : r.counterexamples) {
      std::cout << "  counterexample: " << cex << "\n";
    }
    all_pass = all_pass && r.pass();
  }
  std::cout << (all_pass ? "all properties hold" : "property violations found") << " ("
            << reports.size() << " suites)\n";
  return all_pass ? kExitOk : kExitCounterexamples;
}
