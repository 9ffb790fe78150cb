// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "absau/absau.h"

namespace {

struct TheoryDeleter {
  void operator()(absau_theory* t) const { absau_theory_free(t); }
};
struct ResultDeleter {
  void operator()(absau_result* r) const { absau_result_free(r); }
};
using TheoryPtr = std::unique_ptr<absau_theory, TheoryDeleter>;
using ResultPtr = std::unique_ptr<absau_result, ResultDeleter>;

int report(absau_status st, absau_result* raw) {
  ResultPtr result(raw);
  if (result) std::fputs(absau_result_text(result.get()), stdout);
  if (st != ABSAU_OK && st != ABSAU_NOT_GENERALIZATION) {
    std::cerr << "error: " << absau_last_error() << "\n";
  }
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-unification modulo absorption theories"};
  app.require_subcommand(1);

  std::string theory_path;
  std::string format = "pretty";
  std::size_t max_steps = 0;
  bool trace = false;
  unsigned threads = 1;
  app.add_option("--theory", theory_path, "Theory file (default: Abs(f, eps_f) plus inferred symbols)")
      ->check(CLI::ExistingFile);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"pretty", "json"}));
  app.add_option("--max-steps", max_steps, "Abort a derivation after this many steps (0: no limit)");
  app.add_flag("--trace", trace, "Also print every derivation as a JSON array of steps");
  app.add_option("--threads", threads, "Worker threads for the search")->check(CLI::Range(1u, 256u));

  std::string a, b, c;
  std::size_t bound = 0;
  std::size_t size = 0;
  std::size_t vars = 2;
  bool force = false;

  auto* normalize = app.add_subcommand("normalize", "Print the Abs-normal form of a term");
  normalize->add_option("term", a)->required();

  auto* generalize =
      app.add_subcommand("generalize", "Final configurations and their solution substitutions");
  generalize->add_option("s", a)->required();
  generalize->add_option("t", b)->required();

  auto* enumerate = app.add_subcommand("enumerate", "Generalizations up to an abstraction bound");
  enumerate->add_option("s", a)->required();
  enumerate->add_option("t", b)->required();
  enumerate->add_option("--bound", bound, "Length bound for abstraction terms")
      ->required()
      ->check(CLI::PositiveNumber);

  auto* linear = app.add_subcommand("linear", "Linear generalizations");
  linear->add_option("s", a)->required();
  linear->add_option("t", b)->required();

  auto* check = app.add_subcommand("check", "Check that r generalizes s and t");
  check->add_option("r", a)->required();
  check->add_option("s", b)->required();
  check->add_option("t", c)->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force minimal complete set (small inputs)");
  oracle->add_option("s", a)->required();
  oracle->add_option("t", b)->required();
  oracle->add_option("--size", size, "Largest candidate length")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--vars", vars, "Number of pool variables");
  oracle->add_flag("--force", force, "Allow sizes above 12");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ABSAU_ERR_INPUT;
  }

  TheoryPtr theory;
  if (!theory_path.empty()) {
    std::ifstream in(theory_path);
    std::stringstream text;
    text << in.rdbuf();
    absau_theory* raw = nullptr;
    if (absau_theory_parse(text.str().c_str(), &raw) != ABSAU_OK) {
      std::cerr << "error: " << theory_path << ": " << absau_last_error() << "\n";
      return ABSAU_ERR_INPUT;
    }
    theory.reset(raw);
  }

  absau_options opts;
  absau_options_init(&opts);
  opts.format = format == "json" ? ABSAU_FORMAT_JSON : ABSAU_FORMAT_PRETTY;
  opts.max_steps = max_steps;
  opts.trace = trace ? 1 : 0;
  opts.threads = threads;
  opts.bound = bound;
  opts.size_bound = size;
  opts.var_count = vars;
  opts.force = force ? 1 : 0;

  const absau_theory* th = theory.get();
  absau_result* out = nullptr;
  absau_status st = ABSAU_ERR_INTERNAL;
  if (*normalize) {
    st = absau_normalize(th, a.c_str(), &opts, &out);
  } else if (*generalize) {
    st = absau_generalize(th, a.c_str(), b.c_str(), &opts, &out);
  } else if (*enumerate) {
    st = absau_enumerate(th, a.c_str(), b.c_str(), &opts, &out);
  } else if (*linear) {
    st = absau_linear(th, a.c_str(), b.c_str(), &opts, &out);
  } else if (*check) {
    st = absau_check(th, a.c_str(), b.c_str(), c.c_str(), &opts, &out);
  } else if (*oracle) {
    st = absau_oracle(th, a.c_str(), b.c_str(), &opts, &out);
  }
  return report(st, out);
}
