#include "absau/absau.h"

#include <functional>
#include <new>
#include <string>
#include <vector>

#include "absau/report.hpp"

struct absau_theory {
  absau::Theory theory;
};

struct absau_result {
  std::string text;
};

namespace {

thread_local std::string last_error;

absau_status fail(absau_status code, std::string msg) {
  last_error = std::move(msg);
  return code;
}

// Runs `body`, mapping exceptions to status codes.
absau_status guarded(const std::function<absau_status()>& body) {
  try {
    last_error.clear();
    return body();
  } catch (const absau::InputError& e) {
    return fail(ABSAU_ERR_INPUT, e.what());
  } catch (const absau::InvariantError& e) {
    return fail(ABSAU_ERR_INTERNAL, std::string("internal invariant violated: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(ABSAU_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ABSAU_ERR_INTERNAL, e.what());
  }
}

absau::CommandOptions command_options(const absau_options* opts) {
  absau_options defaults;
  absau_options_init(&defaults);
  const absau_options& o = opts ? *opts : defaults;
  absau::CommandOptions c;
  c.json = o.format == ABSAU_FORMAT_JSON;
  c.bound = o.bound;
  c.max_steps = o.max_steps;
  c.trace = o.trace != 0;
  c.threads = o.threads == 0 ? 1 : o.threads;
  c.size_bound = o.size_bound;
  c.var_count = o.var_count;
  c.force = o.force != 0;
  return c;
}

// Parses the inputs against `theory`, or infers the default theory from them.
struct Parsed {
  absau::Theory theory;
  std::vector<absau::Term> terms;
};

Parsed parse_inputs(const absau_theory* theory, std::initializer_list<const char*> texts) {
  for (const char* t : texts) {
    if (!t) throw absau::InputError("missing term argument");
  }
  Parsed p;
  if (theory) {
    p.theory = theory->theory;
  } else {
    std::vector<absau::RawTerm> raw;
    for (const char* t : texts) raw.push_back(absau::parse_raw_term(t));
    p.theory = absau::infer_default_theory(raw);
  }
  for (const char* t : texts) p.terms.push_back(absau::parse_term(t, p.theory));
  return p;
}

absau_status emit(absau_result** out, std::string text) {
  if (!out) return fail(ABSAU_ERR_INPUT, "null result pointer");
  *out = new absau_result{std::move(text)};
  return ABSAU_OK;
}

}  // namespace

extern "C" {

void absau_options_init(absau_options* opts) {
  if (!opts) return;
  opts->format = ABSAU_FORMAT_PRETTY;
  opts->bound = 0;
  opts->max_steps = 0;
  opts->trace = 0;
  opts->threads = 1;
  opts->size_bound = 0;
  opts->var_count = 2;
  opts->force = 0;
}

const char* absau_version(void) { return "1.0.0"; }

const char* absau_last_error(void) { return last_error.c_str(); }

absau_status absau_theory_parse(const char* text, absau_theory** out) {
  return guarded([&] {
    if (!text || !out) return fail(ABSAU_ERR_INPUT, "null argument");
    *out = new absau_theory{absau::Theory::parse(text)};
    return ABSAU_OK;
  });
}

void absau_theory_free(absau_theory* theory) { delete theory; }

absau_status absau_theory_describe(const absau_theory* theory, absau_result** out) {
  return guarded([&] {
    if (!theory) return fail(ABSAU_ERR_INPUT, "null theory");
    return emit(out, theory->theory.to_string());
  });
}

absau_status absau_normalize(const absau_theory* theory, const char* term,
                             const absau_options* opts, absau_result** out) {
  return guarded([&] {
    Parsed p = parse_inputs(theory, {term});
    return emit(out, absau::report_normalize(p.theory, p.terms[0], command_options(opts)));
  });
}

absau_status absau_generalize(const absau_theory* theory, const char* s, const char* t,
                              const absau_options* opts, absau_result** out) {
  return guarded([&] {
    Parsed p = parse_inputs(theory, {s, t});
    return emit(out, absau::report_generalize(p.theory, p.terms[0], p.terms[1],
                                              command_options(opts)));
  });
}

absau_status absau_enumerate(const absau_theory* theory, const char* s, const char* t,
                             const absau_options* opts, absau_result** out) {
  return guarded([&] {
    Parsed p = parse_inputs(theory, {s, t});
    return emit(out, absau::report_enumerate(p.theory, p.terms[0], p.terms[1],
                                             command_options(opts)));
  });
}

absau_status absau_linear(const absau_theory* theory, const char* s, const char* t,
                          const absau_options* opts, absau_result** out) {
  return guarded([&] {
    Parsed p = parse_inputs(theory, {s, t});
    return emit(out,
                absau::report_linear(p.theory, p.terms[0], p.terms[1], command_options(opts)));
  });
}

absau_status absau_check(const absau_theory* theory, const char* r, const char* s, const char* t,
                         const absau_options* opts, absau_result** out) {
  return guarded([&] {
    Parsed p = parse_inputs(theory, {r, s, t});
    auto rep = absau::report_check(p.theory, p.terms[0], p.terms[1], p.terms[2],
                                   command_options(opts));
    absau_status st = emit(out, std::move(rep.text));
    if (st != ABSAU_OK) return st;
    if (!rep.generalizes) return fail(ABSAU_NOT_GENERALIZATION, "not a generalization");
    return ABSAU_OK;
  });
}

absau_status absau_oracle(const absau_theory* theory, const char* s, const char* t,
                          const absau_options* opts, absau_result** out) {
  return guarded([&] {
    Parsed p = parse_inputs(theory, {s, t});
    return emit(out,
                absau::report_oracle(p.theory, p.terms[0], p.terms[1], command_options(opts)));
  });
}

const char* absau_result_text(const absau_result* result) {
  return result ? result->text.c_str() : "";
}

void absau_result_free(absau_result* result) { delete result; }

}  // extern "C"
