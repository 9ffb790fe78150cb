// Shared helpers for the unit and acceptance tests: fixed theories, a seeded
// random term generator and set comparison modulo variable renaming.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "absau/abstraction.hpp"
#include "absau/engine.hpp"
#include "absau/term.hpp"

namespace testsupport {

using absau::Substitution;
using absau::Term;
using absau::Theory;

// Abs(f, eps_f) with the free symbols used throughout the worked examples.
inline Theory example_theory() {
  return Theory::parse(
      "absorption f eps_f\n"
      "symbol g/2\n"
      "symbol h/1\n"
      "symbol a/0\n"
      "symbol b/0\n"
      "symbol c/0\n");
}

// Two absorption pairs for the randomized properties.
inline Theory two_pair_theory() {
  return Theory::parse(
      "absorption f eps_f\n"
      "absorption k eps_k\n"
      "symbol h/1\n"
      "symbol a/0\n"
      "symbol b/0\n");
}

inline Term P(const Theory& th, const std::string& text) { return absau::parse_term(text, th); }

inline Term W(const Theory& th, const std::string& text) {
  return absau::parse_term(text, th, {.allow_wildcard = true});
}

// Canonical renaming of every variable, then a sorted set.
inline std::set<Term> modulo_renaming(const std::vector<Term>& terms, const absau::VarSet& keep = {}) {
  std::set<Term> out;
  for (const Term& t : terms) out.insert(absau::rename_canonically(t, keep));
  return out;
}

inline std::vector<Term> parse_all(const Theory& th, const std::vector<std::string>& texts) {
  std::vector<Term> out;
  for (const auto& s : texts) out.push_back(P(th, s));
  return out;
}

// Random terms over a theory's signature plus an optional variable list.
class TermGen {
 public:
  TermGen(const Theory& th, unsigned seed, std::vector<std::string> vars = {})
      : rng_(seed), vars_(std::move(vars)) {
    for (const auto& [name, arity] : th.signature()) {
      (arity == 0 ? leaves_ : inner_).push_back({name, arity});
    }
  }

  // Length in [1, max_len].
  Term term(std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    return exact(len(rng_));
  }

  // A term of exactly length n if the signature allows one, else shorter.
  Term exact(std::size_t n) {
    if (n <= 1) return leaf();
    std::vector<std::pair<std::string, std::size_t>> fits;
    for (const auto& s : inner_) {
      if (s.second + 1 <= n) fits.push_back(s);
    }
    if (fits.empty()) return leaf();
    const auto& [name, arity] = fits[pick(fits.size())];
    std::size_t rest = n - 1;
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) {
      std::size_t remaining = arity - i - 1;
      std::size_t hi = rest - remaining;
      std::size_t take = i + 1 == arity ? rest : 1 + pick(hi);
      args.push_back(exact(take));
      rest -= take;
    }
    return Term::app(name, std::move(args));
  }

  Term leaf() {
    std::size_t total = leaves_.size() + vars_.size();
    std::size_t k = pick(total);
    if (k < leaves_.size()) return Term::app(leaves_[k].first);
    return Term::var(vars_[k - leaves_.size()]);
  }

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<std::string> vars_;
  std::vector<std::pair<std::string, std::size_t>> leaves_;
  std::vector<std::pair<std::string, std::size_t>> inner_;
};

// Every normal term of length <= max_len over the signature and `vars`,
// built independently of the library's enumerator.
inline std::vector<Term> all_normal_terms(const Theory& th, const std::vector<std::string>& vars,
                                          std::size_t max_len) {
  std::vector<std::vector<Term>> by_len(max_len + 1);
  for (std::size_t n = 1; n <= max_len; ++n) {
    for (const auto& [name, arity] : th.signature()) {
      if (arity == 0) {
        if (n == 1) by_len[1].push_back(Term::app(name));
        continue;
      }
      if (n < arity + 1) continue;
      // Split n - 1 into `arity` positive parts.
      std::function<void(std::size_t, std::size_t, std::vector<Term>&)> rec =
          [&](std::size_t i, std::size_t left, std::vector<Term>& args) {
            if (i == arity) {
              if (left != 0) return;
              Term t = Term::app(name, args);
              if (absau::is_normal(t, th)) by_len[n].push_back(t);
              return;
            }
            for (std::size_t k = 1; k <= left; ++k) {
              for (const Term& a : by_len[k]) {
                args.push_back(a);
                rec(i + 1, left - k, args);
                args.pop_back();
              }
            }
          };
      std::vector<Term> args;
      rec(0, n - 1, args);
    }
    if (n == 1) {
      for (const auto& v : vars) by_len[1].push_back(Term::var(v));
    }
  }
  std::vector<Term> out;
  for (const auto& layer : by_len) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

// Calls `fn` for every substitution of `vars` into `range`; stops when it
// returns true.
inline bool any_substitution(const std::vector<std::string>& vars, const std::vector<Term>& range,
                             const std::function<bool(const Substitution&)>& fn) {
  Substitution sigma;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) return fn(sigma);
    for (const Term& r : range) {
      sigma.bind(vars[i], r);
      if (rec(i + 1)) return true;
    }
    sigma.erase(vars[i]);
    return false;
  };
  return rec(0);
}

}  // namespace testsupport
