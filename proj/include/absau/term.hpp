#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absau/error.hpp"

namespace absau {

/// Name of the reserved nullary wild card. Never writable in user terms.
inline constexpr std::string_view kWildcard = "*";

enum class SymbolKind { Free, AbsorptionSymbol, AbsorptionConstant, Wildcard };

struct SymbolInfo {
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::Free;
  /// For absorption symbols the constant, for absorption constants the symbol.
  std::string partner;
};

/// Signature plus the declared absorption pairs (f, eps_f).
///
/// Absorption symbols are binary, absorption constants nullary, and no name
/// appears in two roles. The wild card is always present and reserved.
class Theory {
 public:
  Theory();

  /// Declares Abs(f, eps). Throws InputError on any clash.
  void add_absorption(const std::string& f, const std::string& eps);
  /// Declares a free symbol. Throws InputError on redeclaration or clash.
  void add_symbol(const std::string& name, std::size_t arity);

  /// Parses a theory file: `absorption <f> <eps>` / `symbol <name>/<arity>`
  /// per line, `#` starts a comment.
  static Theory parse(std::string_view text);

  const SymbolInfo* find(std::string_view name) const;
  bool declared(std::string_view name) const { return find(name) != nullptr; }

  bool is_absorption_symbol(std::string_view name) const;
  bool is_absorption_constant(std::string_view name) const;
  /// eps_f for f, or nullptr if f is not an absorption symbol.
  const std::string* absorption_constant_of(std::string_view f) const;
  /// True iff {a, b} = {f, eps_f} for a declared pair.
  bool related(std::string_view a, std::string_view b) const;

  /// All declared (f, eps_f) pairs in name order of f.
  std::vector<std::pair<std::string, std::string>> absorption_pairs() const;
  /// Every writable symbol (wild card excluded) in name order.
  std::vector<std::pair<std::string, std::size_t>> signature() const;

  /// Renders the theory back in file syntax.
  std::string to_string() const;

 private:
  void check_fresh(const std::string& name) const;

  std::map<std::string, SymbolInfo, std::less<>> symbols_;
};

/// Immutable first-order term: a variable or an application.
///
/// Copies share structure. Equality is syntactic. The ordering compares
/// length first, then variables before applications, then names, then
/// arguments left to right; it is the canonical order used for every set
/// of terms the library prints.
class Term {
 public:
  static Term var(std::string name);
  static Term app(std::string symbol, std::vector<Term> args = {});
  static Term wildcard();

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  bool is_wildcard() const { return is_app() && node_->name == kWildcard; }
  /// Variable name or application symbol.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }

  /// len(x) = 1, len(f(t1..tn)) = 1 + sum len(ti).
  std::size_t length() const { return node_->length; }
  /// head(x) = x, head(f(...)) = f. Both are reported by name.
  const std::string& head() const { return node_->name; }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var = false;
    std::string name;
    std::vector<Term> args;
    std::size_t length = 1;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using VarSet = std::set<std::string>;

/// V(t), in name order.
VarSet vars_of(const Term& t);
/// Variables in order of first occurrence (left to right, depth first).
std::vector<std::string> vars_in_order(const Term& t);
void collect_vars(const Term& t, VarSet& out);
bool occurs(const std::string& var, const Term& t);
/// Number of occurrences of absorption symbols (binary f, not eps_f).
std::size_t count_absorption_symbols(const Term& t, const Theory& theory);
/// True iff no variable occurs twice.
bool is_linear(const Term& t);

/// Finite map variable -> term. Identity bindings are never stored.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> init);

  /// Adds or replaces x -> t; x -> x erases the binding.
  void bind(const std::string& var, Term t);
  void erase(const std::string& var) { map_.erase(var); }

  const Term* lookup(const std::string& var) const;
  bool in_domain(const std::string& var) const { return map_.count(var) != 0; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  VarSet domain() const;
  std::vector<Term> range() const;
  /// Rvar: variables occurring in the range.
  VarSet range_vars() const;

  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend bool operator<(const Substitution& a, const Substitution& b) {
    return a.map_ < b.map_;
  }

 private:
  std::map<std::string, Term> map_;
};

/// Plain syntactic instance t sigma, without normalization.
Term substitute(const Term& t, const Substitution& sigma);
/// normalize(t sigma).
Term apply_subst(const Term& t, const Substitution& sigma, const Theory& theory);
/// x(sigma rho) = (x sigma) rho for all x. Syntactic; identity bindings dropped.
Substitution compose(const Substitution& sigma, const Substitution& rho);
/// sigma|V.
Substitution restrict(const Substitution& sigma, const VarSet& vars);
/// Renames variables; variables outside the map are left alone.
Term rename_vars(const Term& t, const std::map<std::string, std::string>& renaming);

/// Abs-normal form: f(eps_f, u) -> eps_f and f(u, eps_f) -> eps_f to
/// fixpoint, innermost leftmost.
Term normalize(const Term& t, const Theory& theory);
/// No eps_f occurs as a direct argument of its own f.
bool is_normal(const Term& t, const Theory& theory);
/// normalize(s) == normalize(t).
bool eq_abs(const Term& s, const Term& t, const Theory& theory);

struct ParseOptions {
  /// Accept `*` as the wild card (configuration files, internal round trips).
  bool allow_wildcard = false;
};

/// Parses the term grammar and resolves every symbol against `theory`.
/// Throws ParseError for syntax, InputError for undeclared symbols, arity
/// mismatches and use of the reserved wild card.
Term parse_term(std::string_view text, const Theory& theory, ParseOptions opts = {});

/// Unresolved syntax tree, used to infer a default theory before resolution.
struct RawTerm {
  bool is_var = false;
  bool is_wildcard = false;
  std::string name;
  std::vector<RawTerm> args;
  std::size_t column = 1;
};
RawTerm parse_raw_term(std::string_view text);

/// Default theory: Abs(f, eps_f) plus every other symbol with the arity of its
/// first use. Inconsistent use is an InputError.
Theory infer_default_theory(const std::vector<RawTerm>& terms);

/// Prints in the input grammar: lowercase-initial variables get a `$`.
std::string to_string(const Term& t);
std::string to_string(const Substitution& sigma);

/// Fresh labels are y1, y2, ...; start labels carry an `_st` suffix.
bool is_reserved_variable(std::string_view name);
std::string fresh_label(std::size_t index);
std::string start_label(const std::string& label);
bool is_start_label(std::string_view name);
/// Index n for a label yn, if it has that form.
std::optional<std::size_t> fresh_index(std::string_view name);
/// Creation order: yn labels by number, others lexicographically after them.
bool label_less(const std::string& a, const std::string& b);

}  // namespace absau
