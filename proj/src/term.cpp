#include "absau/term.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace absau {

// ---------------------------------------------------------------- Theory

Theory::Theory() {
  symbols_.emplace(std::string(kWildcard), SymbolInfo{0, SymbolKind::Wildcard, {}});
}

void Theory::check_fresh(const std::string& name) const {
  if (name == kWildcard) throw InputError("the wild card '*' is reserved");
  if (auto it = symbols_.find(name); it != symbols_.end()) {
    throw InputError("symbol '" + name + "' is declared more than once");
  }
}

void Theory::add_absorption(const std::string& f, const std::string& eps) {
  if (f == eps) throw InputError("absorption symbol and constant must differ: '" + f + "'");
  check_fresh(f);
  check_fresh(eps);
  symbols_.emplace(f, SymbolInfo{2, SymbolKind::AbsorptionSymbol, eps});
  symbols_.emplace(eps, SymbolInfo{0, SymbolKind::AbsorptionConstant, f});
}

void Theory::add_symbol(const std::string& name, std::size_t arity) {
  check_fresh(name);
  symbols_.emplace(name, SymbolInfo{arity, SymbolKind::Free, {}});
}

const SymbolInfo* Theory::find(std::string_view name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

bool Theory::is_absorption_symbol(std::string_view name) const {
  const SymbolInfo* info = find(name);
  return info && info->kind == SymbolKind::AbsorptionSymbol;
}

bool Theory::is_absorption_constant(std::string_view name) const {
  const SymbolInfo* info = find(name);
  return info && info->kind == SymbolKind::AbsorptionConstant;
}

const std::string* Theory::absorption_constant_of(std::string_view f) const {
  const SymbolInfo* info = find(f);
  if (!info || info->kind != SymbolKind::AbsorptionSymbol) return nullptr;
  return &info->partner;
}

bool Theory::related(std::string_view a, std::string_view b) const {
  const SymbolInfo* info = find(a);
  if (!info) return false;
  if (info->kind != SymbolKind::AbsorptionSymbol &&
      info->kind != SymbolKind::AbsorptionConstant) {
    return false;
  }
  return info->partner == b;
}

std::vector<std::pair<std::string, std::string>> Theory::absorption_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, info] : symbols_) {
    if (info.kind == SymbolKind::AbsorptionSymbol) out.emplace_back(name, info.partner);
  }
  return out;
}

std::vector<std::pair<std::string, std::size_t>> Theory::signature() const {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& [name, info] : symbols_) {
    if (info.kind != SymbolKind::Wildcard) out.emplace_back(name, info.arity);
  }
  return out;
}

std::string Theory::to_string() const {
  std::ostringstream os;
  for (const auto& [f, eps] : absorption_pairs()) os << "absorption " << f << ' ' << eps << '\n';
  for (const auto& [name, info] : symbols_) {
    if (info.kind == SymbolKind::Free) os << "symbol " << name << '/' << info.arity << '\n';
  }
  return os.str();
}

// ------------------------------------------------------------------ Term

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->name = std::move(symbol);
  std::size_t len = 1;
  for (const Term& a : args) len += a.length();
  node->length = len;
  node->args = std::move(args);
  return Term(std::move(node));
}

Term Term::wildcard() {
  static const Term star = Term::app(std::string(kWildcard));
  return star;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->is_var != b.node_->is_var || a.node_->length != b.node_->length ||
      a.node_->name != b.node_->name || a.node_->args.size() != b.node_->args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.node_->args.size(); ++i) {
    if (!(a.node_->args[i] == b.node_->args[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->length <=> b.node_->length; c != 0) return c;
  // Variables sort before applications of the same length.
  if (a.node_->is_var != b.node_->is_var) {
    return a.node_->is_var ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.node_->name.compare(b.node_->name); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.node_->args.size() <=> b.node_->args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i) {
    if (auto c = a.node_->args[i] <=> b.node_->args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void collect_vars(const Term& t, VarSet& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

VarSet vars_of(const Term& t) {
  VarSet out;
  collect_vars(t, out);
  return out;
}

namespace {
void vars_in_order_rec(const Term& t, std::vector<std::string>& out, VarSet& seen) {
  if (t.is_var()) {
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) vars_in_order_rec(a, out, seen);
}

void count_vars(const Term& t, std::map<std::string, int>& counts) {
  if (t.is_var()) {
    ++counts[t.name()];
    return;
  }
  for (const Term& a : t.args()) count_vars(a, counts);
}
}  // namespace

std::vector<std::string> vars_in_order(const Term& t) {
  std::vector<std::string> out;
  VarSet seen;
  vars_in_order_rec(t, out, seen);
  return out;
}

bool occurs(const std::string& var, const Term& t) {
  if (t.is_var()) return t.name() == var;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs(var, a); });
}

std::size_t count_absorption_symbols(const Term& t, const Theory& theory) {
  if (t.is_var()) return 0;
  std::size_t n = theory.is_absorption_symbol(t.name()) ? 1 : 0;
  for (const Term& a : t.args()) n += count_absorption_symbols(a, theory);
  return n;
}

bool is_linear(const Term& t) {
  std::map<std::string, int> counts;
  count_vars(t, counts);
  return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second == 1; });
}

// ---------------------------------------------------------- Substitution

Substitution::Substitution(std::initializer_list<std::pair<const std::string, Term>> init) {
  for (const auto& [x, t] : init) bind(x, t);
}

void Substitution::bind(const std::string& var, Term t) {
  if (t.is_var() && t.name() == var) {
    map_.erase(var);
    return;
  }
  map_.insert_or_assign(var, std::move(t));
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

VarSet Substitution::domain() const {
  VarSet out;
  for (const auto& [x, t] : map_) out.insert(x);
  return out;
}

std::vector<Term> Substitution::range() const {
  std::vector<Term> out;
  out.reserve(map_.size());
  for (const auto& [x, t] : map_) out.push_back(t);
  return out;
}

VarSet Substitution::range_vars() const {
  VarSet out;
  for (const auto& [x, t] : map_) collect_vars(t, out);
  return out;
}

Term substitute(const Term& t, const Substitution& sigma) {
  if (sigma.empty()) return t;
  if (t.is_var()) {
    const Term* image = sigma.lookup(t.name());
    return image ? *image : t;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(substitute(a, sigma));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::app(t.name(), std::move(args)) : t;
}

Term apply_subst(const Term& t, const Substitution& sigma, const Theory& theory) {
  return normalize(substitute(t, sigma), theory);
}

Substitution compose(const Substitution& sigma, const Substitution& rho) {
  Substitution out;
  for (const auto& [x, t] : sigma) out.bind(x, substitute(t, rho));
  for (const auto& [x, t] : rho) {
    if (!sigma.in_domain(x)) out.bind(x, t);
  }
  return out;
}

Substitution restrict(const Substitution& sigma, const VarSet& vars) {
  Substitution out;
  for (const auto& [x, t] : sigma) {
    if (vars.count(x)) out.bind(x, t);
  }
  return out;
}

Term rename_vars(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (t.is_var()) {
    auto it = renaming.find(t.name());
    return it == renaming.end() ? t : Term::var(it->second);
  }
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename_vars(a, renaming));
  return Term::app(t.name(), std::move(args));
}

// --------------------------------------------------------- Normalization

Term normalize(const Term& t, const Theory& theory) {
  if (t.is_var() || t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(normalize(a, theory));
    changed = changed || !args.back().same_node(a);
  }
  // Arguments are normal now, so one look at the root suffices.
  if (const std::string* eps = theory.absorption_constant_of(t.name())) {
    for (const Term& a : args) {
      if (a.is_app() && a.arity() == 0 && a.name() == *eps) return a;
    }
  }
  return changed ? Term::app(t.name(), std::move(args)) : t;
}

bool is_normal(const Term& t, const Theory& theory) {
  if (t.is_var()) return true;
  if (const std::string* eps = theory.absorption_constant_of(t.name())) {
    for (const Term& a : t.args()) {
      if (a.is_app() && a.arity() == 0 && a.name() == *eps) return false;
    }
  }
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return is_normal(a, theory); });
}

bool eq_abs(const Term& s, const Term& t, const Theory& theory) {
  return normalize(s, theory) == normalize(t, theory);
}

// ---------------------------------------------------------------- Labels

std::optional<std::size_t> fresh_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'y') return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), value);
  if (ec != std::errc() || ptr != name.data() + name.size()) return std::nullopt;
  return value;
}

bool is_start_label(std::string_view name) {
  return name.size() > 3 && name.substr(name.size() - 3) == "_st";
}

bool is_reserved_variable(std::string_view name) {
  return fresh_index(name).has_value() || is_start_label(name);
}

std::string fresh_label(std::size_t index) { return "y" + std::to_string(index); }

std::string start_label(const std::string& label) { return label + "_st"; }

bool label_less(const std::string& a, const std::string& b) {
  auto ia = fresh_index(a);
  auto ib = fresh_index(b);
  if (ia && ib) return *ia < *ib;
  if (ia != ib) return ia.has_value();
  return a < b;
}

}  // namespace absau
