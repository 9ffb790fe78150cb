#include <cctype>
#include <sstream>

#include "absau/term.hpp"

namespace absau {

namespace {

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool var_start(char c) { return c >= 'A' && c <= 'Z'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class RawParser {
 public:
  explicit RawParser(std::string_view text) : text_(text) {}

  RawTerm parse_all() {
    RawTerm t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string read_word() {
    std::size_t begin = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(begin, pos_ - begin));
  }

  RawTerm parse_term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    RawTerm t;
    t.column = pos_ + 1;
    char c = text_[pos_];
    if (c == '*') {
      ++pos_;
      t.is_wildcard = true;
      t.name = std::string(kWildcard);
      return t;
    }
    if (c == '$') {
      ++pos_;
      if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier after '$'");
      t.is_var = true;
      t.name = read_word();
      return t;
    }
    if (var_start(c)) {
      t.is_var = true;
      t.name = read_word();
      return t;
    }
    if (!ident_start(c)) fail("unexpected '" + std::string(1, c) + "'");
    t.name = read_word();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      t.args.push_back(parse_term());
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        t.args.push_back(parse_term());
        skip_ws();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ',' or ')'");
      ++pos_;
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Term resolve(const RawTerm& raw, const Theory& theory, const ParseOptions& opts) {
  if (raw.is_var) return Term::var(raw.name);
  if (raw.is_wildcard) {
    if (!opts.allow_wildcard) {
      throw InputError("the wild card '*' is reserved (column " + std::to_string(raw.column) + ")");
    }
    return Term::wildcard();
  }
  const SymbolInfo* info = theory.find(raw.name);
  if (!info) {
    throw InputError("undeclared symbol '" + raw.name + "' (column " +
                     std::to_string(raw.column) + ")");
  }
  if (info->arity != raw.args.size()) {
    throw InputError("arity mismatch: '" + raw.name + "' expects " + std::to_string(info->arity) +
                     " argument(s), got " + std::to_string(raw.args.size()) + " (column " +
                     std::to_string(raw.column) + ")");
  }
  std::vector<Term> args;
  args.reserve(raw.args.size());
  for (const RawTerm& a : raw.args) args.push_back(resolve(a, theory, opts));
  return Term::app(raw.name, std::move(args));
}

void infer_rec(const RawTerm& raw, std::map<std::string, std::size_t>& arities) {
  if (raw.is_var || raw.is_wildcard) return;
  auto [it, inserted] = arities.emplace(raw.name, raw.args.size());
  if (!inserted && it->second != raw.args.size()) {
    throw InputError("symbol '" + raw.name + "' used with arities " + std::to_string(it->second) +
                     " and " + std::to_string(raw.args.size()));
  }
  for (const RawTerm& a : raw.args) infer_rec(a, arities);
}

void print(const Term& t, std::string& out) {
  if (t.is_var()) {
    if (!t.name().empty() && !var_start(t.name()[0])) out.push_back('$');
    out += t.name();
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out.push_back('(');
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out.push_back(',');
    print(t.args()[i], out);
  }
  out.push_back(')');
}

bool valid_ident(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s) {
    if (!ident_char(c)) return false;
  }
  return true;
}

}  // namespace

RawTerm parse_raw_term(std::string_view text) { return RawParser(text).parse_all(); }

Term parse_term(std::string_view text, const Theory& theory, ParseOptions opts) {
  return resolve(parse_raw_term(text), theory, opts);
}

Theory infer_default_theory(const std::vector<RawTerm>& terms) {
  std::map<std::string, std::size_t> arities;
  for (const RawTerm& t : terms) infer_rec(t, arities);
  Theory theory;
  theory.add_absorption("f", "eps_f");
  for (const auto& [name, arity] : arities) {
    if (name == "f") {
      if (arity != 2) throw InputError("'f' is the default absorption symbol and must be binary");
      continue;
    }
    if (name == "eps_f") {
      if (arity != 0) throw InputError("'eps_f' is the default absorption constant and must be nullary");
      continue;
    }
    theory.add_symbol(name, arity);
  }
  return theory;
}

Theory Theory::parse(std::string_view text) {
  Theory theory;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string directive;
    if (!(words >> directive)) continue;
    auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
    std::string rest;
    if (directive == "absorption") {
      std::string f, eps;
      if (!(words >> f >> eps) || (words >> rest)) {
        throw InputError("expected 'absorption <f> <eps>'" + where());
      }
      if (!valid_ident(f) || !valid_ident(eps)) throw InputError("bad symbol name" + where());
      try {
        theory.add_absorption(f, eps);
      } catch (const InputError& e) {
        throw InputError(e.what() + where());
      }
    } else if (directive == "symbol") {
      std::string decl;
      if (!(words >> decl) || (words >> rest)) {
        throw InputError("expected 'symbol <name>/<arity>'" + where());
      }
      auto slash = decl.find('/');
      if (slash == std::string::npos) throw InputError("expected 'symbol <name>/<arity>'" + where());
      std::string name = decl.substr(0, slash);
      std::string digits = decl.substr(slash + 1);
      if (!valid_ident(name)) throw InputError("bad symbol name '" + name + "'" + where());
      if (digits.empty() || digits.size() > 4 ||
          digits.find_first_not_of("0123456789") != std::string::npos) {
        throw InputError("bad arity '" + digits + "'" + where());
      }
      try {
        theory.add_symbol(name, std::stoul(digits));
      } catch (const InputError& e) {
        throw InputError(e.what() + where());
      }
    } else {
      throw InputError("unknown directive '" + directive + "'" + where());
    }
  }
  return theory;
}

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Substitution& sigma) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : sigma) {
    if (!first) out += ", ";
    first = false;
    out += to_string(Term::var(x));
    out += " -> ";
    out += to_string(t);
  }
  out += "}";
  return out;
}

}  // namespace absau
