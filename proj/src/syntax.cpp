#include <cctype>
#include <string>

#include "modaldef/error.hpp"
#include "modaldef/formula.hpp"

namespace modaldef {

bool is_valid_symbol(std::string_view name, bool allow_reserved) {
  if (name.empty()) return false;
  if (name.starts_with(kFreshPrefix)) {
    if (!allow_reserved || name.size() == kFreshPrefix.size()) return false;
    for (char c : name.substr(kFreshPrefix.size())) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }
  if (!(name[0] >= 'a' && name[0] <= 'z')) return false;
  for (char c : name) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, ParseOptions options) : text_(text), options_(options) {}

  Formula run() {
    Formula f = implication();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_).starts_with(tok);
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  Formula negated(const Formula& f, std::size_t at) {
    try {
      return negate(f);
    } catch (const FragmentError& e) {
      throw ParseError(std::string("negation over a team connective (") + e.what() + ")", at);
    }
  }

  // a -> b is right associative; a <-> b chains to the left.
  Formula implication() {
    Formula lhs = intuitionistic();
    for (;;) {
      std::size_t at = pos_;
      if (accept("->")) {
        Formula rhs = implication();
        return Formula::disj(negated(lhs, at), rhs);
      }
      if (accept("<->")) {
        Formula rhs = intuitionistic();
        lhs = Formula::conj(Formula::disj(negated(lhs, at), rhs),
                            Formula::disj(negated(rhs, at), lhs));
        continue;
      }
      return lhs;
    }
  }

  Formula intuitionistic() {
    Formula lhs = disjunction();
    while (accept("\\/")) lhs = Formula::idisj(lhs, disjunction());
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (accept("|")) lhs = Formula::disj(lhs, conjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (accept("&")) lhs = Formula::conj(lhs, unary());
    return lhs;
  }

  Formula unary() {
    skip_ws();
    std::size_t at = pos_;
    if (accept("~") || accept("!")) return negated(unary(), at);
    if (accept("[]")) return Formula::box(unary());
    if (accept("<>")) return Formula::dia(unary());
    if (accept("[u]")) return Formula::ubox(unary());
    if (accept("<u>")) return Formula::udia(unary());
    return primary();
  }

  Formula primary() {
    skip_ws();
    if (accept("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    std::size_t start = pos_;
    std::string name = identifier();
    if (name == "dep" && peek("(")) return dependence(start);
    if (!is_valid_symbol(name, options_.allow_reserved)) {
      pos_ = start;
      if (name.starts_with(kFreshPrefix)) fail("symbol '" + name + "' uses the reserved prefix _f");
      fail(name.empty() ? "expected a formula" : "invalid proposition symbol '" + name + "'");
    }
    return Formula::atom(std::move(name));
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula dependence(std::size_t start) {
    expect("(");
    std::vector<Formula> args;
    if (!peek(";")) {
      args.push_back(implication());
      while (accept(",")) args.push_back(implication());
    }
    expect(";");
    Formula target = implication();
    expect(")");
    try {
      return Formula::dep(std::move(args), std::move(target));
    } catch (const FragmentError& e) {
      throw ParseError(e.what(), start);
    }
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

// Binding strength; higher binds tighter.
int precedence(Kind k) {
  switch (k) {
    case Kind::idisj: return 1;
    case Kind::disj: return 2;
    case Kind::conj: return 3;
    case Kind::dia:
    case Kind::box:
    case Kind::ubox:
    case Kind::udia:
    case Kind::neg_atom: return 4;
    default: return 5;
  }
}

void render_to(const Formula& f, int min_prec, std::string& out) {
  const int prec = precedence(f.kind());
  const bool paren = prec < min_prec;
  if (paren) out += '(';
  switch (f.kind()) {
    case Kind::atom: out += f.name(); break;
    case Kind::neg_atom: out += '~'; out += f.name(); break;
    case Kind::conj:
    case Kind::disj:
    case Kind::idisj: {
      const char* op = f.kind() == Kind::conj ? " & " : f.kind() == Kind::disj ? " | " : " \\/ ";
      render_to(f.left(), prec, out);
      out += op;
      render_to(f.right(), prec + 1, out);
      break;
    }
    case Kind::dia: out += "<>"; render_to(f.body(), 4, out); break;
    case Kind::box: out += "[]"; render_to(f.body(), 4, out); break;
    case Kind::ubox: out += "[u] "; render_to(f.body(), 4, out); break;
    case Kind::udia: out += "<u> "; render_to(f.body(), 4, out); break;
    case Kind::dep: {
      out += "dep(";
      auto args = f.args();
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        render_to(args[i], 0, out);
      }
      out += "; ";
      render_to(f.target(), 0, out);
      out += ')';
      break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

Formula parse(std::string_view text, ParseOptions options) { return Parser(text, options).run(); }

std::string render(const Formula& f) {
  std::string out;
  render_to(f, 0, out);
  return out;
}

}  // namespace modaldef
