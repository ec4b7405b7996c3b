#include "cutfree/syntax.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace cutfree {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

enum class Tok { Iff, Imp, Cond, Or, And, Not, Box, LParen, RParen, Comma, False, True, Ident, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> lex(std::string_view in) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view s) { return in.substr(i, s.size()) == s; };
  while (i < in.size()) {
    char c = in[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (starts("<->")) {
      out.push_back({Tok::Iff, at, "<->"});
      i += 3;
    } else if (starts("->")) {
      out.push_back({Tok::Imp, at, "->"});
      i += 2;
    } else if (starts("=>")) {
      out.push_back({Tok::Cond, at, "=>"});
      i += 2;
    } else if (starts("[]")) {
      out.push_back({Tok::Box, at, "[]"});
      i += 2;
    } else if (c == '|') {
      out.push_back({Tok::Or, at, "|"});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::And, at, "&"});
      ++i;
    } else if (c == '~') {
      out.push_back({Tok::Not, at, "~"});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, at, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, at, ")"});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, at, ","});
      ++i;
    } else if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < in.size() && (std::isalnum(static_cast<unsigned char>(in[j])) || in[j] == '_'))
        ++j;
      std::string word(in.substr(i, j - i));
      Tok kind = word == "false" ? Tok::False : word == "true" ? Tok::True : Tok::Ident;
      out.push_back({kind, at, std::move(word)});
      i = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
  }
  out.push_back({Tok::End, in.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula formula() { return parse_iff(); }

  Sequent sequent() {
    Sequent out;
    if (peek().kind == Tok::End) return out;
    out.add(formula());
    while (accept(Tok::Comma)) out.add(formula());
    expect_end();
    return out;
  }

  void expect_end() {
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept(Tok::Iff)) f = iff(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept(Tok::Imp)) return implies(f, parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_cond();
    while (accept(Tok::And)) f = conj(f, parse_cond());
    return f;
  }

  Formula parse_cond() {
    Formula f = parse_unary();
    if (accept(Tok::Cond)) {
      f = cond(f, parse_unary());
      if (peek().kind == Tok::Cond)
        throw ParseError("'=>' is non-associative; parenthesize nested conditionals", peek().pos);
    }
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return neg(parse_unary());
    if (accept(Tok::Box)) return box(parse_unary());
    return parse_atom();
  }

  Formula parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::False:
        ++pos_;
        return bot();
      case Tok::True:
        ++pos_;
        return top();
      case Tok::Ident:
        ++pos_;
        return var(t.text);
      case Tok::LParen: {
        ++pos_;
        Formula f = parse_iff();
        if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
        return f;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Precedence levels shared by parser and printer.
constexpr int kIff = 0, kImp = 1, kOr = 2, kAnd = 3, kCond = 4, kUnary = 5, kAtom = 6;

struct Symbols {
  const char* bot;
  const char* neg;
  const char* box;
  const char* conj;
  const char* cond;
};

constexpr Symbols kAscii{"false", "~", "[]", " & ", " => "};
constexpr Symbols kLatex{"\\bot", "\\neg ", "\\Box ", " \\land ", " \\Rightarrow "};

class Printer {
 public:
  Printer(PrintStyle style) : style_(style), sym_(style == PrintStyle::Latex ? kLatex : kAscii) {}

  std::string print(Formula f, int min_level) {
    int level = 0;
    std::string s = render(f, level);
    return level < min_level ? "(" + s + ")" : s;
  }

 private:
  // ~(A & ~B)
  static std::optional<std::pair<Formula, Formula>> as_imp(Formula f) {
    if (f.is(Tag::Neg) && f.arg().is(Tag::And) && f.arg().right().is(Tag::Neg))
      return std::make_pair(f.arg().left(), f.arg().right().arg());
    return std::nullopt;
  }
  // ~(~A & ~B)
  static std::optional<std::pair<Formula, Formula>> as_or(Formula f) {
    if (auto imp = as_imp(f); imp && imp->first.is(Tag::Neg))
      return std::make_pair(imp->first.arg(), imp->second);
    return std::nullopt;
  }
  // (A -> B) & (B -> A)
  static std::optional<std::pair<Formula, Formula>> as_iff(Formula f) {
    if (!f.is(Tag::And)) return std::nullopt;
    auto l = as_imp(f.left()), r = as_imp(f.right());
    if (l && r && l->first == r->second && l->second == r->first) return l;
    return std::nullopt;
  }

  std::string render(Formula f, int& level) {
    if (style_ == PrintStyle::Sugared) {
      if (f.is(Tag::Neg) && f.arg().is(Tag::Bot)) {
        level = kAtom;
        return "true";
      }
      if (auto p = as_iff(f)) {
        level = kIff;
        return print(p->first, kIff) + " <-> " + print(p->second, kImp);
      }
      if (auto p = as_or(f)) {
        level = kOr;
        return print(p->first, kOr) + " | " + print(p->second, kAnd);
      }
      if (auto p = as_imp(f)) {
        level = kImp;
        return print(p->first, kOr) + " -> " + print(p->second, kImp);
      }
    }
    switch (f.tag()) {
      case Tag::Bot:
        level = kAtom;
        return sym_.bot;
      case Tag::Var:
        level = kAtom;
        return f.name();
      case Tag::Neg:
        level = kUnary;
        return sym_.neg + print(f.arg(), kUnary);
      case Tag::Box:
        level = kUnary;
        return sym_.box + print(f.arg(), kUnary);
      case Tag::And:
        level = kAnd;
        return print(f.left(), kAnd) + sym_.conj + print(f.right(), kCond);
      case Tag::Cond:
        level = kCond;
        return print(f.left(), kUnary) + sym_.cond + print(f.right(), kUnary);
    }
    return "";
  }

  PrintStyle style_;
  Symbols sym_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Sequent parse_sequent(std::string_view text) { return Parser(text).sequent(); }

std::string print_formula(Formula f, PrintStyle style) { return Printer(style).print(f, 0); }

std::string print_sequent(const Sequent& s, PrintStyle style) {
  std::string out;
  for (Formula f : s) {
    if (!out.empty()) out += ", ";
    out += print_formula(f, style);
  }
  return out;
}

std::string print_sequent(const MarkedSequent& s, PrintStyle style) {
  std::string out;
  for (const Entry& e : s) {
    if (!out.empty()) out += ", ";
    out += print_formula(e.formula, style);
    if (e.marked) out += style == PrintStyle::Latex ? "^{\\bullet}" : "*";
  }
  return out;
}

std::string to_string(Formula f) { return print_formula(f, PrintStyle::Core); }

}  // namespace cutfree
