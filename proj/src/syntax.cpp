#include "evcheck/syntax.hpp"

#include <array>
#include <cctype>

#include "evcheck/error.hpp"

namespace evcheck::syntax {

std::vector<Token> tokenize(std::string_view src) {
  static constexpr std::array<std::string_view, 9> two_char = {"->", "=>", "==", "!=", "<=",
                                                               ">=", "&&", "||", "::"};
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t start_line = line;
    std::size_t start_col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) {
        ++j;
      }
      out.push_back({TokenKind::Ident, std::string(src.substr(i, j - i)), start_line, start_col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({TokenKind::Number, std::string(src.substr(i, j - i)), start_line, start_col});
      advance(j - i);
      continue;
    }
    std::string_view rest = src.substr(i);
    bool matched = false;
    for (std::string_view op : two_char) {
      if (rest.substr(0, 2) == op) {
        out.push_back({TokenKind::Punct, std::string(op), start_line, start_col});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static constexpr std::string_view singles = "()[],.:;=+-<>!{}";
    if (singles.find(c) == std::string_view::npos) {
      throw SyntaxError(start_line, start_col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({TokenKind::Punct, std::string(1, c), start_line, start_col});
    advance(1);
  }
  out.push_back({TokenKind::End, "", line, col});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t idx = pos_ + ahead;
  return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::is(std::string_view s, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return (t.kind == TokenKind::Punct || t.kind == TokenKind::Ident) && t.text == s;
}

bool TokenStream::accept(std::string_view s) {
  if (!is(s)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(std::string_view s) {
  if (!is(s)) {
    const Token& t = peek();
    fail_at(t, "expected '" + std::string(s) + "' but found " +
                   (t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'"));
  }
  return next();
}

std::string TokenStream::expect_ident() {
  const Token& t = peek();
  if (t.kind != TokenKind::Ident) {
    fail_at(t, "expected identifier but found " +
                   (t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'"));
  }
  return next().text;
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& at, const std::string& message, ErrorKind kind) const {
  throw SyntaxError(at.line, at.column, message, kind);
}

// ---------------------------------------------------------------------------

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr binary(const Token& at, std::string op, ExprPtr a, ExprPtr b) {
  Expr e{Expr::Kind::Binary, std::move(op), {}, false, {std::move(a), std::move(b)}, {},
         Sort::Nat, at.line, at.column};
  return node(std::move(e));
}

bool is_keyword(const std::string& s) {
  return s == "exists" || s == "forall" || s == "true" || s == "false" || s == "mu" ||
         s == "nu" || s == "sum" || s == "proc" || s == "init" || s == "act";
}

ExprPtr parse_implies(TokenStream& ts);

ExprPtr parse_quant(TokenStream& ts) {
  const Token& kw = ts.next();
  std::string var = ts.expect_ident();
  ts.expect(":");
  Sort sort = parse_sort(ts);
  ts.expect(".");
  ExprPtr body = parse_expr(ts);
  Expr e{Expr::Kind::Quant, kw.text, {}, false, {body}, var, sort, kw.line, kw.column};
  return node(std::move(e));
}

ExprPtr parse_primary(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.kind == TokenKind::Number) {
    ts.next();
    Expr e{Expr::Kind::Number, t.text, Natural::parse(t.text), false, {}, {}, Sort::Nat,
           t.line, t.column};
    return node(std::move(e));
  }
  if (ts.is("exists") || ts.is("forall")) return parse_quant(ts);
  if (ts.is("true") || ts.is("false")) {
    ts.next();
    Expr e{Expr::Kind::Bool, t.text, {}, t.text == "true", {}, {}, Sort::Nat, t.line, t.column};
    return node(std::move(e));
  }
  if (t.kind == TokenKind::Ident && !is_keyword(t.text)) {
    Token id = ts.next();
    if (ts.accept("(")) {
      Expr e{Expr::Kind::Call, id.text, {}, false, {}, {}, Sort::Nat, id.line, id.column};
      if (!ts.is(")")) {
        do {
          e.args.push_back(parse_expr(ts));
        } while (ts.accept(","));
      }
      ts.expect(")");
      return node(std::move(e));
    }
    Expr e{Expr::Kind::Ident, id.text, {}, false, {}, {}, Sort::Nat, id.line, id.column};
    return node(std::move(e));
  }
  if (ts.accept("(")) {
    ExprPtr inner = parse_expr(ts);
    ts.expect(")");
    return inner;
  }
  ts.fail(t.kind == TokenKind::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
}

ExprPtr parse_additive(TokenStream& ts) {
  ExprPtr lhs = parse_primary(ts);
  while (ts.is("+") || ts.is("-")) {
    const Token& op = ts.next();
    lhs = binary(op, op.text, lhs, parse_primary(ts));
  }
  return lhs;
}

bool is_comparison(const TokenStream& ts) {
  return ts.is("==") || ts.is("!=") || ts.is("<") || ts.is("<=") || ts.is(">") || ts.is(">=");
}

ExprPtr parse_compare(TokenStream& ts) {
  ExprPtr first = parse_additive(ts);
  if (!is_comparison(ts)) return first;
  ExprPtr result;
  ExprPtr left = first;
  while (is_comparison(ts)) {
    const Token& op = ts.next();
    ExprPtr right = parse_additive(ts);
    ExprPtr cmp = binary(op, op.text, left, right);
    result = result ? binary(op, "&&", result, cmp) : cmp;
    left = right;
  }
  return result;
}

ExprPtr parse_unary(TokenStream& ts) {
  if (ts.is("!")) {
    const Token& op = ts.next();
    Expr e{Expr::Kind::Unary, "!", {}, false, {parse_unary(ts)}, {}, Sort::Nat, op.line,
           op.column};
    return node(std::move(e));
  }
  return parse_compare(ts);
}

ExprPtr parse_and(TokenStream& ts) {
  ExprPtr lhs = parse_unary(ts);
  while (ts.is("&&")) {
    const Token& op = ts.next();
    lhs = binary(op, "&&", lhs, parse_unary(ts));
  }
  return lhs;
}

ExprPtr parse_or(TokenStream& ts) {
  ExprPtr lhs = parse_and(ts);
  while (ts.is("||")) {
    const Token& op = ts.next();
    lhs = binary(op, "||", lhs, parse_and(ts));
  }
  return lhs;
}

ExprPtr parse_implies(TokenStream& ts) {
  ExprPtr lhs = parse_or(ts);
  if (ts.is("=>")) {
    const Token& op = ts.next();
    return binary(op, "=>", lhs, parse_implies(ts));
  }
  return lhs;
}

}  // namespace

ExprPtr parse_expr(TokenStream& ts) {
  if (ts.is("exists") || ts.is("forall")) return parse_quant(ts);
  return parse_implies(ts);
}

Sort parse_sort(TokenStream& ts) {
  const Token& t = ts.peek();
  if (ts.accept("Nat")) return Sort::Nat;
  if (ts.accept("Bool")) return Sort::Bool;
  ts.fail_at(t, "expected sort Nat or Bool", ErrorKind::Sort);
}

Term to_term(const Expr& e, const Scope& scope) {
  auto fail = [&](const std::string& msg, ErrorKind kind) -> Term {
    throw SyntaxError(e.line, e.column, msg, kind);
  };
  switch (e.kind) {
    case Expr::Kind::Number: return Term::natural(e.number);
    case Expr::Kind::Bool: return Term::boolean(e.boolean);
    case Expr::Kind::Ident: {
      auto it = scope.find(e.text);
      if (it == scope.end()) return fail("unknown variable '" + e.text + "'", ErrorKind::UnknownVariable);
      return Term::var(e.text, it->second);
    }
    case Expr::Kind::Call:
      return fail("unexpected call '" + e.text + "(...)' in data expression", ErrorKind::Syntax);
    case Expr::Kind::Quant:
      return fail("quantifier not allowed in data expression", ErrorKind::Syntax);
    case Expr::Kind::Unary:
    case Expr::Kind::Binary: break;
  }
  try {
    if (e.kind == Expr::Kind::Unary) return Term::lnot(to_term(*e.args[0], scope));
    Term a = to_term(*e.args[0], scope);
    Term b = to_term(*e.args[1], scope);
    const std::string& op = e.text;
    if (op == "+") return Term::plus(a, b);
    if (op == "-") return Term::minus(a, b);
    if (op == "==") return Term::eq(a, b);
    if (op == "!=") return Term::lnot(Term::eq(a, b));
    if (op == "<") return Term::less(a, b);
    if (op == ">") return Term::less(b, a);
    if (op == "<=") return Term::less(a, Term::plus(b, Term::natural(1)));
    if (op == ">=") return Term::less(b, Term::plus(a, Term::natural(1)));
    if (op == "&&") return Term::land(a, b);
    if (op == "||") return Term::lor(a, b);
    if (op == "=>") return Term::implies(a, b);
  } catch (const SyntaxError&) {
    throw;
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::SortMismatch) return fail(err.what(), ErrorKind::Sort);
    throw;
  }
  return fail("unknown operator '" + e.text + "'", ErrorKind::Syntax);
}

}  // namespace evcheck::syntax
