#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "evcheck/error.hpp"
#include "evcheck/kernel.hpp"

namespace evcheck::syntax {

enum class TokenKind { Ident, Number, Punct, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Tokenizer shared by the model, formula and PBES readers. `%` starts a
/// comment that runs to the end of the line.
std::vector<Token> tokenize(std::string_view source);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool is(std::string_view punct_or_keyword, std::size_t ahead = 0) const;
  bool accept(std::string_view punct_or_keyword);
  const Token& expect(std::string_view punct_or_keyword);
  std::string expect_ident();
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& at, const std::string& message,
                            ErrorKind kind = ErrorKind::Syntax) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Untyped expression tree; typed into Terms or predicate formulas by the
/// individual readers.
struct Expr {
  enum class Kind { Number, Bool, Ident, Call, Unary, Binary, Quant };
  Kind kind;
  std::string text;  // identifier, operator, or quantifier keyword
  Natural number;
  bool boolean = false;
  std::vector<std::shared_ptr<const Expr>> args;
  std::string bound_var;
  Sort bound_sort = Sort::Nat;
  std::size_t line = 0;
  std::size_t column = 0;
};
using ExprPtr = std::shared_ptr<const Expr>;

/// expr := quant | implies;  chained comparisons `a < b < c` become
/// conjunctions of the individual comparisons.
ExprPtr parse_expr(TokenStream& ts);
Sort parse_sort(TokenStream& ts);

/// Names in scope and their sorts.
using Scope = std::map<std::string, Sort, std::less<>>;

/// Types an expression as a data term. Identifiers outside `scope` raise a
/// SyntaxError of kind UnknownVariable; ill-sorted operators raise kind Sort.
Term to_term(const Expr& e, const Scope& scope);

}  // namespace evcheck::syntax
