#include <cctype>
#include <string>

#include "rankcalc/error.hpp"
#include "rankcalc/space.hpp"

namespace rankcalc {
namespace {

enum class TokenKind { kWord, kQuoted, kEquals, kLParen, kRParen, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '-' || c == '+' || c == ':';
}

class Lexer {
 public:
  explicit Lexer(std::string_view input) : input_(input) {}

  Token next() {
    while (pos_ < input_.size() && std::isspace(static_cast<unsigned char>(input_[pos_])))
      ++pos_;
    const auto start = pos_;
    if (pos_ == input_.size()) return {TokenKind::kEnd, "", start};
    const char c = input_[pos_];
    switch (c) {
      case '=': ++pos_; return {TokenKind::kEquals, "=", start};
      case '(': ++pos_; return {TokenKind::kLParen, "(", start};
      case ')': ++pos_; return {TokenKind::kRParen, ")", start};
      case '"': {
        ++pos_;
        std::string text;
        while (pos_ < input_.size() && input_[pos_] != '"') text += input_[pos_++];
        if (pos_ == input_.size()) throw ParseError("unterminated quoted value", start);
        ++pos_;
        return {TokenKind::kQuoted, std::move(text), start};
      }
      default:
        break;
    }
    if (!is_word_char(c))
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    while (pos_ < input_.size() && is_word_char(input_[pos_])) ++pos_;
    return {TokenKind::kWord, std::string(input_.substr(start, pos_ - start)), start};
  }

 private:
  std::string_view input_;
  std::size_t pos_ = 0;
};

// or_expr  := and_expr ('or' and_expr)*
// and_expr := unary ('and' unary)*
// unary    := 'not' unary | '(' or_expr ')' | name '=' value
class Parser {
 public:
  Parser(const SpacePtr& space, std::string_view input) : space_(space), lexer_(input) {
    advance();
  }

  Proposition parse() {
    auto result = parse_or();
    if (current_.kind != TokenKind::kEnd)
      throw ParseError("unexpected '" + current_.text + "'", current_.position);
    return result;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  bool at_keyword(std::string_view kw) const {
    return current_.kind == TokenKind::kWord && current_.text == kw;
  }

  Proposition parse_or() {
    auto lhs = parse_and();
    while (at_keyword("or")) {
      advance();
      lhs = lhs | parse_and();
    }
    return lhs;
  }

  Proposition parse_and() {
    auto lhs = parse_unary();
    while (at_keyword("and")) {
      advance();
      lhs = lhs & parse_unary();
    }
    return lhs;
  }

  Proposition parse_unary() {
    if (at_keyword("not")) {
      advance();
      return ~parse_unary();
    }
    if (current_.kind == TokenKind::kLParen) {
      advance();
      auto inner = parse_or();
      if (current_.kind != TokenKind::kRParen)
        throw ParseError("expected ')'", current_.position);
      advance();
      return inner;
    }
    return parse_atom();
  }

  Proposition parse_atom() {
    if (current_.kind != TokenKind::kWord || current_.text == "and" ||
        current_.text == "or")
      throw ParseError(current_.kind == TokenKind::kEnd ? "unexpected end of formula"
                                                        : "expected a variable name",
                       current_.position);
    const auto name = current_.text;
    advance();
    if (current_.kind != TokenKind::kEquals) throw ParseError("expected '='", current_.position);
    advance();
    if (current_.kind != TokenKind::kWord && current_.kind != TokenKind::kQuoted)
      throw ParseError("expected a value", current_.position);
    const auto value = current_.text;
    advance();

    const auto var = space_->variable_index(name);
    const auto val = space_->value_index(var, value);
    Proposition::Bits bits(space_->world_count());
    for (std::size_t w = 0; w < space_->world_count(); ++w)
      if (space_->value_of(w, var) == val) bits.set(w);
    return Proposition(space_, std::move(bits));
  }

  const SpacePtr& space_;
  Lexer lexer_;
  Token current_{TokenKind::kEnd, "", 0};
};

}  // namespace

Proposition eval_formula(const SpacePtr& space, std::string_view formula) {
  return Parser(space, formula).parse();
}

}  // namespace rankcalc
