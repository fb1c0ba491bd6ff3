#include "cyclopoint/parse.hpp"

#include <algorithm>
#include <cctype>

namespace cyclopoint {

namespace {

struct Token {
  enum Kind { number, name, plus, minus, star, caret, lparen, rparen, end };
  Kind kind = end;
  std::string text;
  std::size_t column = 0;  // 1-based
};

[[noreturn]] void fail(std::size_t column, const std::string& message) {
  throw parse_error("column " + std::to_string(column) + ": " + message);
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::number, text.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::name, text.substr(i, j - i), col});
      i = j;
      continue;
    }
    Token::Kind kind;
    switch (c) {
      case '+': kind = Token::plus; break;
      case '-': kind = Token::minus; break;
      case '*': kind = Token::star; break;
      case '^': kind = Token::caret; break;
      case '(': kind = Token::lparen; break;
      case ')': kind = Token::rparen; break;
      default: fail(col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), col});
    ++i;
  }
  out.push_back({Token::end, "", text.size() + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  poly::SparsePoly run() {
    poly::SparsePoly p = expr();
    if (peek().kind != Token::end) fail(peek().column, "unexpected trailing input");
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  poly::SparsePoly expr() {
    poly::SparsePoly p = term();
    while (peek().kind == Token::plus || peek().kind == Token::minus) {
      const Token op = take();
      if (op.kind == Token::plus)
        p = poly::add(p, term());
      else
        p = poly::sub(p, term());
    }
    return p;
  }

  poly::SparsePoly term() {
    poly::SparsePoly p = factor();
    while (peek().kind == Token::star) {
      take();
      p = poly::mul(p, factor());
    }
    return p;
  }

  poly::SparsePoly factor() {
    poly::SparsePoly a = atom();
    if (peek().kind == Token::caret) {
      take();
      if (peek().kind != Token::number)
        fail(peek().column, "exponent must be a nonnegative integer");
      const Token e = take();
      if (e.text.size() > 6) fail(e.column, "exponent out of range");
      a = poly::pow(a, std::stoi(e.text));
    }
    return a;
  }

  poly::SparsePoly atom() {
    const Token t = take();
    switch (t.kind) {
      case Token::number:
        return poly::constant(poly_variables(), Rational(Int(t.text)));
      case Token::name: {
        const auto& vars = poly_variables();
        if (std::find(vars.begin(), vars.end(), t.text) == vars.end())
          fail(t.column, "unknown variable '" + t.text + "'");
        return poly::variable(vars, t.text);
      }
      case Token::lparen: {
        poly::SparsePoly p = expr();
        if (peek().kind != Token::rparen) fail(peek().column, "expected ')'");
        take();
        return p;
      }
      case Token::minus:
        return poly::neg(atom());
      default:
        fail(t.column, "expected a number, variable, '(' or '-'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

const std::vector<std::string>& poly_variables() {
  static const std::vector<std::string> vars = {"n", "s", "x", "y", "x1", "x2", "y1", "y2"};
  return vars;
}

poly::SparsePoly parse_poly(const std::string& text) { return Parser(text).run(); }

std::string render_poly(const poly::SparsePoly& f) { return poly::to_string(f); }

}  // namespace cyclopoint
