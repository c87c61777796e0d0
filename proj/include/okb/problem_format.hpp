//===--- problem_format.hpp - Equational-system input files --------------===//
//
// Part of the okb toolkit. Licensed under the Apache License v2.0.
// See LICENSE for license information.
//
//===----------------------------------------------------------------------===//
//
// A minimal TPDB-old-style format:
//
//   (VAR x y)
//   (EQUATIONS minus(x,0) == x ...)      for .es files
//   (RULES minus(x,0) -> x ...)          for .trs files
//   (COMMENT anything, parens balanced)
//
// Identifiers declared under VAR are variables everywhere; every other
// identifier is a function symbol whose arity is fixed by first use.
// Undeclared identifiers in term position become constants, with a lint
// warning. Tokens are delimited by whitespace, parentheses and commas;
// the exact tokens == and -> are reserved.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "okb/rewrite.hpp"
#include "okb/term.hpp"

namespace okb {

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, std::size_t col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

struct ParsedProblem {
  std::vector<Equation> equations;
  std::vector<Rule> rules;
  std::set<Variable> variables;
  Signature signature;
  std::vector<std::string> warnings;
};

namespace detail {

struct Token {
  enum class Kind { LParen, RParen, Comma, EqEq, Arrow, Ident, End } kind;
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '+' ||
         c == '*' || c == '/' || c == '<' || c == '>' || c == '=' ||
         c == '.' || c == '-';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      bump();
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::Kind::End;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (c == '(') {
      current_ = {Token::Kind::LParen, "(", line_, col_};
      bump();
      return;
    }
    if (c == ')') {
      current_ = {Token::Kind::RParen, ")", line_, col_};
      bump();
      return;
    }
    if (c == ',') {
      current_ = {Token::Kind::Comma, ",", line_, col_};
      bump();
      return;
    }
    if (!ident_char(c))
      throw parse_error(line_, col_,
                        std::string("unexpected character '") + c + "'");
    std::string run;
    std::size_t l = line_, co = col_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) {
      run += text_[pos_];
      bump();
    }
    Token::Kind kind = Token::Kind::Ident;
    if (run == "==") kind = Token::Kind::EqEq;
    if (run == "->") kind = Token::Kind::Arrow;
    current_ = {kind, run, l, co};
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

class ProblemParser {
 public:
  explicit ProblemParser(const std::string& text) : lex_(text) {}

  ParsedProblem parse() {
    while (lex_.peek().kind != Token::Kind::End) {
      expect(Token::Kind::LParen, "'('");
      Token keyword = expect(Token::Kind::Ident, "a block keyword");
      if (keyword.text == "VAR") {
        parse_vars();
      } else if (keyword.text == "EQUATIONS") {
        parse_pairs(true);
      } else if (keyword.text == "RULES") {
        parse_pairs(false);
      } else if (keyword.text == "COMMENT") {
        skip_balanced();
      } else {
        throw parse_error(keyword.line, keyword.col,
                          "unknown block '" + keyword.text + "'");
      }
    }
    return std::move(out_);
  }

  Term parse_single_term() {
    Term t = parse_term();
    Token end = lex_.peek();
    if (end.kind != Token::Kind::End)
      throw parse_error(end.line, end.col,
                        "trailing input after term: '" + end.text + "'");
    return t;
  }

  void declare_vars(const std::set<Variable>& vars) {
    out_.variables = vars;
  }

 private:
  void parse_vars() {
    while (lex_.peek().kind == Token::Kind::Ident) {
      Token t = lex_.next();
      if (out_.signature.contains(t.text))
        throw parse_error(t.line, t.col,
                          "'" + t.text +
                              "' is already a function symbol; variable and "
                              "symbol names must be disjoint");
      out_.variables.insert(Variable{t.text});
    }
    expect(Token::Kind::RParen, "')'");
  }

  void parse_pairs(bool equations) {
    while (lex_.peek().kind != Token::Kind::RParen) {
      Term lhs = parse_term();
      Token sep = lex_.next();
      if (equations && sep.kind != Token::Kind::EqEq)
        throw parse_error(sep.line, sep.col, "expected '==' between equation "
                                             "sides, got '" + sep.text + "'");
      if (!equations && sep.kind != Token::Kind::Arrow)
        throw parse_error(sep.line, sep.col,
                          "expected '->' between rule sides, got '" +
                              sep.text + "'");
      Term rhs = parse_term();
      if (equations)
        out_.equations.push_back({std::move(lhs), std::move(rhs)});
      else
        out_.rules.push_back({std::move(lhs), std::move(rhs)});
    }
    lex_.next();
  }

  Term parse_term() {
    Token head = lex_.peek();
    if (head.kind != Token::Kind::Ident)
      throw parse_error(head.line, head.col,
                        "expected a term, got '" + head.text + "'");
    lex_.next();
    bool is_var = out_.variables.count(Variable{head.text}) > 0;
    if (lex_.peek().kind != Token::Kind::LParen) {
      if (is_var) return Term::var(head.text);
      if (!out_.signature.contains(head.text)) {
        out_.warnings.push_back("undeclared identifier '" + head.text +
                                "' treated as a constant (line " +
                                std::to_string(head.line) + ")");
      }
      add_symbol(head, 0);
      return Term::fun(head.text);
    }
    if (is_var)
      throw parse_error(head.line, head.col,
                        "variable '" + head.text +
                            "' cannot be applied to arguments");
    lex_.next();  // '('
    std::vector<Term> args;
    if (lex_.peek().kind != Token::Kind::RParen) {
      args.push_back(parse_term());
      while (lex_.peek().kind == Token::Kind::Comma) {
        lex_.next();
        args.push_back(parse_term());
      }
    }
    expect(Token::Kind::RParen, "')'");
    add_symbol(head, args.size());
    return Term::fun(head.text, std::move(args));
  }

  void add_symbol(const Token& tok, std::size_t arity) {
    if (out_.signature.contains(tok.text) &&
        out_.signature.arity(tok.text) != arity)
      throw parse_error(tok.line, tok.col,
                        "symbol '" + tok.text + "' used with arity " +
                            std::to_string(out_.signature.arity(tok.text)) +
                            " and " + std::to_string(arity));
    out_.signature.add(tok.text, arity);
  }

  void skip_balanced() {
    std::size_t depth = 1;
    while (depth > 0) {
      Token t = lex_.next();
      if (t.kind == Token::Kind::End)
        throw parse_error(t.line, t.col, "unterminated COMMENT block");
      if (t.kind == Token::Kind::LParen) ++depth;
      if (t.kind == Token::Kind::RParen) --depth;
    }
  }

  Token expect(Token::Kind kind, const char* what) {
    Token t = lex_.next();
    if (t.kind != kind)
      throw parse_error(t.line, t.col, std::string("expected ") + what +
                                           ", got '" + t.text + "'");
    return t;
  }

  Lexer lex_;
  ParsedProblem out_;
};

}  // namespace detail

/// Parses an equational-system or rule file. Throws parse_error with a
/// line and column on malformed input; lint findings land in warnings.
inline ParsedProblem parse_problem(const std::string& text) {
  detail::ProblemParser parser(text);
  return parser.parse();
}

/// Parses one term against a fixed variable set, fixing arities by first
/// use (for command-line term arguments).
inline Term parse_term_text(const std::string& text,
                            const std::set<Variable>& variables) {
  detail::ProblemParser parser(text);
  parser.declare_vars(variables);
  return parser.parse_single_term();
}

}  // namespace okb
