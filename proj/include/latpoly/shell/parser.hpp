#pragma once

// Recursive descent parser for the shell language.
//
//   stmt    := print args | foreach [my] [$v] (in expr | (expr)) block
//            | if (expr) block [else block] | [my] $v = expr | expr
//   expr    := or;  or := and (|| and)*;  and := cmp (&& cmp)*
//   cmp     := range [(== != < > <= >=) range];  range := add [.. add]
//   add     := mul ((+|-) mul)*;  mul := unary ((*|/) unary)*
//   unary   := (-|!) unary | postfix
//   postfix := primary (-> name [(args)] | ->[expr] | . name [(args)] | [expr])*
//   primary := number | string | $v | name(args) | new Type(args) | (expr) | [args]
//
// Statements end at ';', a newline, '}' or the end of input; a statement
// ending in a block needs no separator.

#include "latpoly/shell/ast.hpp"
#include "latpoly/shell/lexer.hpp"

namespace latpoly::shell {

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Program parse_program() {
    Program p;
    skip_separators();
    while (peek().kind != Tok::End) {
      p.push_back(statement());
      end_statement();
      skip_separators();
    }
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(pos_ + k, t_.size() - 1)]; }
  const Token& next() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }
  bool is_punct(const char* p, std::size_t k = 0) const { return peek(k).kind == Tok::Punct && peek(k).text == p; }
  bool is_word(const char* w, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == w; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& tok = peek();
    throw ParseError(tok.line, tok.column, msg, tok.kind == Tok::End);
  }

  void expect(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'" + found());
    next();
  }

  std::string found() const {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::End: return " but reached end of input";
      case Tok::Newline: return " but found end of line";
      default: return " but found '" + tok.text + "'";
    }
  }

  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }
  void skip_separators() {
    while (peek().kind == Tok::Newline || is_punct(";")) next();
  }

  void end_statement() {
    if (is_punct(";")) {
      next();
      return;
    }
    if (peek().kind == Tok::Newline || peek().kind == Tok::End || is_punct("}")) return;
    if (pos_ > 0 && t_[pos_ - 1].kind == Tok::Punct && t_[pos_ - 1].text == "}") return;  // after a block
    fail("expected end of statement" + found());
  }

  std::string name_token() {
    if (peek().kind != Tok::Ident) fail("expected a name" + found());
    return next().text;
  }

  Program block() {
    skip_newlines();
    expect("{");
    Program body;
    skip_separators();
    while (!is_punct("}")) {
      if (peek().kind == Tok::End) fail("expected '}'" + found());
      body.push_back(statement());
      end_statement();
      skip_separators();
    }
    next();
    return body;
  }

  StmtPtr statement() {
    auto s = std::make_shared<Stmt>();
    s->line = peek().line;
    if (is_word("print")) {
      next();
      s->kind = StmtKind::Print;
      s->exprs = arguments(false);
      if (s->exprs.empty()) fail("print needs something to print");
      return s;
    }
    if (is_word("foreach") || is_word("for")) {
      next();
      s->kind = StmtKind::Foreach;
      s->name = "_";
      if (is_word("my")) next();
      if (peek().kind == Tok::Ident && !is_word("in")) s->name = next().text;
      if (is_word("in")) {
        next();
        s->exprs.push_back(expression());
      } else {
        expect("(");
        s->exprs.push_back(expression());
        expect(")");
      }
      s->body = block();
      return s;
    }
    if (is_word("if")) {
      next();
      s->kind = StmtKind::If;
      expect("(");
      s->exprs.push_back(expression());
      expect(")");
      s->body = block();
      std::size_t save = pos_;
      skip_newlines();
      if (is_word("else")) {
        next();
        s->has_else = true;
        s->else_body = block();
      } else {
        pos_ = save;
      }
      return s;
    }
    if (is_word("my")) next();
    ExprPtr e = expression();
    if (is_punct("=")) {
      if (e->kind != ExprKind::Var) fail("only variables can be assigned");
      next();
      skip_newlines();
      s->kind = StmtKind::Assign;
      s->name = e->text;
      s->exprs.push_back(expression());
      return s;
    }
    s->kind = StmtKind::Expr;
    s->exprs.push_back(e);
    return s;
  }

  // Comma separated arguments; `name => value` or `name = value` are named.
  std::vector<ExprPtr> arguments(bool allow_named) {
    std::vector<ExprPtr> args;
    auto one = [&] {
      if (allow_named && peek().kind == Tok::Ident && !peek().text.empty() && (is_punct("=>", 1) || is_punct("=", 1))) {
        int line = peek().line;
        std::string key = next().text;
        next();
        skip_newlines();
        args.push_back(make_expr(ExprKind::Named, key, {expression()}, line));
      } else {
        args.push_back(expression());
      }
    };
    if (peek().kind == Tok::Newline || peek().kind == Tok::End || is_punct(";") || is_punct(")") || is_punct("]") ||
        is_punct("}"))
      return args;
    one();
    while (is_punct(",")) {
      next();
      skip_newlines();
      if (is_punct(")") || is_punct("]")) break;  // trailing comma
      one();
    }
    return args;
  }

  ExprPtr binary_left(ExprPtr (Parser::*sub)(), std::initializer_list<const char*> ops) {
    ExprPtr e = (this->*sub)();
    while (true) {
      const char* hit = nullptr;
      for (const char* op : ops)
        if (is_punct(op)) hit = op;
      if (!hit) return e;
      int line = peek().line;
      next();
      skip_newlines();
      e = make_expr(ExprKind::Binary, hit, {e, (this->*sub)()}, line);
    }
  }

  ExprPtr expression() { return or_expr(); }
  ExprPtr or_expr() { return binary_left(&Parser::and_expr, {"||"}); }
  ExprPtr and_expr() { return binary_left(&Parser::cmp_expr, {"&&"}); }

  ExprPtr cmp_expr() {
    ExprPtr e = range_expr();
    for (const char* op : {"==", "!=", "<=", ">=", "<", ">"})
      if (is_punct(op)) {
        int line = peek().line;
        next();
        skip_newlines();
        return make_expr(ExprKind::Binary, op, {e, range_expr()}, line);
      }
    return e;
  }

  ExprPtr range_expr() {
    ExprPtr e = add_expr();
    if (is_punct("..")) {
      int line = peek().line;
      next();
      return make_expr(ExprKind::Range, "", {e, add_expr()}, line);
    }
    return e;
  }

  ExprPtr add_expr() { return binary_left(&Parser::mul_expr, {"+", "-"}); }
  ExprPtr mul_expr() { return binary_left(&Parser::unary_expr, {"*", "/"}); }

  ExprPtr unary_expr() {
    if (is_punct("-") || is_punct("!")) {
      int line = peek().line;
      std::string op = next().text;
      return make_expr(ExprKind::Unary, op, {unary_expr()}, line);
    }
    return postfix_expr();
  }

  ExprPtr member(ExprPtr obj) {
    int line = peek().line;
    std::string name = name_token();
    if (is_punct("(")) {
      next();
      std::vector<ExprPtr> args{obj};
      for (auto& a : arguments(false)) args.push_back(a);
      expect(")");
      return make_expr(ExprKind::Method, name, std::move(args), line);
    }
    return make_expr(ExprKind::Prop, name, {obj}, line);
  }

  ExprPtr index(ExprPtr obj) {
    int line = peek().line;
    expect("[");
    ExprPtr i = expression();
    expect("]");
    return make_expr(ExprKind::Index, "", {obj, i}, line);
  }

  ExprPtr postfix_expr() {
    ExprPtr e = primary();
    while (true) {
      if (is_punct("->")) {
        next();
        e = is_punct("[") ? index(e) : member(e);
      } else if (is_punct(".")) {
        next();
        e = member(e);
      } else if (is_punct("[")) {
        e = index(e);
      } else {
        return e;
      }
    }
  }

  std::string type_name() {
    std::string t = name_token();
    if (is_punct("<")) {
      next();
      t += "<" + name_token();
      while (is_punct(",")) {
        next();
        t += "," + name_token();
      }
      expect(">");
      t += ">";
    }
    return t;
  }

  ExprPtr primary() {
    const Token& tok = peek();
    const int line = tok.line;
    switch (tok.kind) {
      case Tok::Number: return make_expr(ExprKind::Number, next().text, {}, line);
      case Tok::String: return make_expr(ExprKind::String, next().text, {}, line);
      case Tok::Ident: {
        if (tok.text == "new") {
          next();
          std::string type = type_name();
          expect("(");
          auto args = arguments(true);
          expect(")");
          return make_expr(ExprKind::New, type, std::move(args), line);
        }
        std::string name = next().text;
        if (is_punct("(")) {
          next();
          auto args = arguments(true);
          expect(")");
          return make_expr(ExprKind::Call, name, std::move(args), line);
        }
        return make_expr(ExprKind::Var, name, {}, line);
      }
      case Tok::Punct:
        if (tok.text == "(") {
          next();
          ExprPtr e = expression();
          expect(")");
          return e;
        }
        if (tok.text == "[") {
          next();
          auto args = arguments(false);
          expect("]");
          return make_expr(ExprKind::List, "", std::move(args), line);
        }
        break;
      default: break;
    }
    fail("expected an expression" + found());
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

inline Program parse(const std::string& src) { return Parser(tokenize(src)).parse_program(); }

}  // namespace latpoly::shell
