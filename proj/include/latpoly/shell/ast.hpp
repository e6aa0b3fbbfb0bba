#pragma once

// Syntax tree of the shell language and a printer whose output parses back
// to an equal tree.

#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace latpoly::shell {

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

enum class ExprKind {
  Number,    // text
  String,    // text
  Var,       // text
  List,      // [args...]
  Range,     // args[0] .. args[1]
  Unary,     // text = op, args[0]
  Binary,    // text = op, args[0], args[1]
  Call,      // text = function name, args
  Named,     // text = key, args[0]  (only inside argument lists)
  New,       // text = type name, args
  Prop,      // args[0] . text
  Method,    // args[0] -> text (args[1..])
  Index,     // args[0] -> [args[1]]
};

struct Expr {
  ExprKind kind;
  std::string text;
  std::vector<ExprPtr> args;
  int line = 0;
};

inline ExprPtr make_expr(ExprKind k, std::string text, std::vector<ExprPtr> args = {}, int line = 0) {
  return std::make_shared<Expr>(Expr{k, std::move(text), std::move(args), line});
}

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

enum class StmtKind {
  Expr,     // exprs[0]
  Assign,   // name = exprs[0]
  Print,    // exprs
  Foreach,  // name, exprs[0], body
  If,       // exprs[0], body, else_body
};

struct Stmt {
  StmtKind kind;
  std::string name;
  std::vector<ExprPtr> exprs;
  std::vector<StmtPtr> body;
  std::vector<StmtPtr> else_body;
  bool has_else = false;
  int line = 0;
};

using Program = std::vector<StmtPtr>;

// Structural equality; line numbers are ignored.
inline bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->text != b->text || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

inline bool equal(const Program& a, const Program& b);

inline bool equal(const StmtPtr& a, const StmtPtr& b) {
  if (a->kind != b->kind || a->name != b->name || a->has_else != b->has_else) return false;
  if (a->exprs.size() != b->exprs.size()) return false;
  for (std::size_t i = 0; i < a->exprs.size(); ++i)
    if (!equal(a->exprs[i], b->exprs[i])) return false;
  return equal(a->body, b->body) && equal(a->else_body, b->else_body);
}

inline bool equal(const Program& a, const Program& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '$': out += "\\$"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

inline void print_expr(std::ostream& os, const ExprPtr& e);

inline void print_args(std::ostream& os, const std::vector<ExprPtr>& args, std::size_t from = 0) {
  for (std::size_t i = from; i < args.size(); ++i) {
    if (i > from) os << ", ";
    print_expr(os, args[i]);
  }
}

inline void print_expr(std::ostream& os, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Number: os << e->text; break;
    case ExprKind::String: os << quote(e->text); break;
    case ExprKind::Var: os << '$' << e->text; break;
    case ExprKind::List:
      os << '[';
      print_args(os, e->args);
      os << ']';
      break;
    case ExprKind::Range:
      os << '(';
      print_expr(os, e->args[0]);
      os << "..";
      print_expr(os, e->args[1]);
      os << ')';
      break;
    case ExprKind::Unary:
      os << '(' << e->text;
      print_expr(os, e->args[0]);
      os << ')';
      break;
    case ExprKind::Binary:
      os << '(';
      print_expr(os, e->args[0]);
      os << ' ' << e->text << ' ';
      print_expr(os, e->args[1]);
      os << ')';
      break;
    case ExprKind::Call:
      os << e->text << '(';
      print_args(os, e->args);
      os << ')';
      break;
    case ExprKind::Named:
      os << e->text << " => ";
      print_expr(os, e->args[0]);
      break;
    case ExprKind::New:
      os << "new " << e->text << '(';
      print_args(os, e->args);
      os << ')';
      break;
    case ExprKind::Prop:
      print_expr(os, e->args[0]);
      os << "->" << e->text;
      break;
    case ExprKind::Method:
      print_expr(os, e->args[0]);
      os << "->" << e->text << '(';
      print_args(os, e->args, 1);
      os << ')';
      break;
    case ExprKind::Index:
      print_expr(os, e->args[0]);
      os << "->[";
      print_expr(os, e->args[1]);
      os << ']';
      break;
  }
}

inline void print_program(std::ostream& os, const Program& p, int indent = 0);

inline void print_stmt(std::ostream& os, const StmtPtr& s, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad;
  switch (s->kind) {
    case StmtKind::Expr:
      print_expr(os, s->exprs[0]);
      os << ";\n";
      break;
    case StmtKind::Assign:
      os << '$' << s->name << " = ";
      print_expr(os, s->exprs[0]);
      os << ";\n";
      break;
    case StmtKind::Print:
      os << "print ";
      print_args(os, s->exprs);
      os << ";\n";
      break;
    case StmtKind::Foreach:
      os << "foreach $" << s->name << " in ";
      print_expr(os, s->exprs[0]);
      os << " {\n";
      print_program(os, s->body, indent + 1);
      os << pad << "}\n";
      break;
    case StmtKind::If:
      os << "if (";
      print_expr(os, s->exprs[0]);
      os << ") {\n";
      print_program(os, s->body, indent + 1);
      os << pad << '}';
      if (s->has_else) {
        os << " else {\n";
        print_program(os, s->else_body, indent + 1);
        os << pad << '}';
      }
      os << '\n';
      break;
  }
}

inline void print_program(std::ostream& os, const Program& p, int indent) {
  for (const auto& s : p) print_stmt(os, s, indent);
}

inline std::string to_source(const Program& p) {
  std::ostringstream os;
  print_program(os, p);
  return os.str();
}

}  // namespace latpoly::shell
