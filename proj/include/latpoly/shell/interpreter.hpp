#pragma once

// Evaluator for parsed shell programs.

#include "latpoly/objfile.hpp"
#include "latpoly/polytope.hpp"
#include "latpoly/shell/parser.hpp"

#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace latpoly::shell {

class RuntimeError : public std::runtime_error {
 public:
  RuntimeError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Value;
using List = std::vector<Value>;

struct Nil {};
struct AllTag {};
struct GraphRef {
  std::shared_ptr<Graph> graph;
  bool immutable = false;
};
struct ObjectRef {
  std::shared_ptr<ComputationObject> obj;
};
struct ScheduleRef {
  Schedule schedule;
};
struct TypeRef {
  std::string cls;
};

struct Value {
  std::variant<Nil, bool, Rational, std::string, RatVector, RatMatrix, IndexSet, IncidenceMatrix, GraphRef,
               HasseDiagram, std::shared_ptr<List>, ObjectRef, ScheduleRef, TypeRef, AllTag>
      v;

  Value() = default;
  template <class T>
  Value(T x) : v(std::move(x)) {}
  Value(long x) : v(Rational(x)) {}
  Value(int x) : v(Rational(x)) {}
  Value(const char* s) : v(std::string(s)) {}
  Value(List l) : v(std::make_shared<List>(std::move(l))) {}

  template <class T>
  const T* as() const {
    return std::get_if<T>(&v);
  }
};

inline std::string type_name(const Value& x) {
  static const char* names[] = {"nothing", "boolean", "number",  "string",   "vector",   "matrix",
                                "set",     "incidence matrix",   "graph",    "Hasse diagram", "list",
                                "object",  "schedule", "type",   "All"};
  return names[x.v.index()];
}

inline std::string full_type_name(const std::string& cls) {
  return cls == kPolytope ? cls + "<Rational>" : cls;
}

inline std::string to_text(const Value& x) {
  std::ostringstream os;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Nil>) {
        } else if constexpr (std::is_same_v<T, bool>) {
          os << (a ? 1 : 0);
        } else if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, std::string> ||
                             std::is_same_v<T, RatVector> || std::is_same_v<T, RatMatrix>) {
          os << a;
        } else if constexpr (std::is_same_v<T, IndexSet>) {
          os << format_set(a);
        } else if constexpr (std::is_same_v<T, IncidenceMatrix>) {
          for (const auto& r : a) os << format_set(r) << '\n';
        } else if constexpr (std::is_same_v<T, GraphRef>) {
          os << *a.graph;
        } else if constexpr (std::is_same_v<T, HasseDiagram>) {
          for (const auto& n : a.nodes) os << n.dim << ' ' << format_set(n.face) << '\n';
        } else if constexpr (std::is_same_v<T, std::shared_ptr<List>>) {
          for (std::size_t i = 0; i < a->size(); ++i) os << (i ? " " : "") << to_text((*a)[i]);
        } else if constexpr (std::is_same_v<T, ObjectRef>) {
          os << full_type_name(a.obj->class_tag()) << " object";
        } else if constexpr (std::is_same_v<T, ScheduleRef>) {
          if (a.schedule.empty()) os << "(already computed)";
          auto lines = a.schedule.list();
          for (std::size_t i = 0; i < lines.size(); ++i) os << (i ? "\n" : "") << lines[i];
        } else if constexpr (std::is_same_v<T, TypeRef>) {
          os << full_type_name(a.cls);
        } else if constexpr (std::is_same_v<T, AllTag>) {
          os << "All";
        }
      },
      x.v);
  return os.str();
}

inline bool truthy(const Value& x) {
  if (auto b = x.as<bool>()) return *b;
  if (auto q = x.as<Rational>()) return *q != 0;
  if (auto s = x.as<std::string>()) return !s->empty() && *s != "0";
  if (auto l = x.as<std::shared_ptr<List>>()) return !(*l)->empty();
  if (x.as<Nil>()) return false;
  return true;
}

inline Value from_property(const PropertyValue& p) {
  return std::visit(
      [](const auto& a) -> Value {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Integer>) return Rational(a);
        else if constexpr (std::is_same_v<T, Graph>) return GraphRef{std::make_shared<Graph>(a), true};
        else return a;
      },
      p);
}

class Interpreter {
 public:
  explicit Interpreter(std::ostream& out, std::shared_ptr<Rulebase> rb = default_rulebase())
      : out_(out), rb_(std::move(rb)) {}

  void set_trace(bool on) { trace_ = on; }
  void set(const std::string& name, Value v) { vars_[name] = std::move(v); }
  const Value* lookup(const std::string& name) const {
    auto it = vars_.find(name);
    return it == vars_.end() ? nullptr : &it->second;
  }

  void run(const Program& p) {
    for (const auto& s : p) exec(s);
  }
  void run(const std::string& src) { run(parse(src)); }

 private:
  [[noreturn]] void fail(int line, const std::string& msg) const { throw RuntimeError(line, msg); }

  void exec(const StmtPtr& s) {
    try {
      switch (s->kind) {
        case StmtKind::Expr: eval(s->exprs[0]); break;
        case StmtKind::Assign: vars_[s->name] = eval(s->exprs[0]); break;
        case StmtKind::Print: {
          std::string text;
          for (const auto& e : s->exprs) text += to_text(eval(e));
          if (text.empty() || text.back() != '\n') text += '\n';
          out_ << text;
          out_.flush();
          break;
        }
        case StmtKind::Foreach: {
          List items = iterate(eval(s->exprs[0]), s->line);
          for (auto& item : items) {
            vars_[s->name] = std::move(item);
            run(s->body);
          }
          break;
        }
        case StmtKind::If:
          if (truthy(eval(s->exprs[0]))) run(s->body);
          else if (s->has_else) run(s->else_body);
          break;
      }
    } catch (const RuntimeError&) {
      throw;
    } catch (const std::exception& e) {
      fail(s->line, e.what());
    }
  }

  List iterate(const Value& x, int line) {
    List items;
    if (auto l = x.as<std::shared_ptr<List>>()) return **l;
    if (auto s = x.as<IndexSet>())
      for (int i : *s) items.emplace_back(i);
    else if (auto v = x.as<RatVector>())
      for (const auto& q : *v) items.emplace_back(q);
    else if (auto m = x.as<RatMatrix>())
      for (std::size_t i = 0; i < m->rows(); ++i) items.emplace_back(m->row_vector(i));
    else if (auto inc = x.as<IncidenceMatrix>())
      for (const auto& r : *inc) items.emplace_back(r);
    else
      fail(line, "cannot iterate over a " + type_name(x));
    return items;
  }

  // ---- conversions

  long to_long(const Value& x, int line, const char* what) const {
    auto q = x.as<Rational>();
    if (!q || !is_integral(*q) || !q->get_num().fits_slong_p()) fail(line, std::string(what) + " must be an integer");
    return q->get_num().get_si();
  }

  IndexSet to_set(const Value& x, int line) const {
    if (auto s = x.as<IndexSet>()) return *s;
    if (auto l = x.as<std::shared_ptr<List>>()) {
      IndexSet s;
      for (const auto& e : **l) s.push_back(static_cast<int>(to_long(e, line, "index")));
      return s;
    }
    if (auto v = x.as<RatVector>()) {
      IndexSet s;
      for (const auto& q : *v) s.push_back(static_cast<int>(to_long(Value(q), line, "index")));
      return s;
    }
    fail(line, "expected a set of indices, got a " + type_name(x));
  }

  RatVector to_vector(const Value& x, int line) const {
    if (auto v = x.as<RatVector>()) return *v;
    if (auto l = x.as<std::shared_ptr<List>>()) {
      RatVector v;
      for (const auto& e : **l) {
        auto q = e.as<Rational>();
        if (!q) fail(line, "vector entries must be numbers");
        v.push_back(*q);
      }
      return v;
    }
    if (auto s = x.as<IndexSet>()) return RatVector(s->begin(), s->end());
    fail(line, "expected a vector, got a " + type_name(x));
  }

  RatMatrix parse_matrix_text(const std::string& text, int line) const {
    std::vector<RatVector> rows;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) {
      if (l.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        rows.push_back(detail::parse_row(l));
      } catch (const std::exception& e) {
        fail(line, std::string("matrix text: ") + e.what());
      }
    }
    return make_matrix(rows, line);
  }

  RatMatrix make_matrix(const std::vector<RatVector>& rows, int line) const {
    if (rows.empty()) return RatMatrix(0, 0);
    for (const auto& r : rows)
      if (r.size() != rows[0].size()) fail(line, "matrix rows have different lengths");
    return RatMatrix::from_rows(rows, rows[0].size());
  }

  RatMatrix to_matrix(const Value& x, int line) const {
    if (auto m = x.as<RatMatrix>()) return *m;
    if (auto s = x.as<std::string>()) return parse_matrix_text(*s, line);
    if (auto l = x.as<std::shared_ptr<List>>()) {
      std::vector<RatVector> rows;
      for (const auto& e : **l) rows.push_back(to_vector(e, line));
      return make_matrix(rows, line);
    }
    fail(line, "expected a matrix, got a " + type_name(x));
  }

  const GraphRef& to_graph(const Value& x, int line) const {
    auto g = x.as<GraphRef>();
    if (!g) fail(line, "expected a graph, got a " + type_name(x));
    return *g;
  }

  std::shared_ptr<ComputationObject> to_object(const Value& x, int line) const {
    auto o = x.as<ObjectRef>();
    if (!o) fail(line, "expected a polytope object, got a " + type_name(x));
    return o->obj;
  }

  std::string to_string_value(const Value& x, int line) const {
    auto s = x.as<std::string>();
    if (!s) fail(line, "expected a string, got a " + type_name(x));
    return *s;
  }

  Value wrap(ComputationObject obj) {
    auto p = std::make_shared<ComputationObject>(std::move(obj));
    if (trace_) p->set_tracer([this](const RuleSpec& r) { out_ << "rule " << r.id << '\n'; });
    return ObjectRef{p};
  }

  // ---- expressions

  Value eval(const ExprPtr& e) {
    const int line = e->line;
    switch (e->kind) {
      case ExprKind::Number: return Rational(Integer(e->text));
      case ExprKind::String: return e->text;
      case ExprKind::Var: {
        if (auto v = lookup(e->text)) return *v;
        if (e->text == "All") return AllTag{};
        fail(line, "variable $" + e->text + " is not set");
      }
      case ExprKind::List: {
        List l;
        for (const auto& a : e->args) l.push_back(eval(a));
        return l;
      }
      case ExprKind::Range: {
        long lo = to_long(eval(e->args[0]), line, "range bound");
        long hi = to_long(eval(e->args[1]), line, "range bound");
        List l;
        for (long i = lo; i <= hi; ++i) l.emplace_back(i);
        return l;
      }
      case ExprKind::Unary: {
        Value a = eval(e->args[0]);
        if (e->text == "!") return !truthy(a);
        if (auto q = a.as<Rational>()) return Rational(-*q);
        if (auto v = a.as<RatVector>()) {
          RatVector r = *v;
          for (auto& x : r) x = -x;
          return r;
        }
        fail(line, "cannot negate a " + type_name(a));
      }
      case ExprKind::Binary: return binary(e);
      case ExprKind::Call: return call(e);
      case ExprKind::Named: fail(line, "named argument " + e->text + " outside a call");
      case ExprKind::New: return construct(e);
      case ExprKind::Prop: return member(eval(e->args[0]), e->text, {}, line, false);
      case ExprKind::Method: {
        Value obj = eval(e->args[0]);
        std::vector<Value> args;
        for (std::size_t i = 1; i < e->args.size(); ++i) args.push_back(eval(e->args[i]));
        return member(obj, e->text, args, line, true);
      }
      case ExprKind::Index: return index(eval(e->args[0]), eval(e->args[1]), line);
    }
    fail(line, "unhandled expression");
  }

  Value binary(const ExprPtr& e) {
    const int line = e->line;
    const std::string& op = e->text;
    if (op == "&&") return truthy(eval(e->args[0])) && truthy(eval(e->args[1]));
    if (op == "||") return truthy(eval(e->args[0])) || truthy(eval(e->args[1]));
    Value a = eval(e->args[0]);
    Value b = eval(e->args[1]);
    if (op == "==" || op == "!=") {
      bool eq;
      if (a.as<Rational>() && b.as<Rational>()) eq = *a.as<Rational>() == *b.as<Rational>();
      else eq = to_text(a) == to_text(b);
      return op == "==" ? eq : !eq;
    }
    auto qa = a.as<Rational>();
    auto qb = b.as<Rational>();
    if (op == "<" || op == ">" || op == "<=" || op == ">=") {
      if (!qa || !qb) fail(line, "comparison needs numbers");
      if (op == "<") return *qa < *qb;
      if (op == ">") return *qa > *qb;
      if (op == "<=") return *qa <= *qb;
      return *qa >= *qb;
    }
    if (qa && qb) {
      if (op == "+") return Rational(*qa + *qb);
      if (op == "-") return Rational(*qa - *qb);
      if (op == "*") return Rational(*qa * *qb);
      if (*qb == 0) fail(line, "division by zero");
      return Rational(*qa / *qb);
    }
    if ((op == "+" || op == "-") && !qa && !qb) {
      if (a.as<RatMatrix>() && b.as<RatMatrix>()) {
        RatMatrix m = *a.as<RatMatrix>();
        const RatMatrix& n = *b.as<RatMatrix>();
        if (m.rows() != n.rows() || m.cols() != n.cols()) fail(line, "matrix dimensions differ");
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = op == "+" ? Rational(m(i, j) + n(i, j)) : Rational(m(i, j) - n(i, j));
        return m;
      }
      RatVector x = to_vector(a, line), y = to_vector(b, line);
      if (x.size() != y.size())
        fail(line, "vector lengths differ (" + std::to_string(x.size()) + " and " + std::to_string(y.size()) + ")");
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = op == "+" ? Rational(x[i] + y[i]) : Rational(x[i] - y[i]);
      return x;
    }
    if (op == "*" && (qa || qb)) {
      Rational s = qa ? *qa : *qb;
      RatVector x = to_vector(qa ? b : a, line);
      for (auto& c : x) c *= s;
      return x;
    }
    fail(line, "operator " + op + " does not apply to a " + type_name(a) + " and a " + type_name(b));
  }

  Value index(const Value& x, const Value& i, int line) {
    long k = to_long(i, line, "index");
    auto check = [&](std::size_t n) {
      if (k < 0 || static_cast<std::size_t>(k) >= n)
        fail(line, "index " + std::to_string(k) + " out of range 0.." + std::to_string(static_cast<long>(n) - 1));
    };
    if (auto inc = x.as<IncidenceMatrix>()) {
      check(inc->size());
      return (*inc)[k];
    }
    if (auto m = x.as<RatMatrix>()) {
      check(m->rows());
      return m->row_vector(k);
    }
    if (auto v = x.as<RatVector>()) {
      check(v->size());
      return (*v)[k];
    }
    if (auto s = x.as<IndexSet>()) {
      check(s->size());
      return (*s)[k];
    }
    if (auto l = x.as<std::shared_ptr<List>>()) {
      check((*l)->size());
      return (**l)[k];
    }
    fail(line, "cannot index a " + type_name(x));
  }

  Value construct(const ExprPtr& e) {
    const int line = e->line;
    std::string type = e->text;
    std::string base = type.substr(0, type.find('<'));
    std::vector<std::pair<std::string, Value>> named;
    std::vector<Value> args;
    for (const auto& a : e->args) {
      if (a->kind == ExprKind::Named) named.emplace_back(a->text, eval(a->args[0]));
      else args.push_back(eval(a));
    }
    if (base == "Matrix") {
      if (args.size() != 1 || !named.empty()) fail(line, "new Matrix takes one argument");
      return to_matrix(args[0], line);
    }
    if (base == "Vector") {
      if (args.size() != 1 || !named.empty()) fail(line, "new Vector takes one argument");
      if (auto s = args[0].as<std::string>()) {
        RatMatrix m = parse_matrix_text(*s, line);
        if (m.rows() != 1) fail(line, "vector text must be one line");
        return m.row_vector(0);
      }
      return to_vector(args[0], line);
    }
    if (base == "Set") {
      if (args.size() != 1) fail(line, "new Set takes one argument");
      IndexSet s = to_set(args[0], line);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      return s;
    }
    if (base == "props::Graph" || base == "Graph") {
      if (args.size() != 1) fail(line, "new Graph takes one graph");
      return GraphRef{std::make_shared<Graph>(*to_graph(args[0], line).graph), false};
    }
    if (base == "Polytope" || base == "LatticePolytope") {
      if (!args.empty()) fail(line, "new Polytope takes named arguments, e.g. POINTS=>$M");
      return wrap(make_polytope(named, line));
    }
    fail(line, "unknown type " + type);
  }

  ComputationObject make_polytope(const std::vector<std::pair<std::string, Value>>& named, int line) {
    std::optional<RatMatrix> points, facets, eqs;
    for (const auto& [k, v] : named) {
      std::string key = k;
      for (auto& c : key) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (key == "POINTS" || key == "VERTICES") points = to_matrix(v, line);
      else if (key == "FACETS" || key == "INEQUALITIES") facets = to_matrix(v, line);
      else if (key == "AFFINE_HULL" || key == "EQUATIONS") eqs = to_matrix(v, line);
      else fail(line, "polytope: unsupported initial property " + k);
    }
    if (points && !facets && !eqs) return from_points(*points, rb_);
    if (facets && !points) return from_facets(*facets, eqs.value_or(RatMatrix(0, facets->cols())), rb_);
    fail(line, "polytope: give either POINTS or FACETS (with optional AFFINE_HULL)");
  }

  Value call(const ExprPtr& e) {
    const int line = e->line;
    const std::string& f = e->text;
    std::vector<std::pair<std::string, Value>> named;
    std::vector<Value> a;
    for (const auto& arg : e->args) {
      if (arg->kind == ExprKind::Named) named.emplace_back(arg->text, eval(arg->args[0]));
      else a.push_back(eval(arg));
    }
    auto arity = [&](std::size_t n) {
      if (a.size() != n || !named.empty())
        fail(line, f + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
    };
    if (f == "polytope") {
      if (!a.empty()) fail(line, "polytope takes named arguments, e.g. polytope(points=M)");
      return wrap(make_polytope(named, line));
    }
    if (f == "cube" || f == "cross" || f == "simplex") {
      arity(1);
      long d = to_long(a[0], line, "dimension");
      if (d < 1 || d > 12) fail(line, f + ": dimension must be between 1 and 12");
      if (f == "cube") return wrap(cube(static_cast<int>(d), rb_));
      if (f == "cross") return wrap(cross(static_cast<int>(d), rb_));
      return wrap(unit_simplex(static_cast<int>(d), rb_));
    }
    if (f == "det") {
      arity(1);
      RatMatrix m = to_matrix(a[0], line);
      if (m.rows() != m.cols()) fail(line, "det: matrix is not square");
      return det(m);
    }
    if (f == "rank") {
      arity(1);
      return Rational(static_cast<long>(rank(to_matrix(a[0], line))));
    }
    if (f == "transpose") {
      arity(1);
      return transpose(to_matrix(a[0], line));
    }
    if (f == "lin_solve") {
      arity(2);
      RatMatrix m = to_matrix(a[0], line);
      RatVector b = to_vector(a[1], line);
      if (b.size() != m.rows()) fail(line, "lin_solve: right-hand side has the wrong length");
      auto x = lin_solve(m, b);
      if (!x) fail(line, "lin_solve: system has no unique solution");
      return *x;
    }
    if (f == "minor") {
      arity(3);
      return minor_of(to_matrix(a[0], line), a[1], a[2], line);
    }
    if (f == "all_subsets_of_k") {
      arity(2);
      long k = to_long(a[0], line, "subset size");
      if (k < 0) fail(line, "all_subsets_of_k: negative size");
      List l;
      for (auto& s : all_subsets_of_k(static_cast<std::size_t>(k), to_set(a[1], line))) l.emplace_back(std::move(s));
      return l;
    }
    if (f == "sequence") {
      arity(2);
      List l;
      for (long i = to_long(a[0], line, "start"), n = to_long(a[1], line, "count"), j = 0; j < n; ++j) l.emplace_back(i + j);
      return l;
    }
    if (f == "isomorphic") {
      arity(2);
      return isomorphic(*to_graph(a[0], line).graph, *to_graph(a[1], line).graph);
    }
    if (f == "contraction_matching") {
      arity(2);
      List l;
      auto m = find_contraction_matching(*to_graph(a[0], line).graph, *to_graph(a[1], line).graph);
      if (m)
        for (auto [u, v] : *m) l.emplace_back(List{Value(u), Value(v)});
      return l;
    }
    if (f == "join") {
      arity(2);
      std::string sep = to_string_value(a[0], line), s;
      List items = iterate(a[1], line);
      for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + to_text(items[i]);
      return s;
    }
    if (f == "size") {
      arity(1);
      return Rational(static_cast<long>(iterate(a[0], line).size()));
    }
    if (f == "list_properties") {
      arity(1);
      return member(a[0], "list_properties", {}, line, true);
    }
    if (f == "get_schedule") {
      if (a.empty()) fail(line, "get_schedule needs an object");
      std::vector<Value> rest(a.begin() + 1, a.end());
      return member(a[0], "get_schedule", rest, line, true);
    }
    if (f == "save") {
      arity(2);
      save(*to_object(a[0], line), to_string_value(a[1], line));
      return Nil{};
    }
    if (f == "load") {
      arity(1);
      return wrap(load(to_string_value(a[0], line), rb_));
    }
    fail(line, "unknown function " + f);
  }

  Value minor_of(const RatMatrix& m, const Value& rows, const Value& cols, int line) {
    const bool all_rows = rows.as<AllTag>() != nullptr;
    const bool all_cols = cols.as<AllTag>() != nullptr;
    IndexSet r = all_rows ? sequence(0, static_cast<int>(m.rows()) - 1) : to_set(rows, line);
    IndexSet c = all_cols ? sequence(0, static_cast<int>(m.cols()) - 1) : to_set(cols, line);
    return minor(m, r, c);
  }

  Value member(const Value& x, const std::string& name, const std::vector<Value>& args, int line, bool called) {
    auto arity = [&](std::size_t n) {
      if (args.size() != n) fail(line, name + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
    };
    if (auto o = x.as<ObjectRef>()) {
      ComputationObject& obj = *o->obj;
      if (!called && rb_->has_property(name)) return from_property(*request(obj, name));
      if (name == "list_properties") {
        arity(0);
        List l;
        for (const auto& k : obj.list_properties()) l.emplace_back(k);
        return l;
      }
      if (name == "type") {
        arity(0);
        return TypeRef{obj.class_tag()};
      }
      if (name == "get_schedule") {
        if (args.empty()) fail(line, "get_schedule needs at least one property name");
        std::vector<std::string> keys;
        for (const auto& v : args) keys.push_back(to_string_value(v, line));
        for (const auto& k : keys)
          if (!rb_->has_property(k)) fail(line, "unknown property " + k);
        return ScheduleRef{get_schedule(obj, keys)};
      }
      fail(line, "unknown property " + name);
    }
    if (auto s = x.as<ScheduleRef>()) {
      if (name == "list") {
        arity(0);
        List l;
        for (const auto& line_text : s->schedule.list()) l.emplace_back(line_text);
        if (l.empty()) l.emplace_back("(already computed)");
        return l;
      }
      if (name == "apply") {
        arity(1);
        apply(s->schedule, *to_object(args[0], line));
        return Nil{};
      }
      fail(line, "schedules have no member " + name);
    }
    if (auto t = x.as<TypeRef>()) {
      if (name == "full_name") return full_type_name(t->cls);
      if (name == "name") return t->cls;
      fail(line, "types have no member " + name);
    }
    if (auto g = x.as<GraphRef>()) {
      if (name == "ADJACENCY") return x;
      if (name == "nodes") return Rational(static_cast<long>(g->graph->nodes()));
      if (name == "edges") return Rational(static_cast<long>(g->graph->edges()));
      if (name == "degree") {
        arity(1);
        return Rational(static_cast<long>(g->graph->degree(static_cast<int>(to_long(args[0], line, "node")))));
      }
      if (name == "adjacent_nodes") {
        arity(1);
        const auto& nb = g->graph->adjacent_nodes(static_cast<int>(to_long(args[0], line, "node")));
        return IndexSet(nb.begin(), nb.end());
      }
      if (name == "contract_edge" || name == "squeeze") {
        if (g->immutable)
          throw ImmutableProperty("this graph is a property of an object and cannot be changed; copy it with "
                                  "new props::Graph(...)");
        if (name == "squeeze") {
          arity(0);
          g->graph->squeeze();
          return Nil{};
        }
        arity(2);
        g->graph->contract_edge(static_cast<int>(to_long(args[0], line, "node")),
                                static_cast<int>(to_long(args[1], line, "node")));
        return Nil{};
      }
      fail(line, "graphs have no member " + name);
    }
    if (auto m = x.as<RatMatrix>()) {
      if (name == "minor") {
        arity(2);
        return minor_of(*m, args[0], args[1], line);
      }
      if (name == "rows") return Rational(static_cast<long>(m->rows()));
      if (name == "cols") return Rational(static_cast<long>(m->cols()));
      fail(line, "matrices have no member " + name);
    }
    if (name == "size" || name == "dim") return Rational(static_cast<long>(iterate(x, line).size()));
    fail(line, "a " + type_name(x) + " has no member " + name);
  }

  std::ostream& out_;
  std::shared_ptr<Rulebase> rb_;
  std::map<std::string, Value> vars_;
  bool trace_ = false;
};

}  // namespace latpoly::shell
