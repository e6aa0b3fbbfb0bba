#pragma once

// Rule-based lazy property engine.
//
// An object is a bag of named immutable properties plus a class tag. Rules
// declare which properties they read (sources) and produce (targets). A
// request for a missing property is answered by a shortest-path search over
// sets of known property names, followed by running the chosen rules in
// order. Subclasses carry preconditions that are themselves properties; a
// rule that needs a subclass implicitly depends on those preconditions.

#include "latpoly/exactmath.hpp"
#include "latpoly/geometry.hpp"
#include "latpoly/graph.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

namespace latpoly {

using PropertyValue =
    std::variant<bool, Integer, Rational, RatVector, RatMatrix, IncidenceMatrix, Graph, HasseDiagram>;
using ValuePtr = std::shared_ptr<const PropertyValue>;

enum class ValueKind { Boolean, Integer, Rational, Vector, Matrix, Incidence, Graph, Hasse };

inline ValueKind kind_of(const PropertyValue& v) { return static_cast<ValueKind>(v.index()); }

inline const char* kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::Boolean: return "Boolean";
    case ValueKind::Integer: return "Integer";
    case ValueKind::Rational: return "Rational";
    case ValueKind::Vector: return "Vector";
    case ValueKind::Matrix: return "Matrix";
    case ValueKind::Incidence: return "IncidenceMatrix";
    case ValueKind::Graph: return "Graph";
    case ValueKind::Hasse: return "HasseDiagram";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// errors

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownProperty : public EngineError {
 public:
  explicit UnknownProperty(const std::string& key) : EngineError("unknown property " + key) {}
};

class RegistrationError : public EngineError {
 public:
  using EngineError::EngineError;
};

class UnsatisfiableRequest : public EngineError {
 public:
  UnsatisfiableRequest(std::vector<std::string> missing, const std::string& msg)
      : EngineError(msg), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

class CastRefused : public EngineError {
 public:
  CastRefused(std::string target_class, std::string condition, const std::string& msg)
      : EngineError(msg), target_class_(std::move(target_class)), condition_(std::move(condition)) {}
  const std::string& target_class() const { return target_class_; }
  const std::string& failed_condition() const { return condition_; }

 private:
  std::string target_class_;
  std::string condition_;
};

class RuleFailure : public EngineError {
 public:
  RuleFailure(std::string rule_id, const std::string& what)
      : EngineError("rule " + rule_id + " failed: " + what), rule_id_(std::move(rule_id)) {}
  const std::string& rule_id() const { return rule_id_; }

 private:
  std::string rule_id_;
};

class ImmutableProperty : public EngineError {
 public:
  using EngineError::EngineError;
};

// ---------------------------------------------------------------------------
// registry

struct PropertySpec {
  std::string name;
  ValueKind kind;
  std::string owner_class;  // least class on which the property is defined
};

struct ClassSpec {
  std::string name;
  std::string parent;  // empty for the root
  std::vector<std::pair<std::string, bool>> precondition;
};

using RuleBody = std::function<std::vector<PropertyValue>(std::span<const ValuePtr>)>;

struct RuleSpec {
  std::string id;
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  std::string required_class;
  int weight = 1;
  RuleBody body;

  /// "TARGETS : SOURCES"
  std::string signature() const {
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
      return s;
    };
    return join(targets) + " : " + join(sources);
  }
};

class Rulebase {
 public:
  static constexpr std::size_t kMaxProperties = 64;

  void register_class(ClassSpec c) {
    if (c.name.empty()) throw RegistrationError("class needs a name");
    if (classes_.count(c.name)) throw RegistrationError("duplicate class " + c.name);
    if (!c.parent.empty() && !classes_.count(c.parent)) throw RegistrationError("unknown parent class " + c.parent);
    for (const auto& [key, value] : c.precondition) {
      if (!has_property(key)) throw RegistrationError("class " + c.name + ": unknown precondition property " + key);
      if (property(key).kind != ValueKind::Boolean)
        throw RegistrationError("class " + c.name + ": precondition " + key + " is not Boolean");
    }
    classes_.emplace(c.name, std::move(c));
  }

  void register_property(PropertySpec p) {
    if (index_.count(p.name)) throw RegistrationError("duplicate property " + p.name);
    if (!classes_.count(p.owner_class)) throw RegistrationError("property " + p.name + ": unknown class " + p.owner_class);
    if (properties_.size() == kMaxProperties) throw RegistrationError("too many properties");
    index_.emplace(p.name, properties_.size());
    properties_.push_back(std::move(p));
  }

  void register_rule(RuleSpec r) {
    if (r.id.empty()) throw RegistrationError("rule needs an id");
    for (const auto& existing : rules_)
      if (existing.id == r.id) throw RegistrationError("duplicate rule id " + r.id);
    if (r.targets.empty()) throw RegistrationError("rule " + r.id + " has no targets");
    if (r.weight <= 0) throw RegistrationError("rule " + r.id + " needs a positive weight");
    if (!r.body) throw RegistrationError("rule " + r.id + " has no body");
    if (!classes_.count(r.required_class)) throw RegistrationError("rule " + r.id + ": unknown class " + r.required_class);
    for (const auto* keys : {&r.sources, &r.targets})
      for (const auto& k : *keys)
        if (!has_property(k)) throw RegistrationError("rule " + r.id + ": unknown property " + k);
    for (const auto& s : r.sources)
      for (const auto& t : r.targets)
        if (s == t) throw RegistrationError("rule " + r.id + ": " + s + " is both source and target");
    rules_.push_back(std::move(r));
  }

  bool has_property(const std::string& name) const { return index_.count(name) > 0; }
  const PropertySpec& property(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownProperty(name);
    return properties_[it->second];
  }
  std::size_t property_index(const std::string& name) const {
    property(name);
    return index_.at(name);
  }
  const std::vector<PropertySpec>& properties() const { return properties_; }

  bool has_class(const std::string& name) const { return classes_.count(name) > 0; }
  const ClassSpec& class_spec(const std::string& name) const {
    auto it = classes_.find(name);
    if (it == classes_.end()) throw EngineError("unknown class " + name);
    return it->second;
  }

  /// `derived` equals `base` or lies below it in the hierarchy.
  bool is_descendant_or_equal(const std::string& derived, const std::string& base) const {
    for (std::string c = derived; !c.empty(); c = class_spec(c).parent)
      if (c == base) return true;
    return false;
  }

  /// Classes strictly below `from`, down to and including `to`, top-down.
  std::vector<std::string> path_down(const std::string& from, const std::string& to) const {
    std::vector<std::string> path;
    for (std::string c = to; c != from; c = class_spec(c).parent) {
      if (c.empty()) throw EngineError(to + " is not a subclass of " + from);
      path.push_back(c);
    }
    return {path.rbegin(), path.rend()};
  }

  const std::vector<RuleSpec>& rules() const { return rules_; }

 private:
  std::map<std::string, ClassSpec> classes_;
  std::vector<PropertySpec> properties_;
  std::map<std::string, std::size_t> index_;
  std::vector<RuleSpec> rules_;
};

// ---------------------------------------------------------------------------
// objects

class ComputationObject {
 public:
  using Tracer = std::function<void(const RuleSpec&)>;

  ComputationObject(std::shared_ptr<Rulebase> rb, std::string class_tag)
      : rulebase_(std::move(rb)), class_tag_(std::move(class_tag)) {
    rulebase_->class_spec(class_tag_);
  }

  const Rulebase& rulebase() const { return *rulebase_; }
  std::shared_ptr<Rulebase> rulebase_ptr() const { return rulebase_; }
  const std::string& class_tag() const { return class_tag_; }

  bool has(const std::string& key) const { return find(key) != nullptr; }

  ValuePtr get(const std::string& key) const {
    auto p = find(key);
    if (!p) throw EngineError("property " + key + " has not been computed");
    return p;
  }

  /// Stores a value; returns false (and keeps the old value) if the property
  /// is already set.
  bool set(const std::string& key, PropertyValue value) {
    const auto& spec = rulebase_->property(key);
    if (kind_of(value) != spec.kind)
      throw EngineError("property " + key + " expects " + kind_name(spec.kind) + ", got " + kind_name(kind_of(value)));
    if (has(key)) return false;
    store_.emplace_back(key, std::make_shared<const PropertyValue>(std::move(value)));
    return true;
  }

  std::vector<std::string> list_properties() const {
    std::vector<std::string> keys;
    for (const auto& [k, v] : store_) keys.push_back(k);
    return keys;
  }

  const std::vector<std::pair<std::string, ValuePtr>>& store() const { return store_; }

  /// Moves the class tag down the hierarchy; never up.
  void set_class(const std::string& c) {
    if (!rulebase_->is_descendant_or_equal(c, class_tag_))
      throw EngineError("cannot move class from " + class_tag_ + " to " + c);
    class_tag_ = c;
  }

  std::size_t rules_executed() const { return rules_executed_; }
  void count_rule() { ++rules_executed_; }

  void set_tracer(Tracer t) { tracer_ = std::move(t); }
  const Tracer& tracer() const { return tracer_; }

  std::vector<std::string>& warnings() { return warnings_; }

 private:
  ValuePtr find(const std::string& key) const {
    for (const auto& [k, v] : store_)
      if (k == key) return v;
    return nullptr;
  }

  std::shared_ptr<Rulebase> rulebase_;
  std::string class_tag_;
  std::vector<std::pair<std::string, ValuePtr>> store_;
  std::size_t rules_executed_ = 0;
  Tracer tracer_;
  std::vector<std::string> warnings_;
};

inline std::vector<std::string> list_properties(const ComputationObject& obj) { return obj.list_properties(); }

// ---------------------------------------------------------------------------
// scheduling

struct Schedule {
  std::vector<const RuleSpec*> rules;

  bool empty() const { return rules.empty(); }
  int total_weight() const {
    int w = 0;
    for (auto* r : rules) w += r->weight;
    return w;
  }
  /// One "TARGETS : SOURCES" line per rule.
  std::vector<std::string> list() const {
    std::vector<std::string> lines;
    for (auto* r : rules) lines.push_back(r->signature());
    return lines;
  }
};

namespace detail {

using KeyMask = std::uint64_t;

inline KeyMask mask_of(const Rulebase& rb, const std::vector<std::string>& keys) {
  KeyMask m = 0;
  for (const auto& k : keys) m |= KeyMask{1} << rb.property_index(k);
  return m;
}

inline KeyMask object_mask(const ComputationObject& obj) { return mask_of(obj.rulebase(), obj.list_properties()); }

/// Sources of `r` plus the preconditions of every class between the
/// object's class and the rule's required class. Empty if the rule cannot
/// apply to objects of this class at all.
inline std::optional<KeyMask> effective_sources(const Rulebase& rb, const RuleSpec& r, const std::string& cls) {
  KeyMask m = mask_of(rb, r.sources);
  if (rb.is_descendant_or_equal(cls, r.required_class)) return m;
  if (!rb.is_descendant_or_equal(r.required_class, cls)) return std::nullopt;
  for (const auto& c : rb.path_down(cls, r.required_class))
    for (const auto& [key, value] : rb.class_spec(c).precondition) m |= KeyMask{1} << rb.property_index(key);
  return m;
}

struct Transition {
  std::size_t rule;
  KeyMask sources;
  KeyMask targets;
};

/// Rules that can contribute to reaching `goal`, in registration order.
inline std::vector<Transition> relevant_transitions(const Rulebase& rb, const std::string& cls, KeyMask goal) {
  std::vector<Transition> all;
  for (std::size_t i = 0; i < rb.rules().size(); ++i) {
    auto src = effective_sources(rb, rb.rules()[i], cls);
    if (src) all.push_back({i, *src, mask_of(rb, rb.rules()[i].targets)});
  }
  KeyMask wanted = goal;
  std::vector<bool> used(all.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (!used[i] && (all[i].targets & wanted)) {
        used[i] = true;
        wanted |= all[i].sources;
        changed = true;
      }
  }
  std::vector<Transition> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (used[i]) out.push_back(all[i]);
  return out;
}

}  // namespace detail

/// Minimum-weight executable rule sequence that makes every key in
/// `targets` available. Dijkstra over sets of known keys; among equal-cost
/// routes the one discovered first (rules tried in registration order) wins.
inline Schedule get_schedule(const ComputationObject& obj, const std::vector<std::string>& targets) {
  using detail::KeyMask;
  const Rulebase& rb = obj.rulebase();
  const KeyMask goal = detail::mask_of(rb, targets);
  const KeyMask start = detail::object_mask(obj);
  if ((start & goal) == goal) return {};

  auto transitions = detail::relevant_transitions(rb, obj.class_tag(), goal);

  struct Entry {
    int cost;
    std::size_t seq;
    KeyMask state;
    bool operator>(const Entry& o) const { return std::tie(cost, seq) > std::tie(o.cost, o.seq); }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::map<KeyMask, int> dist{{start, 0}};
  std::map<KeyMask, std::pair<KeyMask, std::size_t>> prev;
  std::set<KeyMask> done;
  std::size_t seq = 0;
  queue.push({0, seq++, start});
  std::optional<KeyMask> reached;
  while (!queue.empty()) {
    Entry e = queue.top();
    queue.pop();
    if (!done.insert(e.state).second) continue;
    if ((e.state & goal) == goal) {
      reached = e.state;
      break;
    }
    for (const auto& t : transitions) {
      if ((t.sources & e.state) != t.sources) continue;
      if ((t.targets & ~e.state) == 0) continue;
      KeyMask next = e.state | t.targets;
      int cost = e.cost + rb.rules()[t.rule].weight;
      auto it = dist.find(next);
      if (it != dist.end() && it->second <= cost) continue;
      dist[next] = cost;
      prev[next] = {e.state, t.rule};
      queue.push({cost, seq++, next});
    }
  }
  if (!reached) {
    // report the targets that no rule chain can produce
    KeyMask closure = start;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& t : transitions)
        if ((t.sources & closure) == t.sources && (t.targets & ~closure)) closure |= t.targets, changed = true;
    }
    std::vector<std::string> missing;
    std::string msg = "no rule chain produces";
    for (const auto& k : targets)
      if (!(closure & (KeyMask{1} << rb.property_index(k)))) {
        missing.push_back(k);
        msg += " " + k;
      }
    throw UnsatisfiableRequest(missing, msg + " for this " + obj.class_tag());
  }
  Schedule s;
  for (KeyMask st = *reached; st != start; st = prev[st].first) s.rules.push_back(&rb.rules()[prev[st].second]);
  std::reverse(s.rules.begin(), s.rules.end());
  return s;
}

inline Schedule get_schedule(const ComputationObject& obj, const std::string& target) {
  return get_schedule(obj, std::vector<std::string>{target});
}

namespace detail {

inline bool bool_value(const ComputationObject& obj, const std::string& key) {
  return std::get<bool>(*obj.get(key));
}

// Verifies already-computed preconditions and moves the class down.
inline void cast_with_known_preconditions(ComputationObject& obj, const std::string& cls) {
  const Rulebase& rb = obj.rulebase();
  for (const auto& c : rb.path_down(obj.class_tag(), cls)) {
    for (const auto& [key, required] : rb.class_spec(c).precondition) {
      if (!obj.has(key)) throw EngineError("precondition " + key + " of " + c + " has not been computed");
      if (bool_value(obj, key) != required)
        throw CastRefused(c, key, "cannot cast to " + c + ": precondition " + key + " = " + (required ? "false" : "true"));
    }
    obj.set_class(c);
  }
}

}  // namespace detail

/// Runs the rules of `s` in order. Rules whose targets are all present are
/// skipped with a warning; existing properties are never overwritten.
inline void apply(const Schedule& s, ComputationObject& obj) {
  const Rulebase& rb = obj.rulebase();
  for (const RuleSpec* r : s.rules) {
    bool missing_target = false;
    for (const auto& t : r->targets) missing_target = missing_target || !obj.has(t);
    if (!missing_target) {
      obj.warnings().push_back("rule " + r->id + " skipped: all targets already present");
      continue;
    }
    if (!rb.is_descendant_or_equal(obj.class_tag(), r->required_class))
      detail::cast_with_known_preconditions(obj, r->required_class);
    std::vector<ValuePtr> inputs;
    for (const auto& src : r->sources) {
      if (!obj.has(src)) throw RuleFailure(r->id, "source " + src + " is missing");
      inputs.push_back(obj.get(src));
    }
    if (obj.tracer()) obj.tracer()(*r);
    std::vector<PropertyValue> out;
    try {
      out = r->body(inputs);
    } catch (const RuleFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw RuleFailure(r->id, e.what());
    }
    if (out.size() != r->targets.size()) throw RuleFailure(r->id, "wrong number of results");
    obj.count_rule();
    for (std::size_t i = 0; i < out.size(); ++i) obj.set(r->targets[i], std::move(out[i]));
  }
}

inline ValuePtr request(ComputationObject& obj, const std::string& key);

/// Computes the preconditions of every class down to `cls` (via requests)
/// and moves the object into `cls`.
inline void cast_if_needed(ComputationObject& obj, const std::string& cls) {
  const Rulebase& rb = obj.rulebase();
  if (rb.is_descendant_or_equal(obj.class_tag(), cls)) return;
  for (const auto& c : rb.path_down(obj.class_tag(), cls))
    for (const auto& [key, required] : rb.class_spec(c).precondition) request(obj, key);
  detail::cast_with_known_preconditions(obj, cls);
}

/// Cached value, or schedule + apply. Properties owned by a subclass cast
/// the object first.
inline ValuePtr request(ComputationObject& obj, const std::string& key) {
  const auto& spec = obj.rulebase().property(key);
  if (obj.has(key)) return obj.get(key);
  if (!obj.rulebase().is_descendant_or_equal(obj.class_tag(), spec.owner_class)) cast_if_needed(obj, spec.owner_class);
  apply(get_schedule(obj, key), obj);
  return obj.get(key);
}

template <class T>
const T& request_as(ComputationObject& obj, const std::string& key) {
  ValuePtr v = request(obj, key);
  // the store keeps v alive
  return std::get<T>(*v);
}

}  // namespace latpoly
