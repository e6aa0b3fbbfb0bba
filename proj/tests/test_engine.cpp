#include <gtest/gtest.h>

#include <map>
#include <set>

#include "latpoly/polytope.hpp"
#include "oracles.hpp"

using namespace latpoly;

namespace {

using Keys = std::vector<std::string>;

RuleBody constant(std::vector<PropertyValue> out) {
  return [out](std::span<const ValuePtr>) { return out; };
}

// A toy rulebase: A -> B (weight 5), A -> C (1), C -> B (1).
std::shared_ptr<Rulebase> toy() {
  auto rb = std::make_shared<Rulebase>();
  rb->register_class({"Thing", "", {}});
  rb->register_property({"A", ValueKind::Integer, "Thing"});
  rb->register_property({"B", ValueKind::Integer, "Thing"});
  rb->register_property({"C", ValueKind::Integer, "Thing"});
  rb->register_property({"OK", ValueKind::Boolean, "Thing"});
  rb->register_class({"GoodThing", "Thing", {{"OK", true}}});
  rb->register_property({"D", ValueKind::Integer, "GoodThing"});
  rb->register_rule({"slow", {"A"}, {"B"}, "Thing", 5, constant({Integer(1)})});
  rb->register_rule({"a_to_c", {"A"}, {"C"}, "Thing", 1, constant({Integer(2)})});
  rb->register_rule({"c_to_b", {"C"}, {"B"}, "Thing", 1, constant({Integer(3)})});
  rb->register_rule({"ok", {"A"}, {"OK"}, "Thing", 1, [](std::span<const ValuePtr> in) {
                       return std::vector<PropertyValue>{std::get<Integer>(*in[0]) > 0};
                     }});
  rb->register_rule({"d", {"B"}, {"D"}, "GoodThing", 1, constant({Integer(4)})});
  return rb;
}

using oracle::exhaustive_min_rules;

}  // namespace

TEST(Engine, CubeIsBornWithFiveProperties) {
  auto P = cube(3);
  EXPECT_EQ(P.list_properties(), (Keys{"AMBIENT_DIM", "DIM", "FACETS", "VERTICES_IN_FACETS", "BOUNDED"}));
  EXPECT_EQ(P.class_tag(), "Polytope");
}

TEST(Engine, FVectorSchedule) {
  auto P = cube(3);
  auto s = get_schedule(P, "F_VECTOR");
  EXPECT_EQ(s.list(), (Keys{"HASSE_DIAGRAM : VERTICES_IN_FACETS", "F_VECTOR, F2_VECTOR : HASSE_DIAGRAM"}));
  apply(s, P);
  EXPECT_EQ(P.list_properties(), (Keys{"AMBIENT_DIM", "DIM", "FACETS", "VERTICES_IN_FACETS", "BOUNDED",
                                       "HASSE_DIAGRAM", "F_VECTOR", "F2_VECTOR"}));
  EXPECT_EQ(P.rules_executed(), 2u);
  EXPECT_TRUE(get_schedule(P, "F_VECTOR").empty());
}

TEST(Engine, CachedRequestRunsNothing) {
  auto P = cube(3);
  request(P, "F_VECTOR");
  auto before = P.rules_executed();
  auto a = request(P, "F_VECTOR");
  auto b = request(P, "F_VECTOR");
  EXPECT_EQ(P.rules_executed(), before);
  EXPECT_EQ(a.get(), b.get());
}

TEST(Engine, ApplySkipsPresentTargets) {
  auto P = cube(3);
  auto s = get_schedule(P, "F_VECTOR");
  apply(s, P);
  apply(s, P);
  EXPECT_EQ(P.rules_executed(), 2u);
  EXPECT_EQ(P.warnings().size(), 2u);
}

TEST(Engine, PropertiesAreWriteOnce) {
  auto P = cube(3);
  EXPECT_FALSE(P.set("DIM", Integer(7)));
  EXPECT_EQ(request_as<Integer>(P, "DIM"), 3);
  EXPECT_THROW(P.set("N_VERTICES", Rational(1, 2)), EngineError);
  EXPECT_THROW(P.set("NO_SUCH_THING", true), UnknownProperty);
}

TEST(Engine, ReflexiveCastsToLatticePolytope) {
  auto P = cube(3);
  auto s = get_schedule(P, "REFLEXIVE");
  auto lines = s.list();
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines.back(), "REFLEXIVE : FACETS, DIM, AMBIENT_DIM");
  // the schedule also establishes the LatticePolytope preconditions
  bool lattice = false;
  for (const auto& l : lines) lattice = lattice || l.rfind("LATTICE :", 0) == 0;
  EXPECT_TRUE(lattice);
  EXPECT_TRUE(request_as<bool>(P, "REFLEXIVE"));
  EXPECT_EQ(P.class_tag(), "LatticePolytope");
}

TEST(Engine, CastRefusedNamesCondition) {
  RatMatrix cone{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  auto U = from_points(cone);
  try {
    request(U, "REFLEXIVE");
    FAIL() << "expected a refused cast";
  } catch (const CastRefused& e) {
    EXPECT_EQ(e.failed_condition(), "BOUNDED");
    EXPECT_EQ(e.target_class(), "LatticePolytope");
  }
  EXPECT_EQ(U.class_tag(), "Polytope");

  auto Q = from_points(RatMatrix{{1, 0, 0}, {1, Rational(1, 2), 0}, {1, 0, 1}});
  try {
    request(Q, "H_STAR_VECTOR");
    FAIL() << "expected a refused cast";
  } catch (const CastRefused& e) {
    EXPECT_EQ(e.failed_condition(), "LATTICE");
  }
  EXPECT_EQ(Q.class_tag(), "Polytope");
}

TEST(Engine, ClassNeverMovesUp) {
  auto P = cube(3);
  request(P, "SMOOTH");
  EXPECT_THROW(P.set_class("Polytope"), EngineError);
}

TEST(Engine, LowerWeightRouteWins) {
  auto rb = toy();
  ComputationObject t(rb, "Thing");
  t.set("A", Integer(1));
  auto s = get_schedule(t, "B");
  EXPECT_EQ(s.list(), (Keys{"C : A", "B : C"}));
  EXPECT_EQ(s.total_weight(), 2);
  EXPECT_EQ(request_as<Integer>(t, "B"), 3);
}

TEST(Engine, ToySubclassCasting) {
  auto rb = toy();
  ComputationObject good(rb, "Thing");
  good.set("A", Integer(1));
  EXPECT_EQ(request_as<Integer>(good, "D"), 4);
  EXPECT_EQ(good.class_tag(), "GoodThing");

  ComputationObject bad(rb, "Thing");
  bad.set("A", Integer(-1));
  EXPECT_THROW(request(bad, "D"), CastRefused);

  ComputationObject empty(rb, "Thing");
  try {
    request(empty, "B");
    FAIL();
  } catch (const UnsatisfiableRequest& e) {
    EXPECT_EQ(e.missing(), Keys{"B"});
  }
}

TEST(Engine, RuleFailureCarriesId) {
  auto rb = toy();
  rb->register_rule({"boom", {"C"}, {"OK"}, "Thing", 1, [](std::span<const ValuePtr>) -> std::vector<PropertyValue> {
                       throw std::runtime_error("nope");
                     }});
  ComputationObject t(rb, "Thing");
  t.set("C", Integer(0));
  try {
    request(t, "OK");
    FAIL();
  } catch (const RuleFailure& e) {
    EXPECT_EQ(e.rule_id(), "boom");
  }
}

TEST(Engine, RegistrationErrors) {
  auto rb = toy();
  auto body = constant({Integer(0)});
  EXPECT_THROW(rb->register_property({"A", ValueKind::Integer, "Thing"}), RegistrationError);
  EXPECT_THROW(rb->register_property({"Z", ValueKind::Integer, "Nowhere"}), RegistrationError);
  EXPECT_THROW(rb->register_class({"Thing", "", {}}), RegistrationError);
  EXPECT_THROW(rb->register_class({"X", "Nowhere", {}}), RegistrationError);
  EXPECT_THROW(rb->register_class({"X", "Thing", {{"A", true}}}), RegistrationError);
  EXPECT_THROW(rb->register_rule({"slow", {"A"}, {"C"}, "Thing", 1, body}), RegistrationError);
  EXPECT_THROW(rb->register_rule({"r", {"A"}, {}, "Thing", 1, body}), RegistrationError);
  EXPECT_THROW(rb->register_rule({"r", {"A"}, {"Q"}, "Thing", 1, body}), RegistrationError);
  EXPECT_THROW(rb->register_rule({"r", {"A"}, {"A"}, "Thing", 1, body}), RegistrationError);
  EXPECT_THROW(rb->register_rule({"r", {"A"}, {"C"}, "Thing", 0, body}), RegistrationError);
  EXPECT_THROW(rb->register_rule({"r", {"A"}, {"C"}, "Nowhere", 1, body}), RegistrationError);
  EXPECT_THROW(rb->register_rule({"r", {"A"}, {"C"}, "Thing", 1, nullptr}), RegistrationError);
  for (int i = 0; i < 59; ++i) rb->register_property({"P" + std::to_string(i), ValueKind::Boolean, "Thing"});
  EXPECT_THROW(rb->register_property({"ONE_TOO_MANY", ValueKind::Boolean, "Thing"}), RegistrationError);
}

TEST(Engine, TracerSeesEveryRule) {
  auto P = cube(3);
  std::vector<std::string> fired;
  P.set_tracer([&](const RuleSpec& r) { fired.push_back(r.id); });
  request(P, "F_VECTOR");
  EXPECT_EQ(fired.size(), P.rules_executed());
  EXPECT_EQ(fired.size(), 2u);
}

// Schedules are minimal: no shorter rule sequence reaches the target. All
// standard rules have weight 1.
TEST(Engine, ScheduleOptimalAgainstExhaustiveSearch) {
  const auto& rb = *default_rulebase();
  for (const auto& r : rb.rules()) ASSERT_EQ(r.weight, 1);
  RatMatrix tri{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};
  std::vector<std::pair<std::string, ComputationObject>> starts;
  starts.emplace_back("cube", cube(3));
  starts.emplace_back("cross", cross(3));
  starts.emplace_back("points", from_points(tri));
  starts.emplace_back("facets", from_facets(RatMatrix{{0, 1, 0}, {0, 0, 1}, {1, -1, -1}}));
  int checked = 0;
  for (auto& [name, obj] : starts)
    for (const auto& p : rb.properties()) {
      std::optional<Schedule> s;
      try {
        s = get_schedule(obj, p.name);
      } catch (const UnsatisfiableRequest&) {
      }
      int expect = exhaustive_min_rules(obj, {p.name}, 12);
      if (!s) {
        EXPECT_EQ(expect, -1) << name << " " << p.name;
        continue;
      }
      EXPECT_EQ(static_cast<int>(s->rules.size()), expect) << name << " " << p.name;
      // and the schedule really is executable in order
      ComputationObject copy = obj;
      apply(*s, copy);
      EXPECT_TRUE(copy.has(p.name)) << name << " " << p.name;
      ++checked;
    }
  EXPECT_GT(checked, 80);
}
