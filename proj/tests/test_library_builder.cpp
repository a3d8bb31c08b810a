#include <doctest.h>

#include <algorithm>

#include "knowforge/errors.hpp"
#include "knowforge/library_builder.hpp"
#include "knowforge/schema.hpp"
#include "support.hpp"

using namespace knowforge;

namespace {

RawTriple row(std::string subject, std::string predicate, std::string object,
              std::vector<std::pair<std::string, std::string>> sub_properties = {}) {
  RawTriple r;
  r.subject = std::move(subject);
  r.predicate = std::move(predicate);
  r.object = std::move(object);
  r.sentence = r.subject + " " + r.predicate + " " + r.object + ".";
  r.sub_properties = std::move(sub_properties);
  return r;
}

}  // namespace

TEST_CASE("build_taxonomy links children to parents") {
  const auto build = build_taxonomy({{"Fairytale", "WrittenWork"}}, {});
  CHECK(build.library.get("Fairytale").parent == ConceptId("WrittenWork"));
  CHECK(!build.library.get("WrittenWork").parent.has_value());
  CHECK(validate(build.library).empty());
}

TEST_CASE("build_taxonomy of an empty edge list is empty") {
  const auto build = build_taxonomy({}, {});
  CHECK(build.library.size() == 0);
}

TEST_CASE("multi-parent nodes resolve to the hypernym with the most instances") {
  const auto build =
      build_taxonomy({{"A", "B"}, {"A", "C"}}, {{"B", 3}, {"C", 7}});
  CHECK(build.library.get("A").parent == ConceptId("C"));
}

TEST_CASE("cycle edges are dropped and logged") {
  const auto build = build_taxonomy({{"A", "B"}, {"B", "A"}}, {});
  CHECK(validate(build.library).empty());
  const bool a_rooted = !build.library.get("A").parent.has_value();
  const bool b_rooted = !build.library.get("B").parent.has_value();
  CHECK(a_rooted != b_rooted);  // exactly one edge dropped
  CHECK(std::any_of(build.log.begin(), build.log.end(), [](const Violation& v) {
    return v.code == "CycleEdgeDropped";
  }));
  CHECK(ancestors("A", build.library).size() <= 1);
}

TEST_CASE("taxonomy output passes validate for random edge sets") {
  // includes multi-parent and cyclic shapes
  const auto build = build_taxonomy(
      {{"A", "B"}, {"B", "C"}, {"C", "A"}, {"D", "A"}, {"D", "B"}, {"E", "E"}},
      {{"A", 1}, {"B", 2}});
  CHECK(validate(build.library).empty());
}

TEST_CASE("derive_constraints keeps co-occurring types") {
  SchemaLibrary lib;
  lib.add(test::entity("Human"));
  lib.add(test::entity("SpatialEntity"));
  const auto build =
      derive_constraints({{"Human", "PlaceOfBirth", "SpatialEntity"}}, lib);
  REQUIRE(build.constraints.count("PlaceOfBirth") == 1);
  const auto& sig = build.constraints.at("PlaceOfBirth");
  CHECK(sig.head_types == std::vector<ConceptId>{"Human"});
  CHECK(sig.tail_types == std::vector<ConceptId>{"SpatialEntity"});
}

TEST_CASE("derive_constraints of empty input is empty") {
  SchemaLibrary lib;
  CHECK(derive_constraints({}, lib).constraints.empty());
}

TEST_CASE("derive_constraints honors min_support and reports empty signatures") {
  SchemaLibrary lib;
  lib.add(test::entity("A"));
  lib.add(test::entity("B"));
  lib.add(test::entity("T"));
  const auto build = derive_constraints(
      {{"A", "Pred", "T"}, {"B", "Pred", "T"}}, lib, 2);
  CHECK(build.constraints.count("Pred") == 0);
  REQUIRE(build.log.size() == 1);
  CHECK(build.log[0].code == "EmptyConstraint");
}

TEST_CASE("derive_constraints rejects unknown types") {
  SchemaLibrary lib;
  lib.add(test::entity("A"));
  CHECK_THROWS_AS(derive_constraints({{"A", "P", "Missing"}}, lib),
                  UnknownConceptError);
}

TEST_CASE("attach_descriptions uses the map first, then the provider") {
  SchemaLibrary lib;
  lib.add(test::entity("A"));
  lib.add(test::entity("B"));
  lib.add(test::entity("C"));
  StubDescriptionProvider stub;
  const auto report =
      attach_descriptions(lib, {{"A", "A thing."}, {"B", "B thing."}}, stub);
  CHECK(report.from_map == 2);
  CHECK(report.from_provider == 1);
  CHECK(lib.get("A").description == "A thing.");
  CHECK(lib.get("C").description == "A C.");
}

TEST_CASE("type_and_clean strips bracketed suffixes") {
  EntityTypingMap typing{{"Paris (city)", {"city"}}, {"France", {"country"}}};
  const auto cleaned =
      type_and_clean({row("Paris (city)", "capital of", "France")}, typing);
  REQUIRE(cleaned.rows.size() == 1);
  CHECK(cleaned.rows[0].subject.name == "Paris");
  CHECK(cleaned.report.balanced());
}

TEST_CASE("disambiguation pages are dropped") {
  EntityTypingMap typing{{"Mercury", {"Wikimedia Disambiguation Page"}},
                         {"Sun", {"star"}}};
  const auto cleaned = type_and_clean({row("Mercury", "orbits", "Sun")}, typing);
  CHECK(cleaned.rows.empty());
  CHECK(cleaned.report.dropped_disambiguation == 1);
  CHECK(cleaned.report.balanced());
}

TEST_CASE("untyped entities are dropped") {
  EntityTypingMap typing{{"Sun", {"star"}}};
  const auto cleaned = type_and_clean({row("Nobody", "orbits", "Sun")}, typing);
  CHECK(cleaned.rows.empty());
  CHECK(cleaned.report.dropped_untyped == 1);
  CHECK(cleaned.report.balanced());
}

TEST_CASE("type_and_clean is idempotent") {
  EntityTypingMap typing{{"Paris (city)", {"city (settlement)"}},
                         {"France", {"country"}}};
  const auto once =
      type_and_clean({row("Paris (city)", "capital of", "France")}, typing);
  REQUIRE(once.rows.size() == 1);
  // feed the cleaned row back through with an identity typing map
  EntityTypingMap identity{{once.rows[0].subject.name, once.rows[0].subject.types},
                           {once.rows[0].object.name, once.rows[0].object.types}};
  RawTriple again;
  again.subject = once.rows[0].subject.name;
  again.object = once.rows[0].object.name;
  again.predicate = once.rows[0].predicate;
  again.sentence = once.rows[0].sentence;
  const auto twice = type_and_clean({again}, identity);
  REQUIRE(twice.rows.size() == 1);
  CHECK(twice.rows[0].subject.name == once.rows[0].subject.name);
  CHECK(twice.rows[0].subject.types == once.rows[0].subject.types);
}

TEST_CASE("strip_brackets handles edges") {
  CHECK(strip_brackets("Paris (city)") == "Paris");
  CHECK(strip_brackets("A (b) C (d)") == "A C");
  CHECK(strip_brackets("plain") == "plain");
  CHECK(strip_brackets("odd (unclosed") == "odd (unclosed");
  CHECK(strip_brackets("[square] stays") == "[square] stays");
}

TEST_CASE("rows with sub-properties become events") {
  EntityTypingMap typing{{"Jamsilsaenae station", {"station"}},
                         {"Sports Complex station", {"station"}}};
  auto cleaned = type_and_clean(
      {row("Jamsilsaenae station", "adjacent station", "Sports Complex station",
           {{"connecting line", "Seoul Subway Line 2"},
            {"towards", "Gangnam station"},
            {"direction", "Inner Ring Road"}})},
      typing);
  const auto derived = derive_events(std::move(cleaned.rows));
  REQUIRE(derived.rows.size() == 1);
  CHECK(derived.rows[0].is_event);
  CHECK(derived.rows[0].sub_properties.size() == 3);
  CHECK(derived.deleted_blacklisted == 0);
}

TEST_CASE("blacklisted roles delete the whole row") {
  EntityTypingMap typing{{"A", {"t"}}, {"B", {"t"}}};
  auto cleaned = type_and_clean(
      {row("A", "pred", "B", {{"follows", "C"}}),
       row("A", "pred", "B", {{"of", "C"}}),
       row("A", "pred", "B", {{"country", "C"}})},
      typing);
  const auto derived = derive_events(std::move(cleaned.rows));
  CHECK(derived.rows.empty());
  CHECK(derived.deleted_blacklisted == 3);
  for (const char* role : {"of", "follows", "followed by", "point in time", "country"}) {
    CHECK(role_is_blacklisted(role));
  }
  CHECK(!role_is_blacklisted("institution"));
}

TEST_CASE("rows without sub-properties pass through unchanged") {
  EntityTypingMap typing{{"A", {"t"}}, {"B", {"t"}}};
  auto cleaned = type_and_clean({row("A", "pred", "B")}, typing);
  const auto derived = derive_events(std::move(cleaned.rows));
  REQUIRE(derived.rows.size() == 1);
  CHECK(!derived.rows[0].is_event);
}

TEST_CASE("derived events never emit a blacklisted role") {
  EntityTypingMap typing{{"A", {"t"}}, {"B", {"t"}}};
  std::vector<RawTriple> corpus;
  const std::vector<std::string> roles = {"member", "of",      "follows", "spouse",
                                          "country", "towards", "degree"};
  for (std::size_t i = 0; i < roles.size(); ++i) {
    corpus.push_back(row("A", "pred" + std::to_string(i), "B", {{roles[i], "x"}}));
  }
  auto cleaned = type_and_clean(corpus, typing);
  const auto derived = derive_events(std::move(cleaned.rows));
  for (const auto& r : derived.rows) {
    for (const auto& [key, value] : r.sub_properties) {
      CHECK(!role_is_blacklisted(key));
    }
  }
}

TEST_CASE("full pipeline builds a validated library and balanced report") {
  std::vector<RawTriple> corpus = {
      row("Gzim Istrefi", "member of sports team", "Carlstad United BK"),
      row("Lalita Yauhleuskaya", "member of sports team", "Carlstad United BK"),
      row("Paris (city)", "capital of", "France"),
      row("Ghost", "haunts", "Nowhere"),  // untyped
      row("Mercury", "orbits", "Sun"),    // disambiguation
      row("Albert", "education", "Academy",
          {{"institution", "Academy"}, {"student", "Albert"}}),
      row("Thomas", "spouse", "Nancy", {{"follows", "x"}}),  // blacklisted
  };
  EntityTypingMap typing{
      {"Gzim Istrefi", {"human"}},
      {"Lalita Yauhleuskaya", {"human"}},
      {"Carlstad United BK", {"association football club"}},
      {"Paris (city)", {"city"}},
      {"France", {"country (state)"}},
      {"Mercury", {"Wikimedia Disambiguation Page"}},
      {"Sun", {"star"}},
      {"Albert", {"human"}},
      {"Academy", {"school"}},
      {"Thomas", {"human"}},
      {"Nancy", {"human"}},
  };
  StubDescriptionProvider stub;
  const auto build = build_library({{"city", "human settlement"}}, corpus, typing,
                                   {{"human", "any member of Homo sapiens."}}, stub);

  CHECK(build.report.input_count == 7);
  CHECK(build.report.dropped_untyped == 1);
  CHECK(build.report.dropped_disambiguation == 1);
  CHECK(build.report.dropped_blacklisted_role == 1);
  CHECK(build.report.kept_count == 4);
  CHECK(build.report.balanced());

  CHECK(validate(build.library).empty());
  CHECK(build.library.get("human").description == "any member of Homo sapiens.");
  CHECK(build.library.get("city").parent == ConceptId("human settlement"));

  const Concept& team = build.library.get("member of sports team");
  CHECK(team.kind == ConceptKind::Relation);
  CHECK(team.class_name == "MemberOfSportsTeam");
  REQUIRE(team.constraint.has_value());
  CHECK(team.constraint->head_types == std::vector<ConceptId>{"human"});
  CHECK(team.constraint->tail_types ==
        std::vector<ConceptId>{"association football club"});
  CHECK(team.instance_count == 2);
  CHECK(!team.examples.empty());

  const Concept& education = build.library.get("education");
  CHECK(education.kind == ConceptKind::Event);
  REQUIRE(education.roles.size() == 2);
  CHECK(education.roles[0].role_name == "institution");
  CHECK(education.roles[1].role_name == "student");

  // "country (state)" was bracket-stripped into a type name
  CHECK(build.library.contains("country"));
}
