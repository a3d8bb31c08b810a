#include <doctest.h>

#include <algorithm>

#include "knowforge/errors.hpp"
#include "knowforge/rng.hpp"
#include "knowforge/schema.hpp"
#include "support.hpp"

using namespace knowforge;

namespace {

SchemaLibrary counted_library(const std::vector<std::pair<std::string, std::uint64_t>>& spec) {
  SchemaLibrary lib;
  for (const auto& [id, count] : spec) {
    lib.add(test::entity(id, "", {}, std::nullopt, count));
  }
  return lib;
}

}  // namespace

TEST_CASE("resolve_hypernym picks the candidate with the most instances") {
  auto lib = counted_library({{"A", 5}, {"B", 9}});
  CHECK(resolve_hypernym({"A", "B"}, lib) == "B");
}

TEST_CASE("resolve_hypernym on a singleton returns it") {
  auto lib = counted_library({{"A", 5}});
  CHECK(resolve_hypernym({"A"}, lib) == "A");
}

TEST_CASE("resolve_hypernym breaks ties by lexicographic id") {
  auto lib = counted_library({{"A", 5}, {"B", 5}});
  CHECK(resolve_hypernym({"A", "B"}, lib) == "A");
  // cross-check against a brute-force sort on (count desc, id asc)
  std::vector<std::pair<std::uint64_t, std::string>> ranked{{5, "B"}, {5, "A"}};
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  CHECK(resolve_hypernym({"A", "B"}, lib) == ranked.front().second);
}

TEST_CASE("resolve_hypernym rejects unknown ids") {
  auto lib = counted_library({{"A", 5}});
  CHECK_THROWS_AS(resolve_hypernym({"A", "Missing"}, lib), UnknownConceptError);
}

TEST_CASE("ancestors walks the parent chain child to root") {
  SchemaLibrary lib;
  lib.add(test::entity("Organization"));
  lib.add(test::entity("University", "", {}, ConceptId("Organization")));
  CHECK(ancestors("University", lib) == std::vector<ConceptId>{"Organization"});
  CHECK(ancestors("Organization", lib).empty());
}

TEST_CASE("ancestors of a four-level chain lists three links in order") {
  SchemaLibrary lib;
  lib.add(test::entity("D"));
  lib.add(test::entity("C", "", {}, ConceptId("D")));
  lib.add(test::entity("B", "", {}, ConceptId("C")));
  lib.add(test::entity("A", "", {}, ConceptId("B")));
  CHECK(ancestors("A", lib) == std::vector<ConceptId>{"B", "C", "D"});
}

TEST_CASE("validate accepts a well-formed library") {
  SchemaLibrary lib;
  lib.add(test::entity("Organization"));
  lib.add(test::entity("University", "", {}, ConceptId("Organization")));
  lib.add(test::relation("LocatedIn", "", {}, {"University"}, {"Organization"}));
  CHECK(validate(lib).empty());
  CHECK(validate(test::sample_library()).empty());
}

TEST_CASE("validate reports parent cycles") {
  SchemaLibrary lib;
  auto a = test::entity("A");
  a.parent = "B";
  auto b = test::entity("B");
  b.parent = "A";
  lib.add(a);
  lib.add(b);
  const auto violations = validate(lib);
  CHECK(std::count_if(violations.begin(), violations.end(), [](const Violation& v) {
          return v.code == "CycleDetected";
        }) == 1);
}

TEST_CASE("validate reports dangling constraint references") {
  SchemaLibrary lib;
  lib.add(test::relation("R", "", {}, {"Missing"}, {kBasicEntity}));
  const auto violations = validate(lib);
  REQUIRE(!violations.empty());
  CHECK(std::any_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.code == "DanglingReference" && v.concept_id == "R";
  }));
}

TEST_CASE("validate flags role and constraint shape errors") {
  SchemaLibrary lib;
  auto ev = test::event("E", "", {}, {});
  lib.add(ev);  // event without roles
  auto ent = test::entity("X");
  ent.constraint = ConstraintSignature{{kBasicEntity}, {kBasicEntity}};
  lib.add(ent);  // entity with a constraint
  const auto violations = validate(lib);
  auto has = [&](const char* code) {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
  };
  CHECK(has("MissingRoles"));
  CHECK(has("UnexpectedConstraint"));
}

TEST_CASE("align_dataset maps by class name first, then overrides") {
  auto lib = test::sample_library();

  SUBCASE("override") {
    const auto schema = align_dataset("toy", {"Person2"}, lib, {{"Person2", "Human"}});
    CHECK(schema.concept_ids == std::vector<ConceptId>{"Human"});
    CHECK(schema.name_alignment.at("Person2") == "Human");
  }
  SUBCASE("exact match needs no override") {
    const auto schema = align_dataset("toy", {"Human"}, lib, {});
    CHECK(schema.concept_ids == std::vector<ConceptId>{"Human"});
  }
  SUBCASE("unknown names are all reported") {
    try {
      align_dataset("toy", {"Zzz", "Human", "Qqq"}, lib, {});
      FAIL("expected UnalignedNameError");
    } catch (const UnalignedNameError& e) {
      CHECK(e.names() == std::vector<std::string>{"Zzz", "Qqq"});
    }
  }
  SUBCASE("cardinality is preserved") {
    const auto schema = align_dataset("toy", {"Person", "Human", "TvShow"}, lib, {});
    CHECK(schema.concept_ids.size() == 3);
    CHECK(schema.name_alignment.size() == 3);
  }
}

TEST_CASE("align_dataset output is a bijection onto its concepts") {
  auto lib = test::sample_library();
  // "Mensch" has no exact match, so its override would alias "Human".
  CHECK_THROWS_AS(align_dataset("toy", {"Human", "Mensch"}, lib, {{"Mensch", "Human"}}),
                  DataError);
}

TEST_CASE("class and role name derivation") {
  CHECK(to_class_name("average ratings") == "AverageRatings");
  CHECK(to_class_name("place of birth") == "PlaceOfBirth");
  CHECK(to_class_name("SpatialEntity") == "SpatialEntity");
  CHECK(to_class_name("3d film") == "C3dFilm");
  CHECK(to_role_name("Connecting Line") == "connecting_line");
  CHECK(to_role_name("point in time") == "point_in_time");
}

TEST_CASE("random validated libraries keep every operation total") {
  // validate() == [] must imply no UnknownConcept from taxonomy queries.
  Rng rng(20240817);
  for (int round = 0; round < 50; ++round) {
    SchemaLibrary lib;
    const std::size_t n = 2 + rng.below(20);
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<ConceptId> parent;
      if (i > 0 && rng.below(2) == 0) {
        parent = "N" + std::to_string(rng.below(i));  // earlier node: acyclic
      }
      lib.add(test::entity("N" + std::to_string(i), "", {}, parent, rng.below(100)));
    }
    REQUIRE(validate(lib).empty());
    for (const auto& id : lib.ids()) {
      CHECK_NOTHROW(ancestors(id, lib));
      CHECK(ancestors(id, lib).size() < n);
      CHECK_NOTHROW(resolve_hypernym({id}, lib));
    }
  }
}

TEST_CASE("library JSONL round-trips") {
  auto lib = test::sample_library();
  const std::string path = "/tmp/knowforge_test_library.jsonl";
  save_library_jsonl(lib, path);
  auto loaded = load_library_jsonl(path);
  REQUIRE(loaded.size() == lib.size());
  for (const auto& id : lib.ids()) {
    CHECK(loaded.get(id) == lib.get(id));
  }
  CHECK(validate(loaded).empty());
  // taxonomy index is rebuilt, not serialized
  CHECK(loaded.children_of("SocialGroup") == std::vector<ConceptId>{"Nationality"});
}
