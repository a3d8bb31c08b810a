#include <doctest.h>

#include <algorithm>

#include "knowforge/parser.hpp"
#include "knowforge/rng.hpp"
#include "support.hpp"

using namespace knowforge;

TEST_CASE("parses a single entity result") {
  auto lib = test::sample_library();
  const auto outcome =
      parse_results("results = [\n    Human(\"Lalita Yauhleuskaya\")\n]", lib);
  REQUIRE(outcome.found_results);
  REQUIRE(outcome.extractions.size() == 1);
  CHECK(outcome.extractions[0] == make_entity("Human", "Lalita Yauhleuskaya"));
  CHECK(outcome.diagnostics.empty());
}

TEST_CASE("parses an empty results list") {
  auto lib = test::sample_library();
  const auto outcome = parse_results("results = []", lib);
  CHECK(outcome.found_results);
  CHECK(outcome.extractions.empty());
  CHECK(outcome.diagnostics.empty());
}

TEST_CASE("parses a relation with typed endpoints") {
  auto lib = test::sample_library();
  const auto outcome = parse_results(
      "results = [ MemberOfSportsTeam( Human(\"Gzim Istrefi\"), "
      "AssociationFootballClub(\"Carlstad United BK\") ) ]",
      lib);
  REQUIRE(outcome.extractions.size() == 1);
  const auto expected =
      make_relation("MemberOfSportsTeam", make_entity("Human", "Gzim Istrefi"),
                    make_entity("AssociationFootballClub", "Carlstad United BK"));
  CHECK(outcome.extractions[0] == expected);
}

TEST_CASE("recovers well-formed siblings around a malformed element") {
  auto lib = test::sample_library();
  const auto outcome =
      parse_results("results = [Human(\"A\"), Broken(, Human(\"B\")]", lib);
  REQUIRE(outcome.extractions.size() == 2);
  CHECK(outcome.extractions[0].span == "A");
  CHECK(outcome.extractions[1].span == "B");
  CHECK(outcome.diagnostics.size() == 1);
  CHECK(outcome.diagnostics[0].severity == Severity::Error);
}

TEST_CASE("event with a positional trigger only") {
  auto lib = test::sample_library();
  const auto outcome = parse_results("results = [Marriage(\"married\")]", lib);
  REQUIRE(outcome.extractions.size() == 1);
  const auto& e = outcome.extractions[0];
  CHECK(e.kind == ConceptKind::Event);
  CHECK(e.concept_id == "Marriage");
  CHECK(e.trigger == "married");
  CHECK(e.roles.empty());
}

TEST_CASE("event with keyword trigger and roles") {
  auto lib = test::sample_library();
  const auto outcome = parse_results(
      "results = [Education(trigger=\"graduate\", "
      "student=[Entity(\"Albert J. Herberger\")])]",
      lib);
  REQUIRE(outcome.extractions.size() == 1);
  const auto& e = outcome.extractions[0];
  CHECK(e.trigger == "graduate");
  REQUIRE(e.roles.size() == 1);
  CHECK(e.roles[0].role == "student");
  REQUIRE(e.roles[0].values.size() == 1);
  CHECK(e.roles[0].values[0] == make_entity(kBasicEntity, "Albert J. Herberger"));
}

TEST_CASE("triggerless event with three roles") {
  auto lib = test::sample_library();
  const auto outcome = parse_results(
      "results = [\n"
      "    AdjacentStation(\n"
      "        connecting_line=[Entity(\"Seoul Subway Line 2\")],\n"
      "        towards=[Entity(\"Gangnam station\")],\n"
      "        direction=[Entity(\"Inner Ring Road\")]\n"
      "    )\n"
      "]",
      lib);
  REQUIRE(outcome.extractions.size() == 1);
  const auto& e = outcome.extractions[0];
  CHECK(!e.trigger.has_value());
  REQUIRE(e.roles.size() == 3);
  CHECK(e.roles[0].role == "connecting_line");
  CHECK(e.roles[1].role == "towards");
  CHECK(e.roles[2].role == "direction");
}

TEST_CASE("no results assignment yields NoResultsBlock") {
  auto lib = test::sample_library();
  const auto outcome = parse_results("the model rambles with no code", lib);
  CHECK(!outcome.found_results);
  REQUIRE(outcome.diagnostics.size() == 1);
  CHECK(outcome.diagnostics[0].message.find("NoResultsBlock") != std::string::npos);
}

TEST_CASE("the last results assignment wins") {
  auto lib = test::sample_library();
  const auto outcome = parse_results(
      "results = [Human(\"old\")]\nsome text\nresults = [Human(\"new\")]", lib);
  REQUIRE(outcome.extractions.size() == 1);
  CHECK(outcome.extractions[0].span == "new");
}

TEST_CASE("prose after the closing bracket is ignored") {
  auto lib = test::sample_library();
  const auto outcome = parse_results(
      "results = [Human(\"A\")]\nI hope this helps! Let me know.", lib);
  REQUIRE(outcome.extractions.size() == 1);
  CHECK(outcome.diagnostics.empty());
}

TEST_CASE("comments and stray whitespace are permitted between tokens") {
  auto lib = test::sample_library();
  const auto outcome = parse_results(
      "results = [  # the extractions\n    Human( \"A\" ) ,\n]", lib);
  REQUIRE(outcome.extractions.size() == 1);
  CHECK(outcome.extractions[0].span == "A");
  CHECK(outcome.diagnostics.empty());
}

TEST_CASE("escape sequences in strings") {
  auto lib = test::sample_library();
  const auto outcome =
      parse_results(R"(results = [Human("say \"hi\" \\ now")])", lib);
  REQUIRE(outcome.extractions.size() == 1);
  CHECK(outcome.extractions[0].span == "say \"hi\" \\ now");
  // unknown escapes pass through verbatim
  const auto other = parse_results(R"(results = [Human("a\nb")])", lib);
  REQUIRE(other.extractions.size() == 1);
  CHECK(other.extractions[0].span == "a\\nb");
}

TEST_CASE("unknown class names become provisional extractions") {
  auto lib = test::sample_library();
  const auto outcome = parse_results(
      "results = [Qux(\"span\"), Rel(Qux(\"a\"), Qux(\"b\")), "
      "Ev(trigger=\"t\", who=[Entity(\"x\")])]",
      lib);
  REQUIRE(outcome.extractions.size() == 3);
  CHECK(outcome.extractions[0].provisional);
  CHECK(outcome.extractions[0].kind == ConceptKind::Entity);
  CHECK(outcome.extractions[1].kind == ConceptKind::Relation);
  CHECK(outcome.extractions[2].kind == ConceptKind::Event);
  CHECK(outcome.extractions[2].trigger == "t");
}

TEST_CASE("dataset name alignment resolves dataset-local names") {
  auto lib = test::sample_library();
  DatasetSchema dataset;
  dataset.dataset_name = "toy";
  dataset.concept_ids = {"Human"};
  dataset.name_alignment = {{"PERSON", "Human"}};
  const auto outcome = parse_results("results = [PERSON(\"Ada\")]", lib, &dataset);
  REQUIRE(outcome.extractions.size() == 1);
  CHECK(outcome.extractions[0].concept_id == "Human");
  CHECK(!outcome.extractions[0].provisional);
}

TEST_CASE("non-list role values produce a diagnostic") {
  auto lib = test::sample_library();
  const auto outcome = parse_results(
      "results = [Education(trigger=\"t\", student=Entity(\"x\"))]", lib);
  REQUIRE(outcome.extractions.size() == 1);
  CHECK(outcome.extractions[0].roles.empty());
  CHECK(!outcome.diagnostics.empty());
  CHECK(outcome.diagnostics[0].severity == Severity::Warning);
}

TEST_CASE("diagnostic byte ranges stay within the input") {
  auto lib = test::sample_library();
  const std::string text = "results = [Broken(, Human(\"B\")]";
  const auto outcome = parse_results(text, lib);
  for (const auto& d : outcome.diagnostics) {
    CHECK(d.begin <= d.end);
    CHECK(d.end <= text.size());
  }
}

TEST_CASE("recovery monotonicity: removing a bad element never loses good ones") {
  auto lib = test::sample_library();
  const std::vector<std::string> good = {
      "Human(\"A\")", "Marriage(\"wed\")",
      "MemberOfSportsTeam(Human(\"x\"), AssociationFootballClub(\"y\"))"};
  // Recovery skips to the next comma at list depth, so corruptions that do
  // not unbalance brackets keep every sibling; unbalanced ones may only
  // truncate, never invent.
  const std::vector<std::string> comma_safe = {"Broken(,", "Broken", "Broken()", "5",
                                               "\"loose\""};
  const std::vector<std::string> unbalanced = {")", "Name(]"};

  auto run = [&](const std::string& b) {
    std::string with = "results = [" + good[0] + ", " + b + ", " + good[1] + ", " +
                       good[2] + "]";
    std::string without =
        "results = [" + good[0] + ", " + good[1] + ", " + good[2] + "]";
    const auto with_outcome = parse_results(with, lib);
    const auto without_outcome = parse_results(without, lib);
    REQUIRE(without_outcome.extractions.size() == 3);
    for (const auto& e : with_outcome.extractions) {
      CHECK(std::count(without_outcome.extractions.begin(),
                       without_outcome.extractions.end(), e) > 0);
    }
    return with_outcome;
  };

  for (const auto& b : comma_safe) {
    const auto outcome = run(b);
    CHECK(outcome.extractions.size() == 3);
    CHECK(!outcome.diagnostics.empty());
  }
  for (const auto& b : unbalanced) run(b);
}

TEST_CASE("fuzzed byte strings never crash the parser") {
  auto lib = test::sample_library();
  Rng rng(987654321);
  const std::string alphabet =
      "results=[](),\"\\#ABCdef_ \n\t\x01\xff Human Marriage trigger";
  for (int i = 0; i < 10000; ++i) {
    std::string text;
    const std::size_t len = rng.below(160);
    for (std::size_t k = 0; k < len; ++k) {
      text.push_back(alphabet[rng.below(alphabet.size())]);
    }
    const auto outcome = parse_results(text, lib);
    for (const auto& d : outcome.diagnostics) {
      CHECK(d.end <= text.size());
    }
  }
}
