#include <algorithm>
#include <tuple>

#include "bpdmn/format.hpp"
#include "bpdmn/validator.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bpdmn;
using namespace testsupport;

TEST_CASE("reference models are clean") {
  CHECK(validate(load("travel").diagram).empty());
  CHECK(validate(load("eco").diagram).empty());
}

TEST_CASE("each rule has a passing and a failing fixture") {
  for (int i = 1; i <= 9; ++i) {
    std::string rule = "V" + std::to_string(i);
    CAPTURE(rule);
    CHECK(validate(load("good-v" + std::to_string(i)).diagram).empty());
    auto diags = validate(load("bad-v" + std::to_string(i)).diagram);
    CHECK(std::count_if(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.rule == rule; }) >= 1);
  }
}

TEST_CASE("object with a source but no target gives exactly one V1 error") {
  auto diags = validate(load("bad-v1").diagram);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].rule == "V1");
  CHECK(diags[0].severity == Severity::error);
  CHECK(format_diagnostic(diags[0]) == "V1 error orphan: object has no source");
}

TEST_CASE("copy rule into a missing variable gives one V3 error") {
  Document doc = load("travel");
  DiagramParts parts = doc.diagram.parts();
  for (auto& m : parts.mappings)
    if (m.id == "dm1") m.rules[0].to = "zipCode";
  auto diags = validate(Diagram(parts));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].rule == "V3");
  CHECK(diags[0].element == "dm1");
  CHECK(diags[0].message.find("request.zipCode") != std::string::npos);
}

TEST_CASE("V9 is a warning only") {
  auto diags = validate(load("bad-v9").diagram);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::warning);
  CHECK_FALSE(has_errors(diags));
}

TEST_CASE("validation is pure and ordered") {
  for (const auto& name : all_fixtures()) {
    Diagram d = load(name).diagram;
    std::string before = serialize_diagram(d);
    auto a = validate(d);
    auto b = validate(d);
    CHECK(a == b);
    CHECK(serialize_diagram(d) == before);
    CHECK(std::is_sorted(a.begin(), a.end(), [](const Diagnostic& x, const Diagnostic& y) {
      return std::tuple(std::stoi(x.rule.substr(1)), x.element) < std::tuple(std::stoi(y.rule.substr(1)), y.element);
    }));
  }
}

TEST_CASE("removing the blamed element never brings the same diagnostic back") {
  for (const auto& name : all_fixtures()) {
    Diagram d = load(name).diagram;
    for (const auto& diag : validate(d)) {
      if (!d.kind_of(diag.element)) continue;
      CAPTURE(name);
      CAPTURE(format_diagnostic(diag));
      auto after = validate(without_element(d, diag.element));
      CHECK(std::find(after.begin(), after.end(), diag) == after.end());
    }
  }
}

TEST_CASE("objects exchanged only with black-box pools are exempt from V1") {
  Diagram d = load("patterns/p17").diagram;
  CHECK(validate(d).empty());
}
