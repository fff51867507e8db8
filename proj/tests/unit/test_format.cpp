#include "bpdmn/format.hpp"
#include "bpdmn/validator.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bpdmn;
using namespace testsupport;

namespace {

const char* minimal =
    R"({"bpdmn":"1.0","pools":[],"stores":[],"objects":[],"mappings":[],"message_flows":[]})";

const char* canonical_empty = R"({
  "bpdmn": "1.0",
  "pools": [],
  "stores": [],
  "objects": [],
  "mappings": [],
  "message_flows": []
}
)";

}  // namespace

TEST_CASE("minimal document parses to an empty diagram and serializes back") {
  Diagram d = parse_diagram(minimal);
  CHECK(d.pools().empty());
  CHECK(d.all_nodes().empty());
  CHECK(serialize_diagram(d) == canonical_empty);
  CHECK(serialize_diagram(Diagram()) == canonical_empty);
}

TEST_CASE("travel fixture exposes the request variables") {
  Diagram d = load("travel").diagram;
  const DataObject* input = d.find_object("input");
  REQUIRE(input);
  for (const char* v : {"cardNumber", "carCompany", "hotelCompany"}) CHECK(input->find_variable(v));
}

TEST_CASE("every fixture is stored in canonical form") {
  for (const auto& name : all_fixtures()) {
    CAPTURE(name);
    std::string text = read_file(fixture_path(name));
    Document doc = parse_document(text);
    CHECK(serialize_document(doc.diagram, doc.simulation) == text);
  }
}

TEST_CASE("serialization is a fixed point after one round") {
  for (const auto& name : all_fixtures()) {
    CAPTURE(name);
    std::string once = serialize_diagram(load(name).diagram);
    CHECK(serialize_diagram(parse_diagram(once)) == once);
  }
}

TEST_CASE("elements are ordered by id") {
  std::string text = serialize_diagram(load("eco").diagram);
  auto eco = text.find("\"id\": \"ECO_Data\"");
  auto form = text.find("\"id\": \"Form_Data\"");
  REQUIRE(eco != std::string::npos);
  REQUIRE(form != std::string::npos);
  CHECK(eco < form);
}

TEST_CASE("dangling store reference is reported with a span") {
  std::string text = read_file(fixture_path("sharing-shared"));
  auto pos = text.find("\"target\": \"shared\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 18, "\"target\": \"nowhere\"");
  try {
    parse_diagram(text);
    FAIL("expected a dangling reference");
  } catch (const FormatError& e) {
    CHECK(e.kind() == FormatError::Kind::dangling_reference);
    CHECK(e.span().line > 1);
    CHECK(e.span().column >= 1);
    CHECK(e.detail().find("nowhere") != std::string::npos);
  }
}

TEST_CASE("malformed and schema-violating documents") {
  try {
    parse_diagram("{\n  \"bpdmn\": \"1.0\",\n  \"pools\": [\n");
    FAIL("expected malformed");
  } catch (const FormatError& e) {
    CHECK(e.kind() == FormatError::Kind::malformed);
    CHECK(e.span().line >= 3);
  }
  CHECK_THROWS_AS(parse_diagram(R"({"bpdmn":"2.0","pools":[],"stores":[],"objects":[],"mappings":[],"message_flows":[]})"),
                  FormatError);
  CHECK_THROWS_AS(parse_diagram(R"({"bpdmn":"1.0","pools":[]})"), FormatError);
  CHECK_THROWS_AS(parse_diagram("[]"), FormatError);
  CHECK_THROWS_AS(parse_diagram(""), FormatError);
  try {
    parse_diagram(R"({"bpdmn":"1.0","pools":[{"id":"p","name":"P","nodes":[{"id":"n","name":"N","kind":"bogus"}]}],"stores":[],"objects":[],"mappings":[],"message_flows":[]})");
    FAIL("expected schema error");
  } catch (const FormatError& e) {
    CHECK(e.kind() == FormatError::Kind::schema);
  }
}

TEST_CASE("unknown keys: strict rejects, lenient warns") {
  std::string text = R"({"bpdmn":"1.0","colour":"red","pools":[],"stores":[],"objects":[],"mappings":[],"message_flows":[]})";
  CHECK_THROWS_AS(parse_document(text), FormatError);
  Document doc = parse_document(text, {true});
  REQUIRE(doc.warnings.size() == 1);
  CHECK(doc.warnings[0].find("colour") != std::string::npos);
}

TEST_CASE("guard and copy-rule syntax errors point into the document") {
  std::string text = read_file(fixture_path("travel"));
  auto pos = text.find("response.valid");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 14, "response.valid =");
  try {
    parse_diagram(text);
    FAIL("expected a syntax error");
  } catch (const FormatError& e) {
    CHECK(e.span().line > 1);
  }
}

TEST_CASE("simulation sections survive a round trip") {
  Document doc = load("eco");
  CHECK_FALSE(doc.simulation.behaviors.empty());
  CHECK_FALSE(doc.simulation.initial_records.empty());
  Document again = parse_document(serialize_document(doc.diagram, doc.simulation));
  CHECK(again.simulation == doc.simulation);
  CHECK(again.diagram.parts() == doc.diagram.parts());
}

TEST_CASE("sidecar sections are checked against the diagram") {
  Diagram d = load("travel").diagram;
  SimulationSetup ok = parse_simulation(read_file(fixture_path("travel.invalid-card.json")), d);
  CHECK(ok.start_inputs.at("input").at("cardType") == Value::string("EXPIRED"));
  CHECK_THROWS_AS(parse_simulation(R"({"behaviors":{"ghost":{"effects":[]}}})", d), FormatError);
}
