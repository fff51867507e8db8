// Checks on the test oracles themselves.
#include "bpdmn/format.hpp"
#include "bpdmn/validator.hpp"
#include "doctest.h"
#include "explorer.hpp"
#include "fixtures.hpp"
#include "generator.hpp"
#include "trace_checks.hpp"
#include "xml_tree.hpp"

using namespace bpdmn;
using namespace testsupport;

TEST_CASE("subtree matching") {
  XmlTree doc = parse_xml(R"(<root><a x="1" y="2"><b>text</b><b>other</b></a></root>)");
  CHECK(contains_subtree(doc, R"(<a x="1"/>)"));
  CHECK(contains_subtree(doc, R"(<a><b>other</b><b>text</b></a>)"));
  CHECK(contains_subtree(doc, R"(<b> text </b>)"));
  CHECK_FALSE(contains_subtree(doc, R"(<a x="2"/>)"));
  CHECK_FALSE(contains_subtree(doc, R"(<a><b>text</b><b>text</b></a>)"));
  CHECK_FALSE(contains_subtree(doc, R"(<a z="1"/>)"));
  CHECK_FALSE(contains_subtree(doc, R"(<a x="1"/>)", true));
  CHECK(contains_subtree(doc, R"(<a x="1" y="2"><b>text</b><b>other</b></a>)", true));
  strip_attributes(doc, {"y"});
  CHECK(contains_subtree(doc, R"(<a x="1"><b>text</b><b>other</b></a>)", true));
  CHECK(count_elements(doc, "b") == 2);
}

TEST_CASE("explorer enumerates interleavings") {
  Document doc = load("parallel");
  Exploration ex = explore(doc.diagram, doc.simulation);
  CHECK_FALSE(ex.truncated);
  CHECK(ex.states > doc.diagram.all_nodes().size());
  CHECK(ex.fired_sets.size() == 1);
  CHECK_THROWS_AS(explore(load("travel").diagram, load("travel").simulation), Unsupported);
  CHECK_THROWS_AS(explore(load("eco").diagram, load("eco").simulation, {{"gw_check", "mf3"}}), Unsupported);
}

TEST_CASE("explorer sees both outcomes of a race") {
  // A writer and an optional reader of the same store run in parallel: the reader
  // ends up with a record only when the writer went first. Same fired set, two terminal states.
  const char* text = R"({
    "bpdmn": "1.0", "id": "race",
    "pools": [{"id": "p", "name": "Process",
      "nodes": [{"id": "e", "name": "End", "kind": "end_event"},
                {"id": "fork", "name": "Fork", "kind": "gateway_parallel"},
                {"id": "join", "name": "Join", "kind": "gateway_parallel"},
                {"id": "read", "name": "Read", "kind": "task"},
                {"id": "s", "name": "Start", "kind": "start_event_none"},
                {"id": "write", "name": "Write", "kind": "task"}],
      "sequence_flows": [{"id": "f1", "source": "s", "target": "fork"},
                         {"id": "f2", "source": "fork", "target": "write"},
                         {"id": "f3", "source": "fork", "target": "read"},
                         {"id": "f4", "source": "write", "target": "join"},
                         {"id": "f5", "source": "read", "target": "join"},
                         {"id": "f6", "source": "join", "target": "e"}],
      "data_flows": [{"id": "d1", "source": "write", "target": "shared", "object": "sdoc"},
                     {"id": "d2", "source": "shared", "target": "read", "object": "rdoc", "optional": true}]}],
    "stores": [{"id": "shared", "name": "Shared", "icon": "folder", "scope": "diagram",
                "entities": [{"name": "Doc", "fields": [{"name": "text", "type": "string"}]}],
                "relationships": [], "generalizations": []}],
    "objects": [{"id": "rdoc", "name": "Copy", "stereotype": "document", "physicality": "digital",
                 "origin_store": "shared", "variables": [{"name": "Doc.text", "type": "string"}]},
                {"id": "sdoc", "name": "Document", "stereotype": "document", "physicality": "digital",
                 "origin_store": "shared", "variables": [{"name": "Doc.text", "type": "string"}]}],
    "mappings": [], "message_flows": [],
    "behaviors": {"write": {"effects": [{"target": "sdoc.Doc.text", "value": "'draft'"}]}}
  })";
  Document doc = parse_document(text);
  REQUIRE_FALSE(has_errors(validate(doc.diagram)));
  Exploration ex = explore(doc.diagram, doc.simulation);
  CHECK_FALSE(ex.truncated);
  CHECK(ex.fired_sets.size() == 1);
  CHECK(ex.terminals == 2);
}

TEST_CASE("explorer honours decided gateways") {
  Document doc = load("travel");
  Exploration valid = explore(doc.diagram, doc.simulation, {{"gw_card", "f03"}});
  REQUIRE(valid.fired_sets.size() == 1);
  CHECK(valid.fired_sets.begin()->count("check_hotel"));
  Exploration invalid = explore(doc.diagram, doc.simulation, {{"gw_card", "f04"}});
  REQUIRE(invalid.fired_sets.size() == 1);
  CHECK_FALSE(invalid.fired_sets.begin()->count("check_hotel"));
  CHECK(invalid.fired_sets.begin()->count("reject"));
}

TEST_CASE("generated diagrams are valid, varied and reproducible") {
  int mappings = 0, messages = 0, stores = 0, sub_processes = 0, gateways = 0, multi = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Diagram d = random_diagram(seed);
    auto diags = validate(d);
    CAPTURE(seed);
    CHECK_FALSE(has_errors(diags));
    mappings += !d.mappings().empty();
    messages += !d.message_flows().empty();
    stores += !d.stores().empty();
    for (const Node* n : d.all_nodes()) {
      sub_processes += n->kind == NodeKind::sub_process;
      gateways += n->kind == NodeKind::gateway_exclusive_data;
      multi += n->multi_instance;
    }
  }
  CHECK(mappings > 30);
  CHECK(messages > 30);
  CHECK(stores > 100);
  CHECK(sub_processes > 30);
  CHECK(gateways > 30);
  CHECK(multi > 30);
  CHECK(serialize_diagram(random_diagram(5)) == serialize_diagram(random_diagram(5)));
  CHECK(serialize_diagram(random_diagram(5)) != serialize_diagram(random_diagram(6)));
}

TEST_CASE("fuzzer produces varied inputs") {
  Fuzzer f({read_file(fixture_path("travel"))}, 1);
  std::set<std::string> seen;
  for (int i = 0; i < 200; ++i) seen.insert(f.next());
  CHECK(seen.size() > 190);
}

TEST_CASE("table parser reads the comparison table") {
  auto rows = reference_capability_table(reference_text());
  CHECK(rows.size() == 44);
  CHECK(rows.at("7") == std::pair<std::string, std::string>{"-", "+"});
  CHECK(rows.at("29") == std::pair<std::string, std::string>{"+/-", "+"});
  CHECK(rows.at("Explicit Data Flow") == std::pair<std::string, std::string>{"+/-", "+"});
}
