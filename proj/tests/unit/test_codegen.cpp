#include <algorithm>
#include <set>

#include "bpdmn/codegen.hpp"
#include "bpdmn/validator.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "xml_tree.hpp"

using namespace bpdmn;
using namespace testsupport;

namespace {

std::vector<std::string> valid_fixtures() {
  std::vector<std::string> out;
  for (const auto& name : all_fixtures())
    if (!has_errors(validate(load(name).diagram))) out.push_back(name);
  return out;
}

void collect_attr(const XmlTree& t, const std::string& element, const std::string& attr,
                  std::vector<std::string>& out) {
  for (const auto& [key, child] : t) {
    if (key == "<xmlattr>") continue;
    if (key == element) out.push_back(child.get("<xmlattr>." + attr, ""));
    collect_attr(child, element, attr, out);
  }
}

}  // namespace

TEST_CASE("both generators emit well-formed XML for every valid fixture") {
  for (const auto& name : valid_fixtures()) {
    CAPTURE(name);
    Diagram d = load(name).diagram;
    CHECK_NOTHROW(parse_xml(to_bpel(d).text));
    CHECK_NOTHROW(parse_xml(to_xpdl(d).text));
  }
}

TEST_CASE("generation is deterministic") {
  for (const auto& name : valid_fixtures()) {
    Diagram d = load(name).diagram;
    CHECK(to_bpel(d).text == to_bpel(d).text);
    CHECK(to_xpdl(d).text == to_xpdl(d).text);
    CHECK(to_bpel(d).warnings == to_bpel(d).warnings);
  }
}

TEST_CASE("invalid diagrams are refused") {
  CHECK_THROWS_AS(to_bpel(load("bad-v3").diagram), PreconditionError);
  CHECK_THROWS_AS(to_xpdl(load("bad-v3").diagram), PreconditionError);
}

TEST_CASE("BPEL variables are unique and every copy rule appears once") {
  for (const auto& name : valid_fixtures()) {
    CAPTURE(name);
    Diagram d = load(name).diagram;
    XmlTree doc = parse_xml(to_bpel(d).text);
    std::vector<std::string> vars;
    collect_attr(doc, "variable", "name", vars);
    CHECK(std::set<std::string>(vars.begin(), vars.end()).size() == vars.size());
    std::size_t rules = 0;
    for (const auto& m : d.mappings()) rules += m.rules.size();
    CHECK(count_elements(doc, "copy") == static_cast<int>(rules));
    CHECK(count_elements(doc, "assign") == static_cast<int>(d.mappings().size()));
  }
}

TEST_CASE("BPEL travel translation") {
  Translation t = to_bpel(load("travel").diagram);
  XmlTree doc = parse_xml(t.text);
  CHECK(contains_subtree(doc, R"(<variable name="input" messageType="input"/>)"));
  CHECK(contains_subtree(doc, R"(<variable name="request" messageType="doCreditCardCheckingRequest"/>)"));
  CHECK(contains_subtree(doc, R"(<receive name="Receive Request" variable="input"/>)"));
  CHECK(contains_subtree(doc, R"(<if><condition>response.valid</condition></if>)"));
  CHECK(count_elements(doc, "flow") >= 1);
  CHECK(contains_subtree(doc, R"(<invoke name="Check Hotel Reservation" inputVariable="hotel_req"/>)"));
  // Archive (DB) becomes one variable per entity field.
  std::vector<std::string> vars;
  collect_attr(doc, "variable", "name", vars);
  const DataStore* archive = load("travel").diagram.find_store("archive");
  REQUIRE(archive);
  std::size_t fields = 0;
  for (const auto& e : archive->entities) fields += e.fields.size();
  CHECK(fields > 0);
  auto store_vars = std::count_if(vars.begin(), vars.end(), [](const std::string& v) { return v.rfind("archive.", 0) == 0; });
  CHECK(static_cast<std::size_t>(store_vars) == fields);
  CHECK(contains_subtree(doc, R"(<variable name="archive.TravelPlan.customer" type="xsd:string"/>)"));
}

TEST_CASE("BPEL warns about objects it cannot place") {
  Translation t = to_bpel(load("patterns/p15").diagram);
  CHECK_FALSE(t.warnings.empty());
  Translation scoped = to_bpel(load("subprocess").diagram);
  bool scope_warning = false;
  for (const auto& w : scoped.warnings) scope_warning |= w.find("notes") != std::string::npos;
  CHECK(scope_warning);
}

TEST_CASE("XPDL keeps every data construct") {
  for (const auto& name : valid_fixtures()) {
    CAPTURE(name);
    Diagram d = load(name).diagram;
    XmlTree doc = parse_xml(to_xpdl(d).text);
    CHECK(count_elements(doc, "DataObject") == static_cast<int>(d.objects().size()));
    std::size_t rules = 0;
    for (const auto& m : d.mappings()) rules += m.rules.size();
    CHECK(count_elements(doc, "Assignment") == static_cast<int>(rules));
    std::size_t messages = 0;
    for (const auto& f : d.message_flows()) {
      std::set<std::string> objs;
      for (const auto& a : f.attachments) objs.insert(a.object);
      messages += objs.size();
    }
    CHECK(count_elements(doc, "Message") == static_cast<int>(messages));
    std::size_t flows = d.all_sequence_flows().size();
    CHECK(count_elements(doc, "Transition") == static_cast<int>(flows));
    std::vector<std::string> ids;
    collect_attr(doc, "DataField", "Id", ids);
    ids.erase(std::remove(ids.begin(), ids.end(), ""), ids.end());
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  }
}

TEST_CASE("XPDL scoped store fields sit in the sub-process section") {
  XmlTree doc = parse_xml(to_xpdl(load("subprocess").diagram).text);
  CHECK(contains_subtree(doc, R"(<ActivitySet Id="sp"><DataFields><DataField Id="notes.Note.text"/></DataFields></ActivitySet>)"));
  CHECK(contains_subtree(doc, R"(<Activity Id="sp"><BlockActivity ActivitySetId="sp"/></Activity>)"));
}

TEST_CASE("XPDL basic types follow variable types") {
  XmlTree doc = parse_xml(to_xpdl(load("multi-instance").diagram).text);
  CHECK(contains_subtree(doc, R"(<DataField Id="ledger.Line.index"><DataType><BasicType Type="FLOAT"/></DataType></DataField>)"));
}

TEST_CASE("XPDL transitions carry guards") {
  XmlTree doc = parse_xml(to_xpdl(load("travel").diagram).text);
  CHECK(contains_subtree(doc, R"(<Transition Id="f03"><Condition Type="CONDITION">response.valid</Condition></Transition>)"));
  CHECK(contains_subtree(doc, R"(<Transition Id="f04"><Condition Type="OTHERWISE"/></Transition>)"));
}
