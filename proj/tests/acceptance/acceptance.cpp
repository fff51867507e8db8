// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bpdmn/cli.hpp"
#include "bpdmn/codegen.hpp"
#include "bpdmn/format.hpp"
#include "bpdmn/patterns.hpp"
#include "bpdmn/simulator.hpp"
#include "bpdmn/validator.hpp"
#include "explorer.hpp"
#include "fixtures.hpp"
#include "generator.hpp"
#include "trace_checks.hpp"
#include "xml_tree.hpp"

#include <boost/property_tree/xml_parser.hpp>

using namespace bpdmn;
using namespace testsupport;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    ok = false;
    notes.push_back(why);
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

int cli(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  out = o.str();
  return code;
}

bool has_subtree(const XmlTree& doc, const std::string& golden_file) {
  XmlTree expected = parse_xml(golden(golden_file));
  strip_attributes(expected, bpel_placeholder_attributes());
  std::ostringstream text;
  boost::property_tree::write_xml(text, expected);
  return contains_subtree(doc, text.str());
}

const XmlTree* find_assign(const XmlTree& t, const std::string& name) {
  for (const auto& [key, child] : t) {
    if (key == "assign" && child.get("<xmlattr>.name", "") == name) return &child;
    if (const XmlTree* hit = find_assign(child, name)) return hit;
  }
  return nullptr;
}

void golden_bpel(Outcome& o) {
  std::string out;
  int code = cli({"translate", fixture_path("travel"), "--to", "bpel"}, out);
  o.expect(code == 0, "translate exit " + std::to_string(code));
  XmlTree doc = parse_xml(out);
  strip_attributes(doc, bpel_placeholder_attributes());
  for (const char* g : {"bpel_variables.xml", "bpel_assign_dm1.xml", "bpel_invoke.xml"})
    o.expect(has_subtree(doc, g), std::string("missing fragment ") + g);
  const XmlTree* dm1 = find_assign(doc, "dm1");
  o.expect(dm1 && dm1->count("copy") == 2, "assign dm1 should hold exactly two copy rules");
}

void golden_xpdl(Outcome& o) {
  std::string out;
  int code = cli({"translate", fixture_path("eco"), "--to", "xpdl"}, out);
  o.expect(code == 0, "translate exit " + std::to_string(code));
  XmlTree doc = parse_xml(out);
  for (const char* g : {"xpdl_datafield.xml", "xpdl_dataobject.xml", "xpdl_activity.xml", "xpdl_assignment.xml"})
    o.expect(has_subtree(doc, g), std::string("missing fragment ") + g);
}

void matrix(Outcome& o) {
  std::string out;
  o.expect(cli({"patterns", "--matrix"}, out) == 0, "patterns --matrix failed");
  auto printed = matrix_rows(out);
  auto reference = reference_capability_table(reference_text());
  o.expect(reference.size() == 44, "reference table parsed into " + std::to_string(reference.size()) + " rows");
  o.expect(printed.size() == 44, "matrix printed " + std::to_string(printed.size()) + " rows");
  int plus = 0, partial = 0, minus = 0;
  for (const auto& [key, cols] : reference) {
    auto it = printed.find(key);
    if (it == printed.end()) {
      o.fail("row " + key + " missing");
      continue;
    }
    if (it->second != cols)
      o.fail("row " + key + ": printed " + it->second.first + " " + it->second.second + ", table " + cols.first +
             " " + cols.second);
    plus += cols.second == "+";
    partial += cols.second == "+/-";
    minus += cols.second == "-";
  }
  o.expect(plus == 40 && partial == 0 && minus == 4, "BPDMN column counts");
  for (const char* row : {"3", "6", "35", "37"})
    o.expect(printed.count(row) && printed[row].second == "-", std::string("row ") + row + " should be unsupported");
}

void semantics(Outcome& o) {
  auto travel = load("travel");
  RunResult ok = run(travel.diagram, travel.simulation);
  const Node* cc = nullptr;
  for (const Node* n : travel.diagram.all_nodes())
    if (n->name == "Check Credit Card") cc = n;
  o.expect(cc && ok.count_fired(cc->id) == 1, "valid card: Check Credit Card should fire");
  for (const char* t : {"check_hotel", "check_car", "check_flight"})
    o.expect(ok.count_fired(t) == 1, std::string("valid card: ") + t + " should fire once");
  std::string archive;
  for (const auto& s : travel.diagram.stores())
    if (s.name == "Archive (DB)") archive = s.id;
  o.expect(!archive.empty() && ok.final_state.stores[archive].size() == 1, "valid card: one archive record");
  o.expect(ok.status == Status::completed, "valid card run should complete");

  auto invalid = load("travel", "travel.invalid-card.json");
  RunResult bad = run(invalid.diagram, invalid.simulation);
  for (const char* t : {"check_hotel", "check_car", "check_flight"})
    o.expect(bad.count_fired(t) == 0, std::string("invalid card: ") + t + " fired");
  // Hand trace: an EXPIRED card leaves response.valid false, so gw_card takes its default flow f04.
  Exploration ex = explore(invalid.diagram, invalid.simulation, {{"gw_card", "f04"}});
  for (const auto& fired : ex.fired_sets)
    for (const char* t : {"check_hotel", "check_car", "check_flight"})
      o.expect(!fired.count(t), std::string("explorer: ") + t + " reachable with an invalid card");
  o.expect(!ex.truncated && !ex.fired_sets.empty(), "explorer did not finish on the invalid-card run");

  auto eco = load("eco", "eco.fail.json");
  RunResult fail = run(eco.diagram, eco.simulation);
  o.expect(fail.count_fired("process_eco") == 0, "ECO failure: Process ECO fired");
  o.expect(fail.count_fired("notify") == 1, "ECO failure: notify branch not taken");
  o.expect(fail.status == Status::completed, "ECO failure run should end the process");

  int runs = 0;
  for (const std::string name : {"gating", "travel", "eco", "sharing-direct", "sharing-shared", "sharing-global", "parallel",
                                 "subprocess", "multi-instance"}) {
    auto doc = load(name);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RunResult r = run(doc.diagram, doc.simulation, {1000, Policy::random, seed});
      ++runs;
      for (const auto& [step, what] : gating_violations(doc.diagram, doc.simulation, r.trace))
        o.fail(name + " seed " + std::to_string(seed) + " step " + std::to_string(step) + " " + what);
    }
  }
  o.notes.push_back(std::to_string(runs) + " random-policy runs checked for gating");
}

void oracle(Outcome& o) {
  // Parallel gateways are kept in scope: they are where interleavings actually differ.
  int checked = 0, without_gateways = 0;
  for (const auto& name : all_fixtures()) {
    Document doc = load(name);
    const Diagram& d = doc.diagram;
    if (d.all_nodes().empty() || d.all_nodes().size() > 8 || has_errors(validate(d))) continue;
    bool exclusive = false, parallel = false;
    for (const Node* n : d.all_nodes()) {
      exclusive |= n->kind == NodeKind::gateway_exclusive_data;
      parallel |= n->kind == NodeKind::gateway_parallel;
    }
    if (exclusive) continue;
    without_gateways += !parallel;
    RunResult r = run(d, doc.simulation);
    auto fired = r.fired();
    std::set<std::string> sim(fired.begin(), fired.end());
    Exploration ex = explore(d, doc.simulation);
    ++checked;
    if (ex.truncated) o.fail(name + ": explorer truncated");
    for (const auto& set : ex.fired_sets)
      if (set != sim) o.fail(name + ": an interleaving fires a different node set");
  }
  o.expect(checked >= 20, "only " + std::to_string(checked) + " fixtures in scope");
  o.notes.push_back(std::to_string(checked) + " fixtures explored, " + std::to_string(without_gateways) +
                    " of them without any gateway");
}

void validator(Outcome& o) {
  int cases = 0;
  for (int i = 1; i <= 9; ++i) {
    std::string rule = "V" + std::to_string(i);
    auto good = validate(load("good-v" + std::to_string(i)).diagram);
    o.expect(good.empty(), "good-v" + std::to_string(i) + " has diagnostics");
    auto bad = validate(load("bad-v" + std::to_string(i)).diagram);
    bool hit = false;
    for (const auto& diag : bad) hit = hit || diag.rule == rule;
    o.expect(hit, "bad-v" + std::to_string(i) + " lacks a " + rule + " diagnostic");
    cases += 2;
  }
  for (const char* model : {"travel", "eco"})
    o.expect(!has_errors(validate(load(model).diagram)), std::string(model) + " has errors");
  o.notes.push_back(std::to_string(cases) + " rule cases");
}

void round_trip(Outcome& o) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Diagram d = random_diagram(seed);
    auto diags = validate(d);
    if (has_errors(diags)) {
      o.fail("generated diagram " + std::to_string(seed) + " invalid: " + format_diagnostic(diags.front()));
      continue;
    }
    std::string once = serialize_diagram(d);
    std::string twice;
    try {
      twice = serialize_diagram(parse_diagram(once));
    } catch (const std::exception& e) {
      o.fail("seed " + std::to_string(seed) + ": reparse failed: " + e.what());
      continue;
    }
    if (once != twice) o.fail("seed " + std::to_string(seed) + ": serialization not stable");
  }
  std::vector<std::string> corpus;
  for (const auto& name : all_fixtures()) corpus.push_back(read_file(fixture_path(name)));
  Fuzzer fuzz(corpus, 20261019);
  int diagnosed = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string input = fuzz.next();
    try {
      parse_document(input, {i % 2 == 1});
    } catch (const FormatError&) {
      ++diagnosed;
    } catch (const std::exception& e) {
      o.fail("fuzz input " + std::to_string(i) + " escaped as " + e.what());
    }
  }
  o.notes.push_back(std::to_string(diagnosed) + " of 10000 fuzz inputs diagnosed");
}

void exemplars(Outcome& o) {
  int files = 0;
  for (const auto& name : all_fixtures()) {
    if (name.rfind("patterns/", 0) != 0) continue;
    ++files;
    std::string key = name.substr(9);
    auto id = parse_pattern_id(key);
    if (!id) {
      o.fail(name + ": unknown pattern key");
      continue;
    }
    PatternReport rep = analyze(load(name).diagram);
    o.expect(!rep.of(*id).empty(), name + ": no instance of its pattern");
  }
  o.expect(files == 40, std::to_string(files) + " exemplar files");
  o.expect(analyze(load("empty").diagram).total() == 0, "empty diagram reports instances");
}

struct Criterion {
  int number;
  const char* title;
  double limit_ms;  // 0: untimed
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "golden BPEL fragments", 1000, golden_bpel},
      {2, "golden XPDL fragments", 1000, golden_xpdl},
      {3, "capability matrix matches the reference table", 0, matrix},
      {4, "semantics suite", 5000, semantics},
      {5, "oracle equivalence", 30000, oracle},
      {6, "validator coverage", 0, validator},
      {7, "round trip and fuzz", 60000, round_trip},
      {8, "pattern exemplars", 0, exemplars},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_ms > 0 && ms > c.limit_ms) o.fail("took " + std::to_string(ms) + " ms");
    std::printf("criterion %d: %s %s (%.0f ms)\n", c.number, o.ok ? "PASS" : "FAIL", c.title, ms);
    std::size_t shown = 0;
    for (const auto& n : o.notes)
      if (shown++ < 12) std::printf("    %s\n", n.c_str());
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
