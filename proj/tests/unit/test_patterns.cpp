#include "bpdmn/patterns.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bpdmn;
using namespace testsupport;

TEST_CASE("matrix rows from the comparison table") {
  CHECK(pattern_info(7).bpmn == Support::unsupported);
  CHECK(pattern_info(7).bpdmn == Support::supported);
  CHECK(pattern_info(35).bpmn == Support::unsupported);
  CHECK(pattern_info(35).bpdmn == Support::unsupported);
  CHECK(pattern_info(29).bpmn == Support::partial);
  CHECK(pattern_info(29).bpdmn == Support::supported);
  CHECK(to_symbol(Support::partial) == "+/-");
}

TEST_CASE("matrix shape") {
  const auto& m = capability_matrix();
  int unsupported = 0, partial = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m[i].id == static_cast<PatternId>(i + 1));
    unsupported += m[i].bpdmn == Support::unsupported;
    partial += m[i].bpdmn == Support::partial;
  }
  CHECK(unsupported == 4);
  CHECK(partial == 0);
  for (PatternId id : {3, 6, 35, 37}) CHECK(pattern_info(id).bpdmn == Support::unsupported);
}

TEST_CASE("pattern ids parse from numbers and keys") {
  CHECK(parse_pattern_id("7") == 7);
  CHECK(parse_pattern_id("p7") == 7);
  CHECK(parse_pattern_id("structure") == pattern_structure);
  CHECK(parse_pattern_id("process_data_store") == pattern_process_data_store);
  CHECK_FALSE(parse_pattern_id("p45").has_value());
  CHECK_FALSE(parse_pattern_id("").has_value());
}

TEST_CASE("travel shows data transformation through each mapping") {
  Diagram d = load("travel").diagram;
  PatternReport rep = analyze(d);
  for (PatternId id : {32, 33}) {
    CHECK(rep.of(id).size() == d.mappings().size());
    for (const auto& m : d.mappings()) {
      bool witnessed = false;
      for (const auto& w : rep.of(id)) witnessed |= w.count(m.id) > 0;
      CHECK(witnessed);
    }
  }
}

TEST_CASE("empty diagram has no instances") {
  PatternReport rep = analyze(load("empty").diagram);
  CHECK(rep.total() == 0);
  CHECK(rep.instances.size() == pattern_count);
}

TEST_CASE("multi-instance task with a shared store") {
  PatternReport rep = analyze(load("patterns/p4").diagram);
  CHECK_FALSE(rep.of(4).empty());
  CHECK_FALSE(analyze(load("patterns/p12").diagram).of(12).empty());
  CHECK_FALSE(analyze(load("patterns/p13").diagram).of(13).empty());
  PatternReport mi = analyze(load("multi-instance").diagram);
  CHECK_FALSE(mi.of(4).empty());
}

TEST_CASE("unsupported patterns never get instances") {
  for (const auto& name : all_fixtures()) {
    Diagram d = load(name).diagram;
    PatternReport rep;
    try {
      rep = analyze(d);
    } catch (const PreconditionError&) {
      continue;
    }
    for (const auto& info : capability_matrix())
      if (info.bpdmn == Support::unsupported) CHECK(rep.of(info.id).empty());
  }
}

TEST_CASE("analysis needs a valid diagram") {
  CHECK_THROWS_AS(analyze(load("bad-v1").diagram), PreconditionError);
  CHECK_NOTHROW(analyze(load("bad-v9").diagram));
}

TEST_CASE("detectors do not fire everywhere") {
  // A plain task chain shows no store, message or multi-instance patterns.
  PatternReport rep = analyze(load("good-v7").diagram);
  for (PatternId id : {1, 4, 7, 8, 12, 13, 15, 16, 23, 24, 32, 33, 38, 40}) {
    CAPTURE(id);
    CHECK(rep.of(id).empty());
  }
}
