#include <regex>

#include "bpdmn/render.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bpdmn;
using namespace testsupport;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("travel renders one store node") {
  std::string dot = to_dot(load("travel").diagram);
  CHECK(count(dot, "class=\"store\"") == 1);
  CHECK(dot.find("Archive (DB)") != std::string::npos);
  CHECK(count(dot, "class=\"object\"") == static_cast<int>(load("travel").diagram.objects().size()));
  CHECK(count(dot, "shape=note") >= 1);
}

TEST_CASE("hiding data removes object nodes") {
  RenderOptions opts;
  opts.hide_data = true;
  std::string dot = to_dot(load("travel").diagram, opts);
  CHECK(count(dot, "class=\"object\"") == 0);
  CHECK(count(dot, "obj:") == 0);
  CHECK(count(dot, "class=\"store\"") == 1);
}

TEST_CASE("empty diagram renders an empty graph") {
  CHECK(to_dot(load("empty").diagram) == "digraph \"empty\" {\n}\n");
}

TEST_CASE("node classes cover tasks, gateways and events") {
  std::string dot = to_dot(load("travel").diagram);
  CHECK(count(dot, "class=\"task\"") == 5);
  CHECK(count(dot, "class=\"gateway\"") == 3);
  CHECK(count(dot, "class=\"event\"") == 3);
  CHECK(count(dot, "subgraph \"cluster_customer\"") == 1);
  CHECK(dot.back() == '\n');
}

TEST_CASE("braces balance for every fixture") {
  for (const auto& name : all_fixtures()) {
    std::string dot = to_dot(load(name).diagram);
    CAPTURE(name);
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = 0; i < dot.size(); ++i) {
      char c = dot[i];
      if (c == '"' && (i == 0 || dot[i - 1] != '\\')) in_string = !in_string;
      if (in_string) continue;
      if (c == '{') ++depth;
      if (c == '}') --depth;
      CHECK(depth >= 0);
    }
    CHECK(depth == 0);
    CHECK_FALSE(in_string);
  }
}
