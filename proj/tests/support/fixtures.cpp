#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace testsupport {

std::string fixture_dir() { return BPDMN_FIXTURE_DIR; }

std::string fixture_path(const std::string& name) {
  if (name.find(".json") != std::string::npos) return fixture_dir() + "/" + name;
  return fixture_dir() + "/" + name + ".bpdmn.json";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bpdmn::Document load(const std::string& name) { return bpdmn::parse_document(read_file(fixture_path(name))); }

bpdmn::Document load(const std::string& name, const std::string& sidecar) {
  bpdmn::Document doc = load(name);
  bpdmn::SimulationSetup extra = bpdmn::parse_simulation(read_file(fixture_path(sidecar)), doc.diagram);
  for (auto& [task, b] : extra.behaviors) doc.simulation.behaviors[task] = b;
  for (auto& [store, records] : extra.initial_records) doc.simulation.initial_records[store] = records;
  if (!extra.start_inputs.empty()) doc.simulation.start_inputs = extra.start_inputs;
  return doc;
}

std::string golden(const std::string& file) { return read_file(std::string(BPDMN_GOLDEN_DIR) + "/" + file); }

std::string reference_text() { return read_file(BPDMN_REFERENCE_TEXT); }

std::string source_file(const std::string& relative) {
  return read_file(std::string(BPDMN_SOURCE_DIR) + "/" + relative);
}

std::vector<std::string> all_fixtures() {
  const std::string suffix = ".bpdmn.json";
  std::vector<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(fixture_dir())) {
    std::string rel = fs::relative(e.path(), fixture_dir()).generic_string();
    if (rel.size() > suffix.size() && rel.compare(rel.size() - suffix.size(), suffix.size(), suffix) == 0)
      out.push_back(rel.substr(0, rel.size() - suffix.size()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport
