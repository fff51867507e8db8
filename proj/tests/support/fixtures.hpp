#pragma once

#include <string>
#include <vector>

#include "bpdmn/format.hpp"

namespace testsupport {

std::string fixture_dir();
/// `travel` resolves to `<dir>/travel.bpdmn.json`; names with an extension are taken as-is.
std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);
bpdmn::Document load(const std::string& name);
/// Fixture plus a sidecar: behaviors and initial records merge, start inputs are replaced.
bpdmn::Document load(const std::string& name, const std::string& sidecar);

std::string golden(const std::string& file);
std::string source_file(const std::string& relative);
/// Text holding the reference capability table.
std::string reference_text();

/// Relative names (without extension) of every `.bpdmn.json` under the fixture dir, sorted.
std::vector<std::string> all_fixtures();

}  // namespace testsupport
