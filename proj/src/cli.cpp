#include "bpdmn/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "bpdmn/codegen.hpp"
#include "bpdmn/format.hpp"
#include "bpdmn/patterns.hpp"
#include "bpdmn/render.hpp"
#include "bpdmn/simulator.hpp"
#include "bpdmn/validator.hpp"

namespace bpdmn {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bare model name such as `fixtures/travel` resolves to `fixtures/travel.bpdmn.json`.
fs::path resolve(const std::string& path) {
  fs::path p(path);
  if (fs::is_regular_file(p)) return p;
  fs::path with_ext(path + std::string(file_extension));
  if (fs::is_regular_file(with_ext)) return with_ext;
  throw IoError("cannot open " + path);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw IoError("cannot write " + path);
}

json value_json(const Value& v) {
  switch (v.type()) {
    case Value::Type::string: return v.as_string();
    case Value::Type::number: return v.as_number();
    case Value::Type::boolean: return v.as_boolean();
    default: return nullptr;
  }
}

json diagnostic_json(const Diagnostic& d) {
  return {{"type", "diagnostic"},
          {"rule", d.rule},
          {"severity", std::string(to_string(d.severity))},
          {"element", d.element},
          {"message", d.message}};
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json_mode = false;
  bool lenient = false;
  std::string path;

  void line(const json& record) const { out << record.dump() << "\n"; }

  Document load() const {
    fs::path p = resolve(path);
    Document doc = parse_document(read_file(p), ParseOptions{lenient});
    for (const auto& w : doc.warnings) err << p.string() << ": warning: " << w << "\n";
    return doc;
  }

  // Prints errors and returns false when the model is not valid.
  bool require_valid(const Diagram& d) const {
    auto diags = validate(d);
    if (!has_errors(diags)) return true;
    for (const auto& diag : diags)
      if (diag.severity == Severity::error) {
        if (json_mode)
          line(diagnostic_json(diag));
        else
          err << format_diagnostic(diag) << "\n";
      }
    return false;
  }
};

int cmd_validate(const Context& c, bool strict) {
  Document doc = c.load();
  auto diags = validate(doc.diagram);
  for (const auto& d : diags) {
    if (c.json_mode)
      c.line(diagnostic_json(d));
    else
      c.out << format_diagnostic(d) << "\n";
  }
  bool failed = has_errors(diags) || (strict && !diags.empty());
  if (c.json_mode) c.line({{"type", "summary"}, {"diagnostics", diags.size()}, {"ok", !failed}});
  return failed ? exit_model_error : exit_ok;
}

int cmd_translate(const Context& c, const std::string& target, const std::string& output) {
  Document doc = c.load();
  if (!c.require_valid(doc.diagram)) return exit_model_error;
  Translation t = target == "bpel" ? to_bpel(doc.diagram) : to_xpdl(doc.diagram);
  for (const auto& w : t.warnings) {
    if (c.json_mode)
      c.line({{"type", "warning"}, {"message", w}});
    else
      c.err << "warning: " << w << "\n";
  }
  write_output(output, t.text, c.out);
  return exit_ok;
}

int cmd_simulate(const Context& c, const RunOptions& opts, const std::string& inputs) {
  Document doc = c.load();
  if (!c.require_valid(doc.diagram)) return exit_model_error;
  SimulationSetup setup = doc.simulation;
  if (!inputs.empty()) {
    // Sidecar sections replace the embedded ones they define.
    SimulationSetup side = parse_simulation(read_file(resolve(inputs)), doc.diagram, ParseOptions{c.lenient});
    for (auto& [k, v] : side.behaviors) setup.behaviors[k] = std::move(v);
    if (!side.start_inputs.empty()) setup.start_inputs = std::move(side.start_inputs);
    for (auto& [k, v] : side.initial_records) setup.initial_records[k] = std::move(v);
  }
  RunResult r = run(doc.diagram, setup, opts);
  for (const auto& e : r.trace) {
    if (c.json_mode) {
      json rec{{"type", "event"}, {"step", e.step}, {"kind", std::string(to_string(e.kind))}, {"subject", e.subject}};
      if (!e.detail.empty()) rec["detail"] = e.detail;
      if (e.kind == TraceEvent::Kind::object_bound) rec["value"] = value_json(e.value);
      c.line(rec);
    } else {
      c.out << format_event(e) << "\n";
    }
  }
  if (c.json_mode)
    c.line({{"type", "status"}, {"status", std::string(to_string(r.status))}, {"steps", r.final_state.step_count}});
  else
    c.out << "status: " << to_string(r.status) << "\n";
  switch (r.status) {
    case Status::completed: return exit_ok;
    case Status::deadlocked: return exit_deadlock;
    default: return exit_step_limit;
  }
}

int cmd_patterns(const Context& c, bool matrix) {
  if (matrix) {
    if (c.json_mode) {
      for (const auto& p : capability_matrix())
        c.line({{"type", "pattern"},
                {"id", p.id},
                {"key", std::string(p.key)},
                {"name", std::string(p.name)},
                {"group", std::string(to_string(p.group))},
                {"bpmn", std::string(to_symbol(p.bpmn))},
                {"bpdmn", std::string(to_symbol(p.bpdmn))}});
    } else {
      c.out << format_matrix();
    }
    return exit_ok;
  }
  if (c.path.empty()) throw IoError("patterns needs a model path or --matrix");
  Document doc = c.load();
  if (!c.require_valid(doc.diagram)) return exit_model_error;
  PatternReport report = analyze(doc.diagram);
  for (const auto& [id, witnesses] : report.instances) {
    const PatternInfo& info = pattern_info(id);
    for (const auto& w : witnesses) {
      std::vector<std::string> elems(w.begin(), w.end());
      if (c.json_mode) {
        c.line({{"type", "instance"}, {"id", id}, {"key", std::string(info.key)}, {"elements", elems}});
      } else {
        std::string joined;
        for (const auto& e : elems) joined += (joined.empty() ? "" : ", ") + e;
        c.out << info.key << " " << info.name << ": {" << joined << "}\n";
      }
    }
  }
  if (!c.json_mode) c.out << report.total() << " instance(s)\n";
  return exit_ok;
}

int cmd_render(const Context& c, const std::string& output, bool hide_data) {
  Document doc = c.load();
  write_output(output, to_dot(doc.diagram, RenderOptions{hide_data}), c.out);
  return exit_ok;
}

// Rewrites a model in canonical form. Simulation sections are kept.
int cmd_format(const Context& c, bool in_place) {
  fs::path path = resolve(c.path);
  Document doc = c.load();
  std::string text = serialize_document(doc.diagram, doc.simulation);
  write_output(in_place ? path.string() : std::string(), text, c.out);
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"BPDMN model toolkit: validate, translate, simulate, analyze and render process diagrams", "bpdmn"};
  app.require_subcommand(1);
  Context c{out, err, false, false, {}};
  app.add_flag("--json", c.json_mode, "Line-delimited JSON records instead of text");
  app.add_flag("--lenient", c.lenient, "Treat unknown keys as warnings");

  bool strict = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check well-formedness rules V1-V9");
  validate_cmd->add_option("path", c.path, "Model file")->required();
  validate_cmd->add_flag("--strict", strict, "Fail on warnings too");

  std::string target, output;
  auto* translate_cmd = app.add_subcommand("translate", "Emit BPEL or XPDL");
  translate_cmd->add_option("path", c.path, "Model file")->required();
  translate_cmd->add_option("--to", target, "Target language")->required()->check(CLI::IsMember({"bpel", "xpdl"}));
  translate_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  RunOptions run_opts;
  std::string policy = "smallest-id", inputs;
  auto* simulate_cmd = app.add_subcommand("simulate", "Execute the token game");
  simulate_cmd->add_option("path", c.path, "Model file")->required();
  simulate_cmd->add_option("--max-steps", run_opts.max_steps, "Step limit")->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--policy", policy, "Scheduling policy")->check(CLI::IsMember({"smallest-id", "random"}));
  simulate_cmd->add_option("--seed", run_opts.seed, "Seed for the random policy");
  simulate_cmd->add_option("--inputs", inputs, "Sidecar with behaviors, start_inputs, initial_records");

  bool matrix = false;
  auto* patterns_cmd = app.add_subcommand("patterns", "Capability matrix or detected pattern instances");
  patterns_cmd->add_option("path", c.path, "Model file");
  patterns_cmd->add_flag("--matrix", matrix, "Print the capability table");

  bool hide_data = false;
  std::string render_out;
  auto* render_cmd = app.add_subcommand("render", "Emit a Graphviz dot graph");
  render_cmd->add_option("path", c.path, "Model file")->required();
  render_cmd->add_option("-o,--output", render_out, "Output file (default stdout)");
  render_cmd->add_flag("--hide-data", hide_data, "Omit data objects");

  bool in_place = false;
  auto* format_cmd = app.add_subcommand("format", "Print a model in canonical form");
  format_cmd->add_option("path", c.path, "Model file")->required();
  format_cmd->add_flag("-w,--write", in_place, "Rewrite the file instead of printing");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_io_error;
  }
  run_opts.policy = policy == "random" ? Policy::random : Policy::smallest_id;

  try {
    if (validate_cmd->parsed()) return cmd_validate(c, strict);
    if (translate_cmd->parsed()) return cmd_translate(c, target, output);
    if (simulate_cmd->parsed()) return cmd_simulate(c, run_opts, inputs);
    if (patterns_cmd->parsed()) return cmd_patterns(c, matrix);
    if (format_cmd->parsed()) return cmd_format(c, in_place);
    return cmd_render(c, render_out, hide_data);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_io_error;
  } catch (const FormatError& e) {
    err << c.path << ":" << e.what() << "\n";
    return exit_io_error;
  } catch (const std::exception& e) {
    // Precondition, model and simulation failures.
    err << "error: " << e.what() << "\n";
    return exit_model_error;
  }
}

}  // namespace bpdmn
