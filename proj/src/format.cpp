#include "bpdmn/format.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <set>

#include "json.hpp"

namespace bpdmn {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

FormatError::FormatError(Kind kind, SourceSpan span, const std::string& message)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
      kind_(kind),
      span_(span),
      detail_(message) {}

namespace {

// Input iterator that records how far the JSON lexer has read.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, const char** high) : p_(p), high_(high) {}
  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    if (high_ && p_ > *high_) *high_ = p_;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator tmp = *this;
    ++*this;
    return tmp;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p_ == b.p_; }
  friend bool operator!=(const CountingIterator& a, const CountingIterator& b) { return a.p_ != b.p_; }

 private:
  const char* p_ = nullptr;
  const char** high_ = nullptr;
};

std::string escape_pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

class LineIndex {
 public:
  explicit LineIndex(std::string_view text) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') starts_.push_back(i + 1);
  }
  SourceSpan at(std::size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(std::distance(starts_.begin(), it));
    std::size_t col = offset - starts_[line - 1] + 1;
    return {static_cast<int>(line), static_cast<int>(col)};
  }

 private:
  std::vector<std::size_t> starts_;
};

// SAX handler building a DOM while remembering where each value (by JSON pointer) came from.
class PositionedBuilder {
 public:
  static constexpr std::size_t max_depth = 128;

  PositionedBuilder(const char* begin, const char** high) : begin_(begin), high_(high) {}

  bool null() { return place(json(nullptr)) != nullptr; }
  bool boolean(bool b) { return place(json(b)) != nullptr; }
  bool number_integer(json::number_integer_t v) { return place(json(v)) != nullptr; }
  bool number_unsigned(json::number_unsigned_t v) { return place(json(v)) != nullptr; }
  bool number_float(json::number_float_t v, const json::string_t&) { return place(json(v)) != nullptr; }
  bool string(json::string_t& s) { return place(json(s)) != nullptr; }
  bool binary(json::binary_t&) { return fail("binary values are not supported"); }

  bool start_object(std::size_t) {
    if (stack_.size() >= max_depth) return fail("document nested too deeply");
    json* v = place(json::object(), true);
    if (!v) return false;
    stack_.push_back(v);
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    paths_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    if (stack_.size() >= max_depth) return fail("document nested too deeply");
    json* v = place(json::array(), true);
    if (!v) return false;
    stack_.push_back(v);
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    paths_.pop_back();
    return true;
  }
  bool key(json::string_t& k) {
    key_ = k;
    key_offset_ = token_start_for_string();
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    error_offset_ = position == 0 ? 0 : position - 1;
    error_ = ex.what();
    // Strip the library's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
    if (auto colon = error_.find(": "); colon != std::string::npos && error_.rfind("[json", 0) == 0)
      error_ = error_.substr(colon + 2);
    return false;
  }

  json take() { return std::move(root_); }
  const std::map<std::string, std::size_t>& offsets() const { return offsets_; }
  const std::string& error() const { return error_; }
  std::size_t error_offset() const { return error_offset_; }

 private:
  std::size_t head() const { return static_cast<std::size_t>(*high_ - begin_); }

  // The lexer has consumed the closing quote; walk back to the opening one.
  std::size_t token_start_for_string() const {
    std::size_t h = head();
    if (h == 0) return 0;
    std::size_t i = h - 1;  // closing quote
    while (i > 0) {
      --i;
      if (begin_[i] == '"') {
        std::size_t backslashes = 0;
        for (std::size_t j = i; j > 0 && begin_[j - 1] == '\\'; --j) ++backslashes;
        if (backslashes % 2 == 0) return i;
      }
    }
    return 0;
  }

  bool fail(std::string message) {
    error_ = std::move(message);
    error_offset_ = head() == 0 ? 0 : head() - 1;
    return false;
  }

  json* place(json value, bool container = false) {
    std::size_t offset = head() == 0 ? 0 : head() - 1;
    if (value.is_string()) offset = token_start_for_string();
    json* slot = nullptr;
    std::string ptr;
    if (stack_.empty()) {
      root_ = std::move(value);
      slot = &root_;
    } else if (stack_.back()->is_array()) {
      json& arr = *stack_.back();
      ptr = paths_.back() + "/" + std::to_string(arr.size());
      arr.push_back(std::move(value));
      slot = &arr.back();
    } else {
      json& obj = *stack_.back();
      if (obj.contains(key_)) {
        error_ = "duplicate key '" + key_ + "'";
        error_offset_ = key_offset_;
        return nullptr;
      }
      ptr = paths_.back() + "/" + escape_pointer_token(key_);
      offset = key_offset_;
      slot = &(obj[key_] = std::move(value));
    }
    offsets_[ptr] = offset;
    if (container) paths_.push_back(ptr);
    return slot;
  }

  const char* begin_;
  const char** high_;
  json root_;
  std::vector<json*> stack_;
  std::vector<std::string> paths_;
  std::string key_;
  std::size_t key_offset_ = 0;
  std::map<std::string, std::size_t> offsets_;
  std::string error_;
  std::size_t error_offset_ = 0;
};

struct ParsedJson {
  json root;
  std::map<std::string, std::size_t> offsets;
};

ParsedJson parse_json(std::string_view text, const LineIndex& lines) {
  const char* high = text.data();
  PositionedBuilder builder(text.data(), &high);
  CountingIterator first(text.data(), &high);
  CountingIterator last(text.data() + text.size(), nullptr);
  bool ok = false;
  try {
    ok = json::sax_parse(first, last, &builder, json::input_format_t::json, true, false);
  } catch (const json::exception& e) {
    throw FormatError(FormatError::Kind::malformed, lines.at(builder.error_offset()), e.what());
  }
  if (!ok) {
    std::string msg = builder.error().empty() ? "malformed document" : builder.error();
    throw FormatError(FormatError::Kind::malformed, lines.at(builder.error_offset()), msg);
  }
  return {builder.take(), builder.offsets()};
}

Value value_from_json(const json& j) {
  if (j.is_string()) return Value::string(j.get<std::string>());
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  return Value::number(j.get<double>());
}

ordered_json value_to_json(const Value& v) {
  switch (v.type()) {
    case Value::Type::null: return nullptr;
    case Value::Type::string: return v.as_string();
    case Value::Type::boolean: return v.as_boolean();
    case Value::Type::number: {
      double d = v.as_number();
      if (std::trunc(d) == d && std::fabs(d) < 9.0e15) return static_cast<std::int64_t>(d);
      return d;
    }
  }
  return nullptr;
}

// Schema walker. Every lookup carries the JSON pointer of the value so errors get spans.
class Reader {
 public:
  Reader(const ParsedJson& doc, const LineIndex& lines, const ParseOptions& opts, std::vector<std::string>& warnings)
      : doc_(doc), lines_(lines), opts_(opts), warnings_(warnings) {}

  SourceSpan span(const std::string& ptr) const {
    std::string p = ptr;
    while (true) {
      auto it = doc_.offsets.find(p);
      if (it != doc_.offsets.end()) return lines_.at(it->second);
      if (p.empty()) return {};
      p = p.substr(0, p.rfind('/'));
    }
  }

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg,
                         FormatError::Kind kind = FormatError::Kind::schema) const {
    throw FormatError(kind, span(ptr), msg);
  }

  const json& expect_object(const json& j, const std::string& ptr, std::string_view what) const {
    if (!j.is_object()) fail(ptr, std::string(what) + " must be an object");
    return j;
  }

  void check_keys(const json& obj, const std::string& ptr, std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) != allowed.end()) continue;
      std::string msg = "unknown key '" + it.key() + "'";
      std::string at = ptr + "/" + escape_pointer_token(it.key());
      if (!opts_.lenient) fail(at, msg);
      SourceSpan s = span(at);
      warnings_.push_back(std::to_string(s.line) + ":" + std::to_string(s.column) + ": " + msg);
    }
  }

  const json& member(const json& obj, const std::string& ptr, std::string_view key) const {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) fail(ptr, "missing required key '" + std::string(key) + "'");
    return *it;
  }

  std::string text(const json& obj, const std::string& ptr, std::string_view key) const {
    const json& v = member(obj, ptr, key);
    if (!v.is_string()) fail(child(ptr, key), "'" + std::string(key) + "' must be a string");
    return v.get<std::string>();
  }

  std::optional<std::string> opt_text(const json& obj, const std::string& ptr, std::string_view key) const {
    if (!obj.contains(std::string(key))) return std::nullopt;
    return text(obj, ptr, key);
  }

  bool flag(const json& obj, const std::string& ptr, std::string_view key) const {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) return false;
    if (!it->is_boolean()) fail(child(ptr, key), "'" + std::string(key) + "' must be a boolean");
    return it->get<bool>();
  }

  const json& array(const json& obj, const std::string& ptr, std::string_view key, bool required = true) const {
    static const json empty = json::array();
    auto it = obj.find(std::string(key));
    if (it == obj.end()) {
      if (required) fail(ptr, "missing required key '" + std::string(key) + "'");
      return empty;
    }
    if (!it->is_array()) fail(child(ptr, key), "'" + std::string(key) + "' must be an array");
    return *it;
  }

  Expression expression(const json& obj, const std::string& ptr, std::string_view key) const {
    std::string src = text(obj, ptr, key);
    try {
      return parse_expr(src);
    } catch (const ExprSyntaxError& e) {
      fail(child(ptr, key), "in expression '" + std::string(key) + "': " + e.what());
    }
  }

  static std::string child(const std::string& ptr, std::string_view key) {
    return ptr + "/" + escape_pointer_token(key);
  }
  static std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

 private:
  const ParsedJson& doc_;
  const LineIndex& lines_;
  const ParseOptions& opts_;
  std::vector<std::string>& warnings_;
};

class DiagramReader {
 public:
  DiagramReader(Reader& r) : r_(r) {}

  DiagramParts read(const json& root) {
    DiagramParts parts;
    if (auto id = r_.opt_text(root, "", "id")) parts.id = *id;
    const json& pools = r_.array(root, "", "pools");
    for (std::size_t i = 0; i < pools.size(); ++i) parts.pools.push_back(pool(pools[i], Reader::child("/pools", i)));
    const json& stores = r_.array(root, "", "stores");
    for (std::size_t i = 0; i < stores.size(); ++i)
      parts.stores.push_back(store(stores[i], Reader::child("/stores", i)));
    const json& objects = r_.array(root, "", "objects");
    for (std::size_t i = 0; i < objects.size(); ++i)
      parts.objects.push_back(object(objects[i], Reader::child("/objects", i)));
    const json& mappings = r_.array(root, "", "mappings");
    for (std::size_t i = 0; i < mappings.size(); ++i)
      parts.mappings.push_back(mapping(mappings[i], Reader::child("/mappings", i)));
    const json& mflows = r_.array(root, "", "message_flows");
    for (std::size_t i = 0; i < mflows.size(); ++i)
      parts.message_flows.push_back(message_flow(mflows[i], Reader::child("/message_flows", i)));
    return parts;
  }

  /// Where each element id was declared, for mapping model errors back to the file.
  const std::map<std::string, std::string>& id_pointers() const { return ids_; }

 private:
  std::string id(const json& obj, const std::string& ptr) {
    std::string v = r_.text(obj, ptr, "id");
    ids_.emplace(v, ptr);
    return v;
  }

  Pool pool(const json& j, const std::string& ptr) {
    r_.expect_object(j, ptr, "pool");
    r_.check_keys(j, ptr, {"id", "name", "external", "nodes", "sequence_flows", "data_flows"});
    Pool p;
    p.id = id(j, ptr);
    p.name = r_.text(j, ptr, "name");
    p.external = r_.flag(j, ptr, "external");
    const json& nodes = r_.array(j, ptr, "nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) p.nodes.push_back(node(nodes[i], Reader::child(ptr + "/nodes", i)));
    const json& flows = r_.array(j, ptr, "sequence_flows");
    for (std::size_t i = 0; i < flows.size(); ++i)
      p.sequence_flows.push_back(sequence_flow(flows[i], Reader::child(ptr + "/sequence_flows", i)));
    const json& dflows = r_.array(j, ptr, "data_flows");
    for (std::size_t i = 0; i < dflows.size(); ++i)
      p.data_flows.push_back(data_flow(dflows[i], Reader::child(ptr + "/data_flows", i)));
    return p;
  }

  Node node(const json& j, const std::string& ptr) {
    r_.expect_object(j, ptr, "node");
    r_.check_keys(j, ptr, {"id", "name", "kind", "multi_instance", "instances", "condition", "children"});
    Node n;
    n.id = id(j, ptr);
    n.name = r_.text(j, ptr, "name");
    std::string kind = r_.text(j, ptr, "kind");
    auto k = parse_node_kind(kind);
    if (!k) r_.fail(Reader::child(ptr, "kind"), "unknown node kind '" + kind + "'");
    n.kind = *k;
    n.multi_instance = r_.flag(j, ptr, "multi_instance");
    if (j.contains("instances")) {
      const json& c = j.at("instances");
      if (!c.is_number_integer() || c.get<std::int64_t>() < 1 || c.get<std::int64_t>() > 1000)
        r_.fail(Reader::child(ptr, "instances"), "'instances' must be an integer between 1 and 1000");
      n.instances = static_cast<int>(c.get<std::int64_t>());
    }
    if (j.contains("condition")) n.condition = r_.expression(j, ptr, "condition");
    const json& children = r_.array(j, ptr, "children", false);
    for (std::size_t i = 0; i < children.size(); ++i)
      n.children.push_back(node(children[i], Reader::child(ptr + "/children", i)));
    return n;
  }

  std::vector<ObjectAttachment> attachments(const json& j, const std::string& ptr) {
    std::vector<ObjectAttachment> out;
    const json& arr = r_.array(j, ptr, "attachments", false);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = Reader::child(ptr + "/attachments", i);
      r_.expect_object(arr[i], p, "attachment");
      r_.check_keys(arr[i], p, {"object", "direction", "optional"});
      ObjectAttachment a;
      a.object = r_.text(arr[i], p, "object");
      std::string dir = r_.text(arr[i], p, "direction");
      auto d = parse_direction(dir);
      if (!d) r_.fail(Reader::child(p, "direction"), "direction must be 'input' or 'output'");
      a.direction = *d;
      a.optional = r_.flag(arr[i], p, "optional");
      out.push_back(std::move(a));
    }
    return out;
  }

  SequenceFlow sequence_flow(const json& j, const std::string& ptr) {
    r_.expect_object(j, ptr, "sequence flow");
    r_.check_keys(j, ptr, {"id", "source", "target", "guard", "default", "attachments"});
    SequenceFlow f;
    f.id = id(j, ptr);
    f.source = r_.text(j, ptr, "source");
    f.target = r_.text(j, ptr, "target");
    if (j.contains("guard")) f.guard = r_.expression(j, ptr, "guard");
    f.is_default = r_.flag(j, ptr, "default");
    f.attachments = attachments(j, ptr);
    return f;
  }

  MessageFlow message_flow(const json& j, const std::string& ptr) {
    r_.expect_object(j, ptr, "message flow");
    r_.check_keys(j, ptr, {"id", "source", "target", "attachments"});
    MessageFlow f;
    f.id = id(j, ptr);
    f.source = r_.text(j, ptr, "source");
    f.target = r_.text(j, ptr, "target");
    f.attachments = attachments(j, ptr);
    return f;
  }

  DataFlow data_flow(const json& j, const std::string& ptr) {
    r_.expect_object(j, ptr, "data flow");
    r_.check_keys(j, ptr, {"id", "source", "target", "object", "optional"});
    DataFlow f;
    f.id = id(j, ptr);
    f.source = r_.text(j, ptr, "source");
    f.target = r_.text(j, ptr, "target");
    f.object = r_.text(j, ptr, "object");
    f.optional = r_.flag(j, ptr, "optional");
    return f;
  }

  std::vector<Variable> variables(const json& j, const std::string& ptr, std::string_view key) {
    std::vector<Variable> out;
    const json& arr = r_.array(j, ptr, key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = Reader::child(ptr + "/" + std::string(key), i);
      r_.expect_object(arr[i], p, "variable");
      r_.check_keys(arr[i], p, {"name", "type", "optional"});
      Variable v;
      v.name = r_.text(arr[i], p, "name");
      std::string type = r_.text(arr[i], p, "type");
      auto t = parse_var_type(type);
      if (!t) r_.fail(Reader::child(p, "type"), "unknown variable type '" + type + "'");
      v.type = *t;
      v.optional = r_.flag(arr[i], p, "optional");
      out.push_back(std::move(v));
    }
    return out;
  }

  // Either a plain keyword or {"custom": "label"}.
  template <typename Kind>
  std::pair<Kind, std::string> labelled(const json& j, const std::string& ptr, std::string_view key,
                                        std::initializer_list<std::pair<std::string_view, Kind>> names, Kind custom) {
    const json& v = r_.member(j, ptr, key);
    std::string p = Reader::child(ptr, key);
    if (v.is_string()) {
      for (const auto& [name, k] : names)
        if (v.get<std::string>() == name) return {k, {}};
      r_.fail(p, "unknown " + std::string(key) + " '" + v.get<std::string>() + "'");
    }
    if (v.is_object() && v.size() == 1 && v.contains("custom") && v.at("custom").is_string())
      return {custom, v.at("custom").get<std::string>()};
    r_.fail(p, "'" + std::string(key) + "' must be a keyword or {\"custom\": text}");
  }

  DataObject object(const json& j, const std::string& ptr) {
    r_.expect_object(j, ptr, "object");
    r_.check_keys(j, ptr, {"id", "name", "stereotype", "physicality", "message_type", "url", "state", "origin_store",
                           "variables"});
    DataObject o;
    o.id = id(j, ptr);
    o.name = r_.text(j, ptr, "name");
    using SK = Stereotype::Kind;
    auto [sk, sl] = labelled<SK>(j, ptr, "stereotype",
                                 {{"generic", SK::generic}, {"document", SK::document}, {"product", SK::product},
                                  {"message", SK::message}},
                                 SK::custom);
    o.stereotype = {sk, sl};
    std::string phys = r_.text(j, ptr, "physicality");
    auto ph = parse_physicality(phys);
    if (!ph) r_.fail(Reader::child(ptr, "physicality"), "physicality must be 'digital' or 'physical'");
    o.physicality = *ph;
    o.message_type = r_.opt_text(j, ptr, "message_type");
    o.url = r_.opt_text(j, ptr, "url");
    o.state = r_.opt_text(j, ptr, "state");
    o.origin_store = r_.opt_text(j, ptr, "origin_store");
    o.variables = variables(j, ptr, "variables");
    return o;
  }

  DataStore store(const json& j, const std::string& ptr) {
    r_.expect_object(j, ptr, "store");
    r_.check_keys(j, ptr, {"id", "name", "icon", "scope", "collapsed", "entities", "relationships", "generalizations"});
    DataStore s;
    s.id = id(j, ptr);
    s.name = r_.text(j, ptr, "name");
    using IK = StoreIcon::Kind;
    auto [ik, il] = labelled<IK>(j, ptr, "icon",
                                 {{"database", IK::database}, {"warehouse", IK::warehouse}, {"folder", IK::folder}},
                                 IK::custom);
    s.icon = {ik, il};
    const json& scope = r_.member(j, ptr, "scope");
    if (scope.is_string() && scope.get<std::string>() == "diagram") {
      s.scope = {};
    } else if (scope.is_object() && scope.size() == 1 && scope.contains("sub_process") &&
               scope.at("sub_process").is_string()) {
      s.scope.sub_process = scope.at("sub_process").get<std::string>();
    } else {
      r_.fail(Reader::child(ptr, "scope"), "scope must be \"diagram\" or {\"sub_process\": id}");
    }
    s.collapsed = r_.flag(j, ptr, "collapsed");
    const json& entities = r_.array(j, ptr, "entities");
    for (std::size_t i = 0; i < entities.size(); ++i) {
      std::string p = Reader::child(ptr + "/entities", i);
      r_.expect_object(entities[i], p, "entity");
      r_.check_keys(entities[i], p, {"name", "fields"});
      s.entities.push_back({r_.text(entities[i], p, "name"), variables(entities[i], p, "fields")});
    }
    const json& rels = r_.array(j, ptr, "relationships");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      std::string p = Reader::child(ptr + "/relationships", i);
      r_.expect_object(rels[i], p, "relationship");
      r_.check_keys(rels[i], p, {"name", "left", "right"});
      s.relationships.push_back({r_.text(rels[i], p, "name"), r_.text(rels[i], p, "left"), r_.text(rels[i], p, "right")});
    }
    const json& gens = r_.array(j, ptr, "generalizations");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::string p = Reader::child(ptr + "/generalizations", i);
      r_.expect_object(gens[i], p, "generalization");
      r_.check_keys(gens[i], p, {"parent", "child"});
      s.generalizations.push_back({r_.text(gens[i], p, "parent"), r_.text(gens[i], p, "child")});
    }
    return s;
  }

  DataMapping mapping(const json& j, const std::string& ptr) {
    r_.expect_object(j, ptr, "mapping");
    r_.check_keys(j, ptr, {"id", "source", "target", "rules"});
    DataMapping m;
    m.id = id(j, ptr);
    m.source_object = r_.text(j, ptr, "source");
    m.target_object = r_.text(j, ptr, "target");
    const json& rules = r_.array(j, ptr, "rules");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      std::string p = Reader::child(ptr + "/rules", i);
      r_.expect_object(rules[i], p, "copy rule");
      r_.check_keys(rules[i], p, {"from", "to"});
      CopyRule rule{r_.expression(rules[i], p, "from"), r_.text(rules[i], p, "to")};
      if (rule.to.empty()) r_.fail(Reader::child(p, "to"), "copy rule target must not be empty");
      m.rules.push_back(std::move(rule));
    }
    return m;
  }

  Reader& r_;
  std::map<std::string, std::string> ids_;
};

Value scalar(Reader& r, const json& v, const std::string& ptr) {
  if (!(v.is_string() || v.is_boolean() || v.is_number()))
    r.fail(ptr, "expected a string, number or boolean value");
  if (v.is_number() && !std::isfinite(v.get<double>())) r.fail(ptr, "number out of range");
  return value_from_json(v);
}

SimulationSetup read_simulation(Reader& r, const json& root, const Diagram& d) {
  SimulationSetup setup;
  using Kind = FormatError::Kind;
  if (root.contains("behaviors")) {
    const json& bs = r.expect_object(root.at("behaviors"), "/behaviors", "behaviors");
    for (auto it = bs.begin(); it != bs.end(); ++it) {
      std::string ptr = Reader::child("/behaviors", it.key());
      const Node* n = d.find_node(it.key());
      if (!n) r.fail(ptr, "behavior for unknown node '" + it.key() + "'", Kind::dangling_reference);
      const json& b = r.expect_object(it.value(), ptr, "behavior");
      r.check_keys(b, ptr, {"effects", "inserts", "reads"});
      TaskBehavior tb;
      const json& effects = r.array(b, ptr, "effects", false);
      for (std::size_t i = 0; i < effects.size(); ++i) {
        std::string p = Reader::child(ptr + "/effects", i);
        r.expect_object(effects[i], p, "effect");
        r.check_keys(effects[i], p, {"target", "value"});
        std::string target = r.text(effects[i], p, "target");
        if (!is_valid_path(target) || target.find('.') == std::string::npos)
          r.fail(Reader::child(p, "target"), "effect target must be an object-qualified path");
        tb.effects.push_back({target, r.expression(effects[i], p, "value")});
      }
      const json& inserts = r.array(b, ptr, "inserts", false);
      for (std::size_t i = 0; i < inserts.size(); ++i) {
        std::string p = Reader::child(ptr + "/inserts", i);
        r.expect_object(inserts[i], p, "insert");
        r.check_keys(inserts[i], p, {"store", "entity", "fields"});
        StoreInsert ins;
        ins.store = r.text(inserts[i], p, "store");
        if (!d.find_store(ins.store)) r.fail(Reader::child(p, "store"), "unknown store '" + ins.store + "'", Kind::dangling_reference);
        ins.entity = r.text(inserts[i], p, "entity");
        const json& fields = r.expect_object(r.member(inserts[i], p, "fields"), Reader::child(p, "fields"), "fields");
        for (auto f = fields.begin(); f != fields.end(); ++f) {
          std::string fp = Reader::child(p + "/fields", f.key());
          if (!f.value().is_string()) r.fail(fp, "field values must be expression strings");
          try {
            ins.fields.emplace_back(f.key(), parse_expr(f.value().get<std::string>()));
          } catch (const ExprSyntaxError& e) {
            r.fail(fp, e.what());
          }
        }
        tb.inserts.push_back(std::move(ins));
      }
      const json& reads = r.array(b, ptr, "reads", false);
      for (std::size_t i = 0; i < reads.size(); ++i) {
        std::string p = Reader::child(ptr + "/reads", i);
        r.expect_object(reads[i], p, "read");
        r.check_keys(reads[i], p, {"store", "entity", "filter", "object"});
        StoreRead rd;
        rd.store = r.text(reads[i], p, "store");
        if (!d.find_store(rd.store)) r.fail(Reader::child(p, "store"), "unknown store '" + rd.store + "'", Kind::dangling_reference);
        rd.entity = r.text(reads[i], p, "entity");
        if (reads[i].contains("filter")) rd.filter = r.expression(reads[i], p, "filter");
        rd.object = r.text(reads[i], p, "object");
        if (!d.find_object(rd.object)) r.fail(Reader::child(p, "object"), "unknown object '" + rd.object + "'", Kind::dangling_reference);
        tb.reads.push_back(std::move(rd));
      }
      setup.behaviors.emplace(it.key(), std::move(tb));
    }
  }
  if (root.contains("start_inputs")) {
    const json& si = r.expect_object(root.at("start_inputs"), "/start_inputs", "start_inputs");
    for (auto it = si.begin(); it != si.end(); ++it) {
      std::string ptr = Reader::child("/start_inputs", it.key());
      if (!d.find_object(it.key())) r.fail(ptr, "start input for unknown object '" + it.key() + "'", Kind::dangling_reference);
      const json& vars = r.expect_object(it.value(), ptr, "start input");
      auto& slot = setup.start_inputs[it.key()];
      for (auto v = vars.begin(); v != vars.end(); ++v) slot[v.key()] = scalar(r, v.value(), Reader::child(ptr, v.key()));
    }
  }
  if (root.contains("initial_records")) {
    const json& ir = r.expect_object(root.at("initial_records"), "/initial_records", "initial_records");
    for (auto it = ir.begin(); it != ir.end(); ++it) {
      std::string ptr = Reader::child("/initial_records", it.key());
      if (!d.find_store(it.key())) r.fail(ptr, "records for unknown store '" + it.key() + "'", Kind::dangling_reference);
      if (!it.value().is_array()) r.fail(ptr, "initial records must be an array");
      auto& slot = setup.initial_records[it.key()];
      for (std::size_t i = 0; i < it.value().size(); ++i) {
        std::string p = Reader::child(ptr, i);
        const json& rec = r.expect_object(it.value()[i], p, "record");
        Record out;
        for (auto f = rec.begin(); f != rec.end(); ++f) out[f.key()] = scalar(r, f.value(), Reader::child(p, f.key()));
        slot.push_back(std::move(out));
      }
    }
  }
  return setup;
}

Diagram build_diagram(Reader& r, const json& root) {
  DiagramReader dr(r);
  DiagramParts parts = dr.read(root);
  try {
    return Diagram(std::move(parts));
  } catch (const ModelError& e) {
    std::string ptr;
    if (auto it = dr.id_pointers().find(e.element()); it != dr.id_pointers().end()) ptr = it->second;
    auto kind = e.kind() == ModelError::Kind::dangling_reference ? FormatError::Kind::dangling_reference
                                                                  : FormatError::Kind::schema;
    r.fail(ptr, e.what(), kind);
  }
}

void check_header(Reader& r, const json& root) {
  if (!root.is_object()) r.fail("", "document must be a JSON object");
  const json& version = r.member(root, "", "bpdmn");
  if (!version.is_string() || version.get<std::string>() != format_version)
    r.fail("/bpdmn", "unsupported format version (expected \"1.0\")");
}

// ---------------------------------------------------------------------------
// Serialization

template <typename T>
std::vector<const T*> by_id(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& i : items) out.push_back(&i);
  std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->id < b->id; });
  return out;
}

ordered_json variables_json(const std::vector<Variable>& vars) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : vars) {
    ordered_json j;
    j["name"] = v.name;
    j["type"] = to_string(v.type);
    if (v.optional) j["optional"] = true;
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json attachments_json(const std::vector<ObjectAttachment>& atts) {
  ordered_json arr = ordered_json::array();
  for (const auto& a : atts) {
    ordered_json j;
    j["object"] = a.object;
    j["direction"] = to_string(a.direction);
    if (a.optional) j["optional"] = true;
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json node_json(const Node& n) {
  ordered_json j;
  j["id"] = n.id;
  j["name"] = n.name;
  j["kind"] = to_string(n.kind);
  if (n.multi_instance) {
    j["multi_instance"] = true;
    j["instances"] = n.instances;
  }
  if (n.condition) j["condition"] = print_expr(*n.condition);
  if (n.kind == NodeKind::sub_process) {
    ordered_json children = ordered_json::array();
    for (const Node* c : by_id(n.children)) children.push_back(node_json(*c));
    j["children"] = std::move(children);
  }
  return j;
}

ordered_json pool_json(const Pool& p) {
  ordered_json j;
  j["id"] = p.id;
  j["name"] = p.name;
  if (p.external) j["external"] = true;
  ordered_json nodes = ordered_json::array();
  for (const Node* n : by_id(p.nodes)) nodes.push_back(node_json(*n));
  j["nodes"] = std::move(nodes);
  ordered_json flows = ordered_json::array();
  for (const SequenceFlow* f : by_id(p.sequence_flows)) {
    ordered_json fj;
    fj["id"] = f->id;
    fj["source"] = f->source;
    fj["target"] = f->target;
    if (f->guard) fj["guard"] = print_expr(*f->guard);
    if (f->is_default) fj["default"] = true;
    if (!f->attachments.empty()) fj["attachments"] = attachments_json(f->attachments);
    flows.push_back(std::move(fj));
  }
  j["sequence_flows"] = std::move(flows);
  ordered_json dflows = ordered_json::array();
  for (const DataFlow* f : by_id(p.data_flows)) {
    ordered_json fj;
    fj["id"] = f->id;
    fj["source"] = f->source;
    fj["target"] = f->target;
    fj["object"] = f->object;
    if (f->optional) fj["optional"] = true;
    dflows.push_back(std::move(fj));
  }
  j["data_flows"] = std::move(dflows);
  return j;
}

ordered_json store_json(const DataStore& s) {
  ordered_json j;
  j["id"] = s.id;
  j["name"] = s.name;
  switch (s.icon.kind) {
    case StoreIcon::Kind::database: j["icon"] = "database"; break;
    case StoreIcon::Kind::warehouse: j["icon"] = "warehouse"; break;
    case StoreIcon::Kind::folder: j["icon"] = "folder"; break;
    case StoreIcon::Kind::custom: j["icon"] = {{"custom", s.icon.label}}; break;
  }
  if (s.scope.is_diagram()) j["scope"] = "diagram";
  else j["scope"] = {{"sub_process", *s.scope.sub_process}};
  if (s.collapsed) j["collapsed"] = true;
  ordered_json entities = ordered_json::array();
  for (const auto& e : s.entities) {
    ordered_json ej;
    ej["name"] = e.name;
    ej["fields"] = variables_json(e.fields);
    entities.push_back(std::move(ej));
  }
  j["entities"] = std::move(entities);
  ordered_json rels = ordered_json::array();
  for (const auto& r : s.relationships) {
    ordered_json rj;
    rj["name"] = r.name;
    rj["left"] = r.left;
    rj["right"] = r.right;
    rels.push_back(std::move(rj));
  }
  j["relationships"] = std::move(rels);
  ordered_json gens = ordered_json::array();
  for (const auto& g : s.generalizations) {
    ordered_json gj;
    gj["parent"] = g.parent;
    gj["child"] = g.child;
    gens.push_back(std::move(gj));
  }
  j["generalizations"] = std::move(gens);
  return j;
}

ordered_json object_json(const DataObject& o) {
  ordered_json j;
  j["id"] = o.id;
  j["name"] = o.name;
  switch (o.stereotype.kind) {
    case Stereotype::Kind::generic: j["stereotype"] = "generic"; break;
    case Stereotype::Kind::document: j["stereotype"] = "document"; break;
    case Stereotype::Kind::product: j["stereotype"] = "product"; break;
    case Stereotype::Kind::message: j["stereotype"] = "message"; break;
    case Stereotype::Kind::custom: j["stereotype"] = {{"custom", o.stereotype.label}}; break;
  }
  j["physicality"] = to_string(o.physicality);
  if (o.message_type) j["message_type"] = *o.message_type;
  if (o.url) j["url"] = *o.url;
  if (o.state) j["state"] = *o.state;
  if (o.origin_store) j["origin_store"] = *o.origin_store;
  j["variables"] = variables_json(o.variables);
  return j;
}

ordered_json mapping_json(const DataMapping& m) {
  ordered_json j;
  j["id"] = m.id;
  j["source"] = m.source_object;
  j["target"] = m.target_object;
  ordered_json rules = ordered_json::array();
  for (const auto& r : m.rules) {
    ordered_json rj;
    rj["from"] = print_expr(r.from);
    rj["to"] = r.to;
    rules.push_back(std::move(rj));
  }
  j["rules"] = std::move(rules);
  return j;
}

ordered_json message_flow_json(const MessageFlow& f) {
  ordered_json j;
  j["id"] = f.id;
  j["source"] = f.source;
  j["target"] = f.target;
  if (!f.attachments.empty()) j["attachments"] = attachments_json(f.attachments);
  return j;
}

ordered_json diagram_json(const Diagram& d) {
  ordered_json j;
  j["bpdmn"] = format_version;
  if (!d.id().empty()) j["id"] = d.id();
  ordered_json pools = ordered_json::array();
  for (const Pool* p : by_id(d.pools())) pools.push_back(pool_json(*p));
  j["pools"] = std::move(pools);
  ordered_json stores = ordered_json::array();
  for (const DataStore* s : by_id(d.stores())) stores.push_back(store_json(*s));
  j["stores"] = std::move(stores);
  ordered_json objects = ordered_json::array();
  for (const DataObject* o : by_id(d.objects())) objects.push_back(object_json(*o));
  j["objects"] = std::move(objects);
  ordered_json mappings = ordered_json::array();
  for (const DataMapping* m : by_id(d.mappings())) mappings.push_back(mapping_json(*m));
  j["mappings"] = std::move(mappings);
  ordered_json mflows = ordered_json::array();
  for (const MessageFlow* f : by_id(d.message_flows())) mflows.push_back(message_flow_json(*f));
  j["message_flows"] = std::move(mflows);
  return j;
}

ordered_json record_json(const Record& r) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : r) j[k] = value_to_json(v);
  return j;
}

void add_simulation(ordered_json& j, const SimulationSetup& s) {
  if (!s.behaviors.empty()) {
    ordered_json bs = ordered_json::object();
    for (const auto& [task, b] : s.behaviors) {
      ordered_json bj = ordered_json::object();
      if (!b.effects.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& e : b.effects) arr.push_back({{"target", e.target}, {"value", print_expr(e.value)}});
        bj["effects"] = std::move(arr);
      }
      if (!b.inserts.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& ins : b.inserts) {
          auto fields = ins.fields;
          std::stable_sort(fields.begin(), fields.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
          ordered_json fj = ordered_json::object();
          for (const auto& [name, expr] : fields) fj[name] = print_expr(expr);
          ordered_json ij;
          ij["store"] = ins.store;
          ij["entity"] = ins.entity;
          ij["fields"] = std::move(fj);
          arr.push_back(std::move(ij));
        }
        bj["inserts"] = std::move(arr);
      }
      if (!b.reads.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& rd : b.reads) {
          ordered_json rj;
          rj["store"] = rd.store;
          rj["entity"] = rd.entity;
          if (rd.filter) rj["filter"] = print_expr(*rd.filter);
          rj["object"] = rd.object;
          arr.push_back(std::move(rj));
        }
        bj["reads"] = std::move(arr);
      }
      bs[task] = std::move(bj);
    }
    j["behaviors"] = std::move(bs);
  }
  if (!s.start_inputs.empty()) {
    ordered_json si = ordered_json::object();
    for (const auto& [obj, vars] : s.start_inputs) si[obj] = record_json(vars);
    j["start_inputs"] = std::move(si);
  }
  if (!s.initial_records.empty()) {
    ordered_json ir = ordered_json::object();
    for (const auto& [store, recs] : s.initial_records) {
      ordered_json arr = ordered_json::array();
      for (const auto& r : recs) arr.push_back(record_json(r));
      ir[store] = std::move(arr);
    }
    j["initial_records"] = std::move(ir);
  }
}

std::string dump(const ordered_json& j) { return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n"; }

}  // namespace

Document parse_document(std::string_view text, const ParseOptions& options) {
  LineIndex lines(text);
  ParsedJson doc = parse_json(text, lines);
  Document out;
  Reader r(doc, lines, options, out.warnings);
  check_header(r, doc.root);
  r.check_keys(doc.root, "",
               {"bpdmn", "id", "pools", "stores", "objects", "mappings", "message_flows", "behaviors", "start_inputs",
                "initial_records"});
  out.diagram = build_diagram(r, doc.root);
  out.simulation = read_simulation(r, doc.root, out.diagram);
  return out;
}

Diagram parse_diagram(std::string_view text, const ParseOptions& options) {
  return parse_document(text, options).diagram;
}

SimulationSetup parse_simulation(std::string_view text, const Diagram& against, const ParseOptions& options) {
  LineIndex lines(text);
  ParsedJson doc = parse_json(text, lines);
  std::vector<std::string> warnings;
  Reader r(doc, lines, options, warnings);
  if (!doc.root.is_object()) r.fail("", "document must be a JSON object");
  r.check_keys(doc.root, "", {"behaviors", "start_inputs", "initial_records"});
  return read_simulation(r, doc.root, against);
}

std::string serialize_diagram(const Diagram& d) { return dump(diagram_json(d)); }

std::string serialize_document(const Diagram& d, const SimulationSetup& simulation) {
  ordered_json j = diagram_json(d);
  add_simulation(j, simulation);
  return dump(j);
}

}  // namespace bpdmn
