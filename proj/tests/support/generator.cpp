#include "generator.hpp"

#include <algorithm>

namespace testsupport {

using namespace bpdmn;

namespace {

class Builder {
 public:
  explicit Builder(std::uint64_t seed) : rng_(seed) {}

  DiagramParts build() {
    parts_.id = "g" + std::to_string(pick(0, 9999));
    int store_count = pick(0, 2);
    for (int i = 0; i < store_count; ++i) parts_.stores.push_back(make_store("st" + std::to_string(i)));
    int pools = pick(1, 3);
    for (int i = 0; i < pools; ++i) parts_.pools.push_back(make_pool("p" + std::to_string(i)));
    if (coin(0.5)) {
      Pool ext;
      ext.id = "ext";
      ext.name = text();
      ext.external = true;
      parts_.pools.push_back(ext);
    }
    add_mappings();
    add_messages();
    std::shuffle(parts_.pools.begin(), parts_.pools.end(), rng_);
    std::shuffle(parts_.objects.begin(), parts_.objects.end(), rng_);
    return parts_;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string ident(const std::string& prefix) { return prefix + std::to_string(counter_++); }

  // Display names exercise escaping: quotes, backslashes, control and non-ASCII characters.
  std::string text() {
    static const std::vector<std::string> pieces{"Check", " ", "Order", "\"q\"", "\\", "\t", "\n", "é", "数据",
                                                 "/", "{x}", "[1]", "a", "Z", "0", "\x01", "\u00a0"};
    std::string out;
    int n = pick(0, 5);
    for (int i = 0; i < n; ++i) out += pieces[pick(0, static_cast<int>(pieces.size()) - 1)];
    return out;
  }

  VarType scalar_type() { return static_cast<VarType>(pick(0, 2)); }

  std::vector<Variable> variables(int lo, int hi) {
    std::vector<Variable> out;
    int n = pick(lo, hi);
    for (int i = 0; i < n; ++i) {
      Variable v;
      v.name = "v" + std::to_string(i) + (coin(0.3) ? ".sub" : "");
      v.type = coin(0.1) ? VarType::record : scalar_type();
      v.optional = coin(0.2);
      out.push_back(v);
    }
    return out;
  }

  DataStore make_store(const std::string& id) {
    DataStore s;
    s.id = id;
    s.name = text();
    s.icon.kind = static_cast<StoreIcon::Kind>(pick(0, 3));
    if (s.icon.kind == StoreIcon::Kind::custom) s.icon.label = "custom" + std::to_string(pick(0, 9));
    int entities = pick(1, 3);
    for (int i = 0; i < entities; ++i) {
      Entity e;
      e.name = "E" + std::to_string(i);
      int fields = pick(1, 3);
      for (int f = 0; f < fields; ++f) e.fields.push_back({"f" + std::to_string(f), scalar_type(), coin(0.2)});
      s.entities.push_back(e);
    }
    for (int i = 1; i < entities; ++i) {
      if (coin(0.5)) s.relationships.push_back({"r" + std::to_string(i), "E0", "E" + std::to_string(i)});
      if (coin(0.4)) s.generalizations.push_back({"E" + std::to_string(pick(0, i - 1)), "E" + std::to_string(i)});
    }
    s.collapsed = coin(0.3);
    return s;
  }

  DataObject make_object(std::optional<std::string> origin = std::nullopt) {
    DataObject o;
    o.id = ident("o");
    o.name = text();
    o.stereotype.kind = static_cast<Stereotype::Kind>(pick(0, 4));
    if (o.stereotype.kind == Stereotype::Kind::custom) o.stereotype.label = "tag" + std::to_string(pick(0, 9));
    o.physicality = coin(0.2) ? Physicality::physical : Physicality::digital;
    if (origin) {
      const DataStore* s = nullptr;
      for (const auto& st : parts_.stores)
        if (st.id == *origin) s = &st;
      for (const auto& path : s->qualified_fields())
        if (coin(0.6)) o.variables.push_back({path, VarType::string, false});
      o.origin_store = origin;
    } else {
      o.variables = variables(0, 3);
    }
    if (coin(0.2)) o.message_type = "mt" + std::to_string(pick(0, 99));
    if (coin(0.2)) o.url = "http://example.org/" + std::to_string(pick(0, 99));
    if (coin(0.2)) o.state = coin(0.5) ? "draft" : text();
    parts_.objects.push_back(o);
    return o;
  }

  Node make_node(NodeKind kind) {
    Node n;
    n.id = ident("n");
    n.name = text();
    n.kind = kind;
    if (kind == NodeKind::task && coin(0.15)) {
      n.multi_instance = true;
      n.instances = pick(1, 4);
    }
    return n;
  }

  SequenceFlow flow(const std::string& from, const std::string& to) {
    SequenceFlow f;
    f.id = ident("f");
    f.source = from;
    f.target = to;
    return f;
  }

  // Carries a fresh object along the flow; records the producer/consumer pair for mappings.
  void maybe_carry(SequenceFlow& f, bool source_is_task, bool target_is_task) {
    if (!source_is_task || !target_is_task || !coin(0.7)) return;
    DataObject o = make_object();
    f.attachments.push_back({o.id, Direction::output, false});
    f.attachments.push_back({o.id, Direction::input, coin(0.2)});
    carried_.push_back({o.id, f.source, f.target, pool_, order_[f.source]});
  }

  Expression random_expr(const DataObject& src, int depth = 0) {
    std::vector<std::string> paths;
    for (const auto& v : src.variables) paths.push_back(src.id + "." + v.name);
    auto leaf = [&]() {
      if (!paths.empty() && coin(0.7)) return Expression::path(paths[pick(0, static_cast<int>(paths.size()) - 1)]);
      switch (pick(0, 2)) {
        case 0: return Expression::literal(Value::string(coin(0.5) ? "it's" : text()));
        case 1: return Expression::literal(Value::number(pick(-50, 50) / 4.0));
        default: return Expression::literal(Value::boolean(coin(0.5)));
      }
    };
    if (depth > 2 || coin(0.5)) return leaf();
    switch (pick(0, 3)) {
      case 0: return Expression::compare(static_cast<RelOp>(pick(0, 5)), leaf(), leaf());
      case 1: return Expression::conj(random_expr(src, depth + 1), random_expr(src, depth + 1));
      case 2: return Expression::disj(random_expr(src, depth + 1), random_expr(src, depth + 1));
      default: return Expression::negate(random_expr(src, depth + 1));
    }
  }

  // start -> segment* -> end, where a segment is a task, a sub-process, a parallel block or an XOR block.
  void chain(std::vector<Node>& nodes, std::vector<SequenceFlow>& flows, std::vector<DataFlow>& data,
             const std::string& pool, int depth) {
    Node start = make_node(coin(0.3) && depth == 0 ? NodeKind::start_event_message : NodeKind::start_event_none);
    nodes.push_back(start);
    std::string prev = start.id;
    bool prev_task = false;
    int segments = pick(1, 4);
    for (int i = 0; i < segments; ++i) {
      int kind = pick(0, 9);
      if (kind < 6 || depth > 0) {
        Node t = make_node(NodeKind::task);
        order_[t.id] = position_++;
        nodes.push_back(t);
        SequenceFlow f = flow(prev, t.id);
        maybe_carry(f, prev_task, true);
        flows.push_back(f);
        store_access(t.id, data);
        prev = t.id;
        prev_task = true;
      } else if (kind < 7) {
        Node sp = make_node(NodeKind::sub_process);
        order_[sp.id] = position_++;
        chain(sp.children, flows, data, pool, depth + 1);
        flows.push_back(flow(prev, sp.id));
        nodes.push_back(sp);
        prev = sp.id;
        prev_task = false;
      } else {
        bool xor_block = kind == 9;
        Node split = make_node(xor_block ? NodeKind::gateway_exclusive_data : NodeKind::gateway_parallel);
        Node join = make_node(xor_block ? NodeKind::gateway_exclusive_data : NodeKind::gateway_parallel);
        if (xor_block && coin(0.5)) split.condition = Expression::literal(Value::boolean(true));
        flows.push_back(flow(prev, split.id));
        nodes.push_back(split);
        int branches = pick(2, 3);
        for (int b = 0; b < branches; ++b) {
          Node t = make_node(NodeKind::task);
          order_[t.id] = position_++;
          SequenceFlow in = flow(split.id, t.id);
          if (xor_block) {
            if (b == branches - 1) in.is_default = true;
            else if (!carried_.empty() && coin(0.6))
              in.guard = random_expr(*find_object(carried_[pick(0, static_cast<int>(carried_.size()) - 1)].object));
            else
              in.guard = Expression::compare(RelOp::ge, Expression::literal(Value::number(b)),
                                             Expression::literal(Value::number(1)));
          }
          flows.push_back(in);
          flows.push_back(flow(t.id, join.id));
          nodes.push_back(t);
        }
        nodes.push_back(join);
        prev = join.id;
        prev_task = false;
      }
    }
    Node end = make_node(NodeKind::end_event);
    nodes.push_back(end);
    flows.push_back(flow(prev, end.id));
    if (depth == 0) last_task_[pool] = prev_task ? prev : "";
  }

  void store_access(const std::string& task, std::vector<DataFlow>& data) {
    if (parts_.stores.empty() || !coin(0.4)) return;
    const DataStore& s = parts_.stores[pick(0, static_cast<int>(parts_.stores.size()) - 1)];
    DataFlow f;
    f.id = ident("d");
    if (coin(0.5)) {
      DataObject o = make_object();
      f.source = task;
      f.target = s.id;
      f.object = o.id;
    } else {
      DataObject o = make_object(s.id);
      f.source = s.id;
      f.target = task;
      f.object = o.id;
      f.optional = coin(0.3);
    }
    data.push_back(f);
  }

  Pool make_pool(const std::string& id) {
    Pool p;
    p.id = id;
    p.name = text();
    pool_ = id;
    chain(p.nodes, p.sequence_flows, p.data_flows, id, 0);
    std::shuffle(p.sequence_flows.begin(), p.sequence_flows.end(), rng_);
    return p;
  }

  const DataObject* find_object(const std::string& id) const {
    for (const auto& o : parts_.objects)
      if (o.id == id) return &o;
    return nullptr;
  }

  void add_mappings() {
    for (std::size_t i = 0; i < carried_.size(); ++i)
      for (std::size_t j = 0; j < carried_.size(); ++j) {
        const auto& a = carried_[i];
        const auto& b = carried_[j];
        // b is consumed downstream of where a is produced, in the same chain.
        if (i == j || b.order <= a.order || !coin(0.6)) continue;
        if (a.pool != b.pool) continue;
        const DataObject* src = find_object(a.object);
        const DataObject* dst = find_object(b.object);
        std::vector<const Variable*> targets;
        for (const auto& v : dst->variables)
          if (is_scalar(v.type)) targets.push_back(&v);
        if (targets.empty()) continue;
        DataMapping m;
        m.id = ident("m");
        m.source_object = src->id;
        m.target_object = dst->id;
        int rules = pick(1, 3);
        for (int r = 0; r < rules; ++r)
          m.rules.push_back({random_expr(*src), targets[pick(0, static_cast<int>(targets.size()) - 1)]->name});
        parts_.mappings.push_back(m);
      }
  }

  std::string d_pool(const std::string& node) const {
    for (const auto& p : parts_.pools)
      for (const auto& n : p.nodes)
        if (n.id == node) return p.id;
    return "?";
  }

  void add_messages() {
    std::vector<std::string> senders;
    for (const auto& [pool, task] : last_task_)
      if (!task.empty()) senders.push_back(task);
    bool has_ext = std::any_of(parts_.pools.begin(), parts_.pools.end(), [](const Pool& p) { return p.external; });
    for (const auto& task : senders) {
      if (!coin(0.6)) continue;
      MessageFlow f;
      f.id = ident("mf");
      f.source = task;
      std::string target;
      for (const auto& other : senders)
        if (d_pool(other) != d_pool(task)) target = other;
      DataObject o = make_object();
      if (!target.empty() && coin(0.5)) {
        f.target = target;
        f.attachments = {{o.id, Direction::output, false}, {o.id, Direction::input, false}};
      } else if (has_ext) {
        f.target = "ext";
        f.attachments = {{o.id, Direction::output, false}};
      } else {
        parts_.objects.erase(std::remove_if(parts_.objects.begin(), parts_.objects.end(),
                                            [&](const DataObject& x) { return x.id == o.id; }),
                             parts_.objects.end());
        continue;
      }
      parts_.message_flows.push_back(f);
    }
  }

  struct Carried {
    std::string object, producer, consumer, pool;
    int order;
  };

  std::mt19937_64 rng_;
  DiagramParts parts_;
  int counter_ = 0;
  int position_ = 0;
  std::string pool_;
  std::map<std::string, int> order_;
  std::vector<Carried> carried_;
  std::map<std::string, std::string> last_task_;
};

}  // namespace

Diagram random_diagram(std::uint64_t seed) { return Diagram(Builder(seed).build()); }

Fuzzer::Fuzzer(std::vector<std::string> corpus, std::uint64_t seed) : corpus_(std::move(corpus)), rng_(seed) {}

std::string Fuzzer::next() {
  std::uniform_int_distribution<int> mode(0, 9);
  int m = mode(rng_);
  if (m == 0 || corpus_.empty()) {
    std::string out(std::uniform_int_distribution<int>(0, 300)(rng_), '\0');
    for (auto& c : out) c = static_cast<char>(std::uniform_int_distribution<int>(0, 255)(rng_));
    return out;
  }
  if (m == 1) {
    int depth = std::uniform_int_distribution<int>(1, 4000)(rng_);
    return std::string(depth, '[') + std::string(depth / 2, ']');
  }
  const std::string& base = corpus_[std::uniform_int_distribution<std::size_t>(0, corpus_.size() - 1)(rng_)];
  std::string out = base;
  int rounds = std::uniform_int_distribution<int>(1, 8)(rng_);
  for (int i = 0; i < rounds; ++i) out = mutate(std::move(out));
  return out;
}

std::string Fuzzer::mutate(std::string text) {
  static const std::vector<std::string> tokens{
      "{", "}", "[", "]", "\"", ":", ",", "null", "true", "-1e999", "1e400", "\"\\u0000\"", "\"\\ud800\"",
      "\"kind\": \"zzz\"", "\"id\": 7", "\"pools\": {}", "\"direction\": \"sideways\"", "\"guard\": \"a ==\"",
      "\"from\": \"(\"", "\"scope\": {\"sub_process\": \"nope\"}", "\xff\xfe", "0x10", "\"\"", "NaN"};
  if (text.empty()) return tokens[std::uniform_int_distribution<std::size_t>(0, tokens.size() - 1)(rng_)];
  auto pos = [&]() { return std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng_); };
  switch (std::uniform_int_distribution<int>(0, 5)(rng_)) {
    case 0: text[pos()] = static_cast<char>(std::uniform_int_distribution<int>(0, 255)(rng_)); break;
    case 1: {
      std::size_t p = pos();
      text.erase(p, std::uniform_int_distribution<std::size_t>(1, 40)(rng_));
      break;
    }
    case 2: text.insert(pos(), tokens[std::uniform_int_distribution<std::size_t>(0, tokens.size() - 1)(rng_)]); break;
    case 3: text.resize(pos()); break;
    case 4: {
      std::size_t p = pos();
      std::size_t len = std::min<std::size_t>(text.size() - p, 60);
      text.insert(pos(), text.substr(p, len));
      break;
    }
    default: {
      // Swap one quoted string for another from elsewhere in the document.
      std::size_t a = text.find('"', pos());
      std::size_t b = text.find('"', pos());
      if (a == std::string::npos || b == std::string::npos) break;
      std::size_t ae = text.find('"', a + 1), be = text.find('"', b + 1);
      if (ae == std::string::npos || be == std::string::npos) break;
      std::string sa = text.substr(a, ae - a + 1), sb = text.substr(b, be - b + 1);
      if (a < b && ae < b) {
        text.replace(b, sb.size(), sa);
        text.replace(a, sa.size(), sb);
      }
    }
  }
  return text;
}

}  // namespace testsupport
