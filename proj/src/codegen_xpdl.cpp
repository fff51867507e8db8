#include <algorithm>
#include <set>

#include "bpdmn/codegen.hpp"
#include "bpdmn/xml.hpp"
#include "codegen_common.hpp"

namespace bpdmn {

namespace {

constexpr const char* xpdl_namespace = "http://www.wfmc.org/2008/XPDL2.1";

std::string basic_type(VarType t) {
  switch (t) {
    case VarType::number: return "FLOAT";
    case VarType::boolean: return "BOOLEAN";
    default: return "STRING";
  }
}

template <typename T>
std::vector<const T*> sorted(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& i : items) out.push_back(&i);
  std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->id < b->id; });
  return out;
}

class XpdlWriter {
 public:
  explicit XpdlWriter(const Diagram& d) : d_(d) {}

  Translation run() {
    XmlElement pkg("Package");
    std::string name = d_.id().empty() ? "package" : d_.id();
    pkg.set("Id", name).set("Name", name).set("xmlns", xpdl_namespace);
    XmlElement& header = pkg.add("PackageHeader");
    header.add("XPDLVersion").text = "2.1";
    header.add("Vendor").text = "bpdmn";

    XmlElement fields("DataFields");
    for (const DataStore* s : sorted(d_.stores()))
      if (s->scope.is_diagram()) add_fields(fields, *s);
    if (!fields.children.empty()) pkg.add(std::move(fields));

    if (!d_.objects().empty()) {
      XmlElement& artifacts = pkg.add("Artifacts");
      for (const DataObject* o : sorted(d_.objects())) {
        XmlElement& obj = artifacts.add("DataObject");
        obj.set("id", o->id).set("Name", o->name);
        if (o->state) obj.set("State", *o->state);
        if (o->url) obj.set("Url", *o->url);
        if (!o->variables.empty()) {
          XmlElement& vars = obj.add("DataFields");
          for (const auto& v : o->variables) {
            XmlElement& f = vars.add("DataField");
            f.set("id", v.name);
            if (o->origin_store) f.set("Ref", *o->origin_store + "." + v.name);
          }
        }
      }
    }

    message_flows(pkg);
    applications(pkg);

    XmlElement& procs = pkg.add("WorkflowProcesses");
    for (const Pool* p : sorted(d_.pools())) {
      if (p->external) continue;
      XmlElement& wp = procs.add("WorkflowProcess");
      wp.set("Id", p->id).set("Name", p->name);
      XmlElement sets("ActivitySets");
      for (const Node* n : d_.all_nodes())
        if (n->kind == NodeKind::sub_process && d_.pool_of(n->id) == p) sets.add(activity_set(*n));
      if (!sets.children.empty()) wp.add(std::move(sets));
      wp.add(activities(p->nodes));
      XmlElement tr = transitions(p->nodes);
      if (!tr.children.empty()) wp.add(std::move(tr));
    }
    return {to_xml(pkg), std::move(warnings_)};
  }

 private:
  void add_fields(XmlElement& parent, const DataStore& s) {
    for (const auto& f : detail::store_fields(s)) {
      XmlElement& df = parent.add("DataField");
      df.set("Id", s.id + "." + f.path).set("Name", f.name);
      df.add("DataType").add("BasicType").set("Type", basic_type(f.type));
    }
  }

  void message_flows(XmlElement& pkg) {
    if (d_.message_flows().empty()) return;
    XmlElement& mfs = pkg.add("MessageFlows");
    for (const MessageFlow* f : sorted(d_.message_flows())) {
      XmlElement& mf = mfs.add("MessageFlow");
      mf.set("Id", f->id).set("Source", f->source).set("Target", f->target);
      std::set<std::string> seen;
      for (const auto& a : f->attachments) {
        if (!seen.insert(a.object).second) continue;
        mf.add("Message").set("Id", f->id + "." + a.object).set("Name", d_.find_object(a.object)->name).set(
            "ArtifactId", a.object);
      }
    }
  }

  void applications(XmlElement& pkg) {
    XmlElement apps("Applications");
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::task) {
        XmlElement& app = apps.add("Application");
        app.set("Id", n->id + "_app").set("Name", n->name);
        app.comment("placeholder: the service behind this task is defined outside the model");
      }
    if (!apps.children.empty()) pkg.add(std::move(apps));
  }

  XmlElement activity_set(const Node& sp) {
    XmlElement set("ActivitySet");
    set.set("Id", sp.id).set("Name", sp.name);
    XmlElement fields("DataFields");
    for (const auto& store_id : sp.local_stores) add_fields(fields, *d_.find_store(store_id));
    if (!fields.children.empty()) set.add(std::move(fields));
    set.add(activities(sp.children));
    XmlElement tr = transitions(sp.children);
    if (!tr.children.empty()) set.add(std::move(tr));
    return set;
  }

  XmlElement activities(const std::vector<Node>& nodes) {
    XmlElement acts("Activities");
    for (const Node* n : sorted(nodes)) acts.add(activity(*n));
    return acts;
  }

  XmlElement activity(const Node& n) {
    XmlElement act("Activity");
    act.set("Id", n.id).set("name", n.name);
    std::vector<std::string> ins, outs;
    for (const auto& i : node_inputs(d_, n.id)) detail::push_unique(ins, i.object);
    for (const auto& o : node_outputs(d_, n.id)) detail::push_unique(outs, o.object);
    switch (n.kind) {
      case NodeKind::task: {
        io_sets(act, ins, outs);
        XmlElement& app = act.add("Implementation").add("Task").add("TaskApplication");
        app.set("Id", n.id + "_app");
        std::vector<std::string> names;
        for (const auto& list : {ins, outs})
          for (const auto& obj : list)
            for (const auto& v : d_.find_object(obj)->variables) detail::push_unique(names, obj + "." + v.name);
        if (!names.empty()) {
          XmlElement& params = app.add("ActualParameters");
          for (const auto& name : names) params.add("ActualParameter").text = name;
        }
        break;
      }
      case NodeKind::sub_process:
        io_sets(act, ins, outs);
        act.add("BlockActivity").set("ActivitySetId", n.id);
        break;
      case NodeKind::gateway_exclusive_data:
        act.add("Route").set("GatewayType", "Exclusive");
        break;
      case NodeKind::gateway_parallel:
        act.add("Route").set("GatewayType", "Parallel");
        break;
      case NodeKind::start_event_none:
        act.add("Event").add("StartEvent").set("Trigger", "None");
        break;
      case NodeKind::start_event_message:
        io_sets(act, {}, outs);
        act.add("Event").add("StartEvent").set("Trigger", "Message");
        break;
      case NodeKind::intermediate_message:
        io_sets(act, {}, outs);
        act.add("Event").add("IntermediateEvent").set("Trigger", "Message");
        break;
      case NodeKind::end_event:
        act.add("Event").add("EndEvent").set("Result", d_.outgoing_messages(n.id).empty() ? "None" : "Message");
        break;
    }
    assignments(act, ins);
    return act;
  }

  static void io_sets(XmlElement& act, const std::vector<std::string>& ins, const std::vector<std::string>& outs) {
    if (!ins.empty()) {
      XmlElement& set = act.add("InputSets").add("InputSet");
      for (const auto& o : ins) set.add("Input").set("ArtifactId", o);
    }
    if (!outs.empty()) {
      XmlElement& set = act.add("OutputSets").add("OutputSet");
      for (const auto& o : outs) set.add("Output").set("ArtifactId", o);
    }
  }

  // Mappings feeding this activity's inputs become its assignments.
  void assignments(XmlElement& act, const std::vector<std::string>& ins) {
    XmlElement block("Assignments");
    for (const DataMapping* m : sorted(d_.mappings())) {
      if (std::find(ins.begin(), ins.end(), m->target_object) == ins.end() || done_.count(m->id)) continue;
      done_.insert(m->id);
      for (const auto& rule : m->rules) {
        XmlElement& a = block.add("Assignment");
        a.set("AssignTime", "Start");
        a.add("Target").text = m->target_object + "." + rule.to;
        a.add("Expression").text = print_expr(rule.from);
      }
    }
    if (!block.children.empty()) act.add(std::move(block));
  }

  XmlElement transitions(const std::vector<Node>& nodes) {
    std::set<std::string> here;
    for (const auto& n : nodes) here.insert(n.id);
    XmlElement tr("Transitions");
    for (const SequenceFlow* f : d_.all_sequence_flows()) {
      if (!here.count(f->source)) continue;
      XmlElement& t = tr.add("Transition");
      t.set("Id", f->id).set("From", f->source).set("To", f->target);
      const Node* src = d_.find_node(f->source);
      std::optional<Expression> guard = f->guard ? f->guard : (f->is_default ? std::nullopt : src->condition);
      if (f->is_default)
        t.add("Condition").set("Type", "OTHERWISE");
      else if (guard)
        t.add("Condition").set("Type", "CONDITION").text = print_expr(*guard);
    }
    return tr;
  }

  const Diagram& d_;
  std::vector<std::string> warnings_;
  std::set<std::string> done_;
};

}  // namespace

Translation to_xpdl(const Diagram& d) {
  detail::require_valid(d);
  return XpdlWriter(d).run();
}

}  // namespace bpdmn
