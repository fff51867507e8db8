#include "xml_tree.hpp"

#include <algorithm>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace pt = boost::property_tree;

namespace testsupport {

namespace {

const std::string attr_key = "<xmlattr>";

bool is_element(const std::string& key) { return key != attr_key && key != "<xmlcomment>"; }

const XmlTree* attributes(const XmlTree& t) {
  auto it = t.find(attr_key);
  return it == t.not_found() ? nullptr : &it->second;
}

std::size_t attribute_count(const XmlTree& t) {
  const XmlTree* a = attributes(t);
  return a ? a->size() : 0;
}

std::vector<const XmlTree::value_type*> elements(const XmlTree& t) {
  std::vector<const XmlTree::value_type*> out;
  for (const auto& child : t)
    if (is_element(child.first)) out.push_back(&child);
  return out;
}

bool match_node(const XmlTree& actual, const XmlTree& expected, bool exact);

// Backtracking bipartite assignment of expected children to distinct actual children.
bool match_children(const std::vector<const XmlTree::value_type*>& act,
                    const std::vector<const XmlTree::value_type*>& exp, std::size_t i, std::vector<bool>& used,
                    bool exact) {
  if (i == exp.size()) return true;
  for (std::size_t j = 0; j < act.size(); ++j) {
    if (used[j] || act[j]->first != exp[i]->first) continue;
    if (!match_node(act[j]->second, exp[i]->second, exact)) continue;
    used[j] = true;
    if (match_children(act, exp, i + 1, used, exact)) return true;
    used[j] = false;
  }
  return false;
}

bool match_node(const XmlTree& actual, const XmlTree& expected, bool exact) {
  if (const XmlTree* ea = attributes(expected)) {
    const XmlTree* aa = attributes(actual);
    if (!aa) return false;
    for (const auto& [name, value] : *ea) {
      auto it = aa->find(name);
      if (it == aa->not_found() || it->second.data() != value.data()) return false;
    }
  }
  if (exact && attribute_count(actual) != attribute_count(expected)) return false;
  std::string et = boost::algorithm::trim_copy(expected.data());
  if ((!et.empty() || exact) && boost::algorithm::trim_copy(actual.data()) != et) return false;
  auto act = elements(actual);
  auto exp = elements(expected);
  if (exact && act.size() != exp.size()) return false;
  std::vector<bool> used(act.size(), false);
  return match_children(act, exp, 0, used, exact);
}

bool search(const XmlTree& tree, const std::string& name, const XmlTree& expected, bool exact) {
  for (const auto& [key, child] : tree) {
    if (!is_element(key)) continue;
    if (key == name && match_node(child, expected, exact)) return true;
    if (search(child, name, expected, exact)) return true;
  }
  return false;
}

}  // namespace

XmlTree parse_xml(const std::string& text) {
  std::istringstream in(text);
  XmlTree tree;
  pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  return tree;
}

void strip_attributes(XmlTree& tree, const std::vector<std::string>& names) {
  for (auto& [key, child] : tree) {
    if (key == attr_key) {
      for (const auto& n : names) child.erase(n);
      continue;
    }
    strip_attributes(child, names);
  }
  auto it = tree.find(attr_key);
  if (it != tree.not_found() && it->second.empty()) tree.erase(tree.to_iterator(it));
}

bool contains_subtree(const XmlTree& actual, const std::string& expected_xml, bool exact) {
  XmlTree wrapper = parse_xml(expected_xml);
  auto roots = elements(wrapper);
  if (roots.size() != 1) return false;
  return search(actual, roots.front()->first, roots.front()->second, exact);
}

int count_elements(const XmlTree& tree, const std::string& name) {
  int n = 0;
  for (const auto& [key, child] : tree) {
    if (!is_element(key)) continue;
    if (key == name) ++n;
    n += count_elements(child, name);
  }
  return n;
}

}  // namespace testsupport
