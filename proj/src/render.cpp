#include "scidtb/render.hpp"

#include <sstream>

namespace scidtb {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string render_dot(const DiscourseTree& tree) {
  std::ostringstream os;
  os << "digraph \"" << escape(tree.doc_id) << "\" {\n";
  os << "  rankdir=TB;\n  nodesep=0.1;\n  ranksep=0.15;\n";
  os << "  node [shape=plaintext, fontsize=10];\n";
  os << "  e0 [label=\"e0  ROOT\"];\n";
  for (const auto& e : tree.edus) {
    os << "  e" << e.id << " [label=\"e" << e.id << "  " << escape(e.text) << "\"];\n";
  }
  // Invisible spine keeps the reading order vertical.
  os << "  edge [style=invis];\n ";
  for (int i = 0; i <= tree.size(); ++i) os << (i ? " -> e" : " e") << i;
  os << ";\n";
  os << "  edge [style=solid, fontsize=8, constraint=false];\n";
  for (const auto& e : tree.edus) {
    os << "  e" << e.head << ":w -> e" << e.id << ":w [label=\""
       << escape(relation_display_name(e.relation)) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace scidtb
