// Graphviz rendering of a discourse tree: EDUs stacked top to bottom in
// document order under a ROOT node, relation arcs drawn along the left edge.

#ifndef SCIDTB_RENDER_HPP_
#define SCIDTB_RENDER_HPP_

#include <string>

#include "scidtb/corpus.hpp"

namespace scidtb {

std::string render_dot(const DiscourseTree& tree);

}  // namespace scidtb

#endif  // SCIDTB_RENDER_HPP_
