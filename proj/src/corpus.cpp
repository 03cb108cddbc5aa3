#include "scidtb/corpus.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace scidtb {
namespace {

using json = nlohmann::ordered_json;

std::string kind_name(InvariantError::Kind kind) {
  switch (kind) {
    case InvariantError::Kind::kSelfAttachment: return "self-attachment";
    case InvariantError::Kind::kCycle: return "cycle";
    case InvariantError::Kind::kMultipleRoots: return "multiple roots";
    case InvariantError::Kind::kNoRoot: return "no root";
    case InvariantError::Kind::kIdRange: return "non-contiguous ids";
    case InvariantError::Kind::kHeadRange: return "head out of range";
    case InvariantError::Kind::kRootLabel: return "ROOT label mismatch";
  }
  return "invariant";
}

std::string describe(InvariantError::Kind kind, const std::string& doc_id, int node,
                     const std::string& detail) {
  std::ostringstream os;
  os << doc_id << ": " << kind_name(kind);
  if (node >= 0) os << " at node " << node;
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

const json& require(const json& record, const std::string& key, const std::string& doc_id,
                    int index) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw SchemaError(doc_id + ": record " + std::to_string(index) + " missing field '" + key + "'");
  }
  return *it;
}

int require_int(const json& record, const std::string& key, const std::string& doc_id,
                int index) {
  const json& v = require(record, key, doc_id, index);
  if (!v.is_number_integer()) {
    throw SchemaError(doc_id + ": record " + std::to_string(index) + " field '" + key +
                      "' is not an integer");
  }
  return v.get<int>();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

InvariantError::InvariantError(Kind kind, std::string doc_id, int node, const std::string& detail)
    : CorpusError(describe(kind, doc_id, node, detail)),
      kind_(kind),
      doc_id_(std::move(doc_id)),
      node_(node) {}

EduId DiscourseTree::root() const {
  for (const auto& e : edus) {
    if (e.head == kVirtualRoot) return e.id;
  }
  return kVirtualRoot;
}

void validate(const DiscourseTree& tree) {
  using Kind = InvariantError::Kind;
  const int n = tree.size();
  for (int i = 0; i < n; ++i) {
    if (tree.edus[i].id != i + 1) {
      throw InvariantError(Kind::kIdRange, tree.doc_id, tree.edus[i].id,
                           "expected id " + std::to_string(i + 1));
    }
  }
  int roots = 0;
  for (const auto& e : tree.edus) {
    if (e.head < 0 || e.head > n) {
      throw InvariantError(Kind::kHeadRange, tree.doc_id, e.id, "head " + std::to_string(e.head));
    }
    if (e.head == e.id) throw InvariantError(Kind::kSelfAttachment, tree.doc_id, e.id, "");
    if ((e.head == kVirtualRoot) != e.relation.is_root()) {
      throw InvariantError(Kind::kRootLabel, tree.doc_id, e.id,
                           "ROOT relation must be used exactly on the root attachment");
    }
    if (e.head == kVirtualRoot && ++roots > 1) {
      throw InvariantError(Kind::kMultipleRoots, tree.doc_id, e.id, "");
    }
  }
  if (n > 0 && roots == 0) throw InvariantError(Kind::kNoRoot, tree.doc_id, -1, "");

  // 0 = unvisited, 1 = on current path, 2 = known to reach the root.
  std::vector<int> state(n + 1, 0);
  state[0] = 2;
  for (int start = 1; start <= n; ++start) {
    std::vector<int> path;
    int v = start;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = tree.edu(v).head;
    }
    if (state[v] == 1) throw InvariantError(Kind::kCycle, tree.doc_id, v, "");
    for (int p : path) state[p] = 2;
  }
}

void validate_disjoint(const CorpusSplit& split) {
  std::map<std::string, std::string> seen;
  auto check = [&](const std::vector<DiscourseTree>& part, const std::string& name) {
    for (const auto& t : part) {
      auto [it, inserted] = seen.emplace(t.doc_id, name);
      if (!inserted && it->second != name) {
        throw InvariantError(InvariantError::Kind::kIdRange, t.doc_id, -1,
                             "document in both " + it->second + " and " + name);
      }
    }
  };
  check(split.train, "train");
  check(split.dev, "dev");
  check(split.test, "test");
}

DiscourseTree parse_document(const std::string& content, const std::string& doc_id,
                             const FileSchema& schema) {
  std::string_view body(content);
  if (body.size() >= 3 && body.substr(0, 3) == "\xEF\xBB\xBF") body.remove_prefix(3);

  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError(doc_id + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains(schema.root_key) || !doc[schema.root_key].is_array()) {
    throw SchemaError(doc_id + ": top-level '" + schema.root_key + "' array missing");
  }

  DiscourseTree tree;
  tree.doc_id = doc_id;
  int index = 0;
  for (const json& record : doc[schema.root_key]) {
    if (!record.is_object()) throw SchemaError(doc_id + ": record " + std::to_string(index) + " is not an object");
    const int id = require_int(record, schema.id, doc_id, index);
    const int parent = require_int(record, schema.parent, doc_id, index);
    if (id == kVirtualRoot) {
      ++index;
      continue;
    }
    const json& text = require(record, schema.text, doc_id, index);
    const json& rel = require(record, schema.relation, doc_id, index);
    if (!text.is_string() || !rel.is_string()) {
      throw SchemaError(doc_id + ": node " + std::to_string(id) + " has non-string text or relation");
    }
    auto label = parse_relation(rel.get<std::string>());
    if (!label) {
      throw SchemaError(doc_id + ": node " + std::to_string(id) + " has unknown relation '" +
                        rel.get<std::string>() + "'");
    }
    tree.edus.push_back(EduNode{id, text.get<std::string>(), parent, *label});
    ++index;
  }
  std::stable_sort(tree.edus.begin(), tree.edus.end(),
                   [](const EduNode& a, const EduNode& b) { return a.id < b.id; });
  validate(tree);
  return tree;
}

std::string serialize_document(const DiscourseTree& tree, const FileSchema& schema) {
  validate(tree);
  json nodes = json::array();
  json root_record;
  root_record[schema.id] = 0;
  root_record[schema.parent] = -1;
  root_record[schema.text] = "ROOT";
  root_record[schema.relation] = "null";
  nodes.push_back(std::move(root_record));
  for (const auto& e : tree.edus) {
    json record;
    record[schema.id] = e.id;
    record[schema.parent] = e.head;
    record[schema.text] = e.text;
    record[schema.relation] = relation_file_name(e.relation);
    nodes.push_back(std::move(record));
  }
  json doc;
  doc[schema.root_key] = std::move(nodes);
  return doc.dump(1, '\t') + "\n";
}

std::string doc_id_from_path(const std::filesystem::path& path) {
  const std::string name = path.filename().string();
  return name.substr(0, name.find('.'));
}

DiscourseTree load_document(const std::filesystem::path& path, const FileSchema& schema) {
  return parse_document(read_file(path), doc_id_from_path(path), schema);
}

void save_document(const DiscourseTree& tree, const std::filesystem::path& path,
                   const FileSchema& schema) {
  const std::string body = serialize_document(tree, schema);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << body;
  if (!out) throw IoError("write failed for " + path.string());
}

DiscourseTree map_to_coarse(const DiscourseTree& tree) {
  DiscourseTree out = tree;
  for (auto& e : out.edus) {
    if (!e.relation.is_root()) e.relation = to_coarse(e.relation);
  }
  return out;
}

long count_relations(const std::vector<DiscourseTree>& corpus) {
  long total = 0;
  for (const auto& t : corpus) total += t.size();
  return total;
}

std::vector<int> node_depths(const DiscourseTree& tree) {
  std::vector<int> depth(tree.size() + 1, -1);
  depth[0] = 0;
  for (int v = 1; v <= tree.size(); ++v) {
    std::vector<int> path;
    int u = v;
    while (depth[u] < 0) {
      path.push_back(u);
      u = tree.edu(u).head;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth[*it] = depth[tree.edu(*it).head] + 1;
  }
  return depth;
}

std::vector<EduId> preorder(const DiscourseTree& tree) {
  std::vector<std::vector<EduId>> children(tree.size() + 1);
  for (const auto& e : tree.edus) children[e.head].push_back(e.id);
  std::vector<EduId> order;
  std::vector<EduId> todo(children[0].rbegin(), children[0].rend());
  while (!todo.empty()) {
    const EduId v = todo.back();
    todo.pop_back();
    order.push_back(v);
    todo.insert(todo.end(), children[v].rbegin(), children[v].rend());
  }
  return order;
}

DiscourseTree strip_structure(const DiscourseTree& tree) {
  DiscourseTree out;
  out.doc_id = tree.doc_id;
  out.edus.reserve(tree.edus.size());
  for (const auto& e : tree.edus) out.edus.push_back(EduNode{e.id, e.text, kVirtualRoot, {}});
  return out;
}

}  // namespace scidtb
