#include "sthoi/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace sthoi {

void MockOntology::add_edge(const std::string& child,
                            const std::string& parent) {
  parents_[child].push_back(parent);
  words_.insert(child);
  words_.insert(parent);
}

MockOntology MockOntology::from_lines(const std::vector<std::string>& lines) {
  MockOntology o;
  for (const auto& line : lines) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw invalid_input("ontology line missing tab separator: " + line);
    }
    o.add_edge(line.substr(0, tab), line.substr(tab + 1));
  }
  return o;
}

MockOntology MockOntology::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw invalid_input("cannot open: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return from_lines(lines);
}

std::map<std::string, int> MockOntology::ancestry(const std::string& w) const {
  if (!words_.contains(w)) {
    throw invalid_input("ontology does not know word: " + w);
  }
  std::map<std::string, int> dist{{w, 0}};
  std::deque<std::string> q{w};
  while (!q.empty()) {
    const std::string cur = q.front();
    q.pop_front();
    const auto it = parents_.find(cur);
    if (it == parents_.end()) continue;
    for (const auto& p : it->second) {
      if (!dist.contains(p) || dist[p] > dist[cur] + 1) {
        dist[p] = dist[cur] + 1;
        q.push_back(p);
      }
    }
  }
  return dist;
}

bool MockOntology::has_path(const std::string& a, const std::string& b) const {
  return path_length(a, b).has_value();
}

std::optional<int> MockOntology::path_length(const std::string& a,
                                             const std::string& b) const {
  const auto da = ancestry(a);
  const auto db = ancestry(b);
  std::optional<int> best;
  for (const auto& [word, d] : da) {
    const auto it = db.find(word);
    if (it == db.end()) continue;
    const int len = d + it->second;
    if (!best || len < *best) best = len;
  }
  return best;
}

int MockOntology::level(const std::string& w) const {
  // Distance to the nearest root (word with no parents).
  const auto anc = ancestry(w);
  int best = std::numeric_limits<int>::max();
  for (const auto& [word, d] : anc) {
    if (!parents_.contains(word)) best = std::min(best, d);
  }
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

std::optional<std::string> MockOntology::closest_common_parent(
    const std::string& a, const std::string& b) const {
  const auto da = ancestry(a);
  const auto db = ancestry(b);
  std::optional<std::string> best;
  int best_len = std::numeric_limits<int>::max();
  for (const auto& [word, d] : da) {
    const auto it = db.find(word);
    if (it == db.end()) continue;
    const int len = d + it->second;
    if (len < best_len || (len == best_len && (!best || word < *best))) {
      best_len = len;
      best = word;
    }
  }
  return best;
}

std::size_t ClassTreeNode::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

bool ClassTreeNode::contains(const std::string& w) const {
  if (word == w) return true;
  for (const auto& c : children)
    if (c.contains(w)) return true;
  return false;
}

std::vector<std::vector<std::string>> cluster_classes(
    const std::vector<std::string>& words, const HypernymOracle& oracle,
    const TaxonomyOptions& opt) {
  if (words.empty()) throw invalid_input("cluster_classes: empty word list");
  std::vector<std::vector<std::string>> clusters;
  for (const auto& w : words) {
    bool placed = false;
    for (auto& cluster : clusters) {
      // Representative with the highest WordNet level.
      const std::string* rep = &cluster.front();
      for (const auto& member : cluster) {
        const bool better = opt.highest_means_shallowest
                                ? oracle.level(member) < oracle.level(*rep)
                                : oracle.level(member) > oracle.level(*rep);
        if (better) rep = &member;
      }
      if (oracle.has_path(w, *rep)) {
        cluster.push_back(w);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({w});
  }
  return clusters;
}

ClassTree construct_tree(const std::vector<std::string>& cluster,
                         const HypernymOracle& oracle) {
  if (cluster.empty()) throw invalid_input("construct_tree: empty cluster");
  // Flat insertion-order construction: nodes are the cluster words in order,
  // each attaching under the earliest prior word at the shortest oracle path.
  const std::size_t n = cluster.size();
  std::vector<int> parent(n, -1);
  for (std::size_t i = 1; i < n; ++i) {
    int best = 0;
    std::optional<int> best_len;
    for (std::size_t k = 0; k < i; ++k) {
      const auto len = oracle.path_length(cluster[i], cluster[k]);
      if (len && (!best_len || *len < *best_len)) {
        best_len = len;
        best = static_cast<int>(k);
      }
    }
    parent[i] = best;  // disconnected words fall under the first word
  }
  auto materialize = [&](auto&& self, int idx) -> ClassTree {
    ClassTree node{cluster[idx], {}};
    for (std::size_t i = 0; i < n; ++i)
      if (parent[i] == idx) node.children.push_back(self(self, static_cast<int>(i)));
    return node;
  };
  return materialize(materialize, 0);
}

ClassTree combine_trees(const ClassTree& tx, const ClassTree& ty,
                        const HypernymOracle& oracle) {
  if (tx.word.empty() || ty.word.empty()) {
    throw invalid_input("combine_trees: empty tree");
  }
  const auto parent = oracle.closest_common_parent(tx.word, ty.word);
  if (!parent) {
    throw invalid_input("combine_trees: no common parent for '" + tx.word +
                        "' and '" + ty.word + "'");
  }
  // Attach inside an existing tree when the common parent is already a node,
  // keeping every word unique.
  if (tx.word == *parent && ty.word == *parent) {
    ClassTree merged = tx;
    for (const auto& c : ty.children) merged.children.push_back(c);
    return merged;
  }
  auto graft = [](ClassTree host, const ClassTree& guest,
                  const std::string& at) -> ClassTree {
    auto find = [&](auto&& self, ClassTreeNode& n) -> ClassTreeNode* {
      if (n.word == at) return &n;
      for (auto& c : n.children)
        if (auto* r = self(self, c)) return r;
      return nullptr;
    };
    find(find, host)->children.push_back(guest);
    return host;
  };
  if (tx.contains(*parent)) return graft(tx, ty, *parent);
  if (ty.contains(*parent)) return graft(ty, tx, *parent);
  return ClassTree{*parent, {tx, ty}};
}

ClassTree build_taxonomy(const std::vector<std::vector<std::string>>& clusters,
                         const HypernymOracle& oracle) {
  if (clusters.empty()) throw invalid_input("build_taxonomy: no clusters");
  ClassTree t = construct_tree(clusters.front(), oracle);
  for (std::size_t i = 1; i < clusters.size(); ++i) {
    t = combine_trees(t, construct_tree(clusters[i], oracle), oracle);
  }
  return t;
}

namespace {

nlohmann::json tree_json(const ClassTreeNode& n) {
  nlohmann::json j;
  j["word"] = n.word;
  j["children"] = nlohmann::json::array();
  for (const auto& c : n.children) j["children"].push_back(tree_json(c));
  return j;
}

}  // namespace

std::string tree_to_json(const ClassTree& t) { return tree_json(t).dump(2); }

}  // namespace sthoi
