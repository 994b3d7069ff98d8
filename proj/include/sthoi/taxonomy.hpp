#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sthoi/geometry.hpp"

namespace sthoi {

// Pluggable is-a relation provider standing in for a lexical database.
class HypernymOracle {
 public:
  virtual ~HypernymOracle() = default;

  // True when a hypernym path connects the two words (shared ancestry).
  virtual bool has_path(const std::string& a, const std::string& b) const = 0;
  // Hop count of the shortest path through the closest common ancestor.
  virtual std::optional<int> path_length(const std::string& a,
                                         const std::string& b) const = 0;
  // Depth below the word's root; level(root) = 0.
  virtual int level(const std::string& w) const = 0;
  virtual std::optional<std::string> closest_common_parent(
      const std::string& a, const std::string& b) const = 0;
};

// Edge-list backed mock ontology: text lines "child<TAB>parent".
class MockOntology : public HypernymOracle {
 public:
  void add_edge(const std::string& child, const std::string& parent);
  static MockOntology from_file(const std::string& path);
  static MockOntology from_lines(const std::vector<std::string>& lines);

  bool has_path(const std::string& a, const std::string& b) const override;
  std::optional<int> path_length(const std::string& a,
                                 const std::string& b) const override;
  int level(const std::string& w) const override;
  std::optional<std::string> closest_common_parent(
      const std::string& a, const std::string& b) const override;

 private:
  // ancestors including the word itself, with edge distance
  std::map<std::string, int> ancestry(const std::string& w) const;

  std::map<std::string, std::vector<std::string>> parents_;
  std::set<std::string> words_;
};

struct ClassTreeNode {
  std::string word;
  std::vector<ClassTreeNode> children;

  std::size_t size() const;
  bool contains(const std::string& w) const;
};

using ClassTree = ClassTreeNode;

struct TaxonomyOptions {
  // "highest level" representative: smallest level number (closest to root)
  // by default; set false for the deepest-node reading.
  bool highest_means_shallowest = true;
};

// Scan existing clusters in order, join the first whose representative is
// connected; otherwise start a new cluster. Deterministic in input order.
std::vector<std::vector<std::string>> cluster_classes(
    const std::vector<std::string>& words, const HypernymOracle& oracle,
    const TaxonomyOptions& opt = {});

// Grow a tree from the cluster's first word; each later word attaches under
// the existing node at the shortest oracle path (ties: earliest inserted).
ClassTree construct_tree(const std::vector<std::string>& cluster,
                         const HypernymOracle& oracle);

// New root = closest common parent of the two roots, both become children.
ClassTree combine_trees(const ClassTree& tx, const ClassTree& ty,
                        const HypernymOracle& oracle);

// Left fold of combine_trees over per-cluster construct_tree results.
ClassTree build_taxonomy(const std::vector<std::vector<std::string>>& clusters,
                         const HypernymOracle& oracle);

std::string tree_to_json(const ClassTree& t);

}  // namespace sthoi
