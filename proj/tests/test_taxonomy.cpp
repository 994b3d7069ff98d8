#include <doctest.h>

#include <set>

#include "sthoi/taxonomy.hpp"

using namespace sthoi;

namespace {

MockOntology fruit_tool() {
  return MockOntology::from_lines({
      "apple\tfruit",
      "banana\tfruit",
      "hammer\ttool",
      "fruit\tentity",
      "tool\tentity",
  });
}

void collect_words(const ClassTree& t, std::multiset<std::string>& out) {
  out.insert(t.word);
  for (const auto& c : t.children) collect_words(c, out);
}

}  // namespace

TEST_CASE("mock ontology hypernym queries") {
  const auto o = fruit_tool();
  CHECK(o.has_path("apple", "banana"));
  CHECK(o.has_path("apple", "hammer"));  // via entity
  CHECK(o.path_length("apple", "banana") == 2);
  CHECK(o.path_length("apple", "fruit") == 1);
  CHECK(o.path_length("apple", "hammer") == 4);
  CHECK(o.level("entity") == 0);
  CHECK(o.level("apple") == 2);
  CHECK(o.closest_common_parent("apple", "banana") == "fruit");
  CHECK(o.closest_common_parent("apple", "hammer") == "entity");
  CHECK_THROWS_AS((void)o.has_path("apple", "unknown"), invalid_input);
}

TEST_CASE("clustering joins words that share ancestry") {
  // With the shared root removed, fruits and tools are unrelated.
  const auto o = MockOntology::from_lines(
      {"apple\tfruit", "banana\tfruit", "hammer\ttool"});
  const auto clusters = cluster_classes({"apple", "banana", "hammer"}, o);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0] == std::vector<std::string>{"apple", "banana"});
  CHECK(clusters[1] == std::vector<std::string>{"hammer"});
}

TEST_CASE("construct_tree attaches each word under the path-shortest node") {
  const auto o = MockOntology::from_lines({"b\ta", "c\tb", "d\tc"});
  // insertion order [a, d, c]: d attaches under a (path 3), then c prefers d
  // (path 1) over a (path 2).
  const auto t = construct_tree({"a", "d", "c"}, o);
  CHECK(t.word == "a");
  REQUIRE(t.children.size() == 1);
  CHECK(t.children[0].word == "d");
  REQUIRE(t.children[0].children.size() == 1);
  CHECK(t.children[0].children[0].word == "c");
}

TEST_CASE("construct_tree path-length ties pick the earliest inserted node") {
  const auto o = MockOntology::from_lines({"b\ta", "c\tb"});
  // b is 1 hop from both a and c; a was inserted first.
  const auto t = construct_tree({"a", "c", "b"}, o);
  CHECK(t.word == "a");
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[0].word == "c");
  CHECK(t.children[1].word == "b");
}

TEST_CASE("singleton cluster yields a single-node tree") {
  const auto t = construct_tree({"apple"}, fruit_tool());
  CHECK(t.word == "apple");
  CHECK(t.children.empty());
  CHECK(t.size() == 1);
}

TEST_CASE("combine_trees roots the pair at the closest common parent") {
  const auto o = fruit_tool();
  const auto t = combine_trees({"apple", {}}, {"banana", {}}, o);
  CHECK(t.word == "fruit");
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[0].word == "apple");
  CHECK(t.children[1].word == "banana");
  CHECK(t.size() == 3);
  CHECK_THROWS_AS(
      combine_trees({"apple", {}}, {"x", {}}, MockOntology::from_lines({"apple\tfruit"})),
      invalid_input);
}

TEST_CASE("build_taxonomy keeps every input word exactly once") {
  const auto o = fruit_tool();
  const auto clusters = cluster_classes({"apple", "banana", "hammer"}, o);
  const auto t = build_taxonomy(clusters, o);
  std::multiset<std::string> words;
  collect_words(t, words);
  for (const auto& w : {"apple", "banana", "hammer"}) {
    CHECK(words.count(w) == 1);
  }
  CHECK(t.contains("apple"));
}
