#pragma once

// Hand-rolled random generators shared by the property tests.

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "dendro/tree.hpp"

namespace testgen {

inline int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random tree with exactly `vertices` vertices of arity 1..max_arity.
inline dendro::Tree random_tree(std::mt19937& rng, int vertices, int max_arity) {
  int next = 0;
  auto fresh = [&] { return "x" + std::to_string(next++); };
  std::vector<std::string> edges;
  std::vector<dendro::NamedVertex> vs;
  std::string root = fresh();
  edges.push_back(root);
  std::vector<std::string> open{root};
  for (int v = 0; v < vertices; ++v) {
    int pick = uniform(rng, 0, int(open.size()) - 1);
    std::string out = open[pick];
    open.erase(open.begin() + pick);
    dendro::NamedVertex nv;
    nv.output = out;
    int arity = uniform(rng, 1, max_arity);
    for (int i = 0; i < arity; ++i) {
      std::string e = fresh();
      edges.push_back(e);
      nv.inputs.push_back(e);
      open.push_back(e);
    }
    vs.push_back(nv);
  }
  return dendro::Tree::from_named(edges, vs, root);
}

/// Same shape with fresh edge names and shuffled input and vertex orders.
inline dendro::Tree scramble(std::mt19937& rng, const dendro::Tree& t) {
  std::vector<int> perm(t.edge_count());
  for (int i = 0; i < t.edge_count(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::unordered_map<std::string, std::string> ren;
  for (int e = 0; e < t.edge_count(); ++e)
    ren[t.name(e)] = "y" + std::to_string(perm[e]);
  std::vector<std::string> edges;
  for (const auto& n : t.names()) edges.push_back(ren[n]);
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<dendro::NamedVertex> vs;
  for (const auto& v : t.vertices()) {
    dendro::NamedVertex nv;
    nv.output = ren[t.name(v.output)];
    for (auto e : v.inputs) nv.inputs.push_back(ren[t.name(e)]);
    std::shuffle(nv.inputs.begin(), nv.inputs.end(), rng);
    vs.push_back(nv);
  }
  std::shuffle(vs.begin(), vs.end(), rng);
  return dendro::Tree::from_named(edges, vs, ren[t.name(t.root())]);
}

}  // namespace testgen
