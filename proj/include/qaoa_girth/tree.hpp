// Copyright 2026 The qaoa-girth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The (hyper)tree a depth-p QAOA sees around one clause of a large-girth
// regular hypergraph.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoa_girth/errors.hpp"

namespace qaoa_girth {

inline constexpr int kMaxQubits = 26;

struct TreeSpec {
  int q = 2;
  long long D = 1;
  int p = 1;  // number of levels hanging off the central clause
  int num_vertices = 0;
  std::vector<std::vector<int>> hyperedges;
  int central_edge = 0;
  std::vector<int> couplings;  // +1 / -1 per hyperedge

  std::size_t num_edges() const { return hyperedges.size(); }
};

/// Vertex count of the tree built by `build_tree`, or -1 if it exceeds `limit`.
inline long long tree_vertex_count(int q, long long D, int levels, long long limit) {
  long long layer = q;
  long long total = q;
  if (total > limit) return -1;
  if (levels > 0 && D > limit) return -1;
  for (int d = 0; d < levels; ++d) {
    if (layer > limit / (D * (q - 1)) + 1) return -1;
    layer *= D * (q - 1);
    total += layer;
    if (total > limit) return -1;
  }
  return total;
}

/// Central q-clause; every vertex at depth d < levels joins D further clauses,
/// each adding q-1 fresh vertices at depth d+1. For q = 2 this is the pair of
/// D-ary trees glued at their roots, n = 2(D^p + ... + D + 1).
inline TreeSpec build_tree(int q, long long D, int levels, int max_qubits = kMaxQubits) {
  if (q < 2) throw std::invalid_argument("build_tree: q must be >= 2");
  if (D < 1) throw std::invalid_argument("build_tree: branching D must be >= 1");
  if (levels < 0) throw std::invalid_argument("build_tree: levels must be >= 0");
  const long long n = tree_vertex_count(q, D, levels, max_qubits);
  if (n < 0) {
    throw SizeCapError("build_tree: tree for q=" + std::to_string(q) + ", D=" + std::to_string(D) +
                       ", p=" + std::to_string(levels) + " exceeds the " + std::to_string(max_qubits) +
                       "-qubit cap");
  }

  TreeSpec t;
  t.q = q;
  t.D = D;
  t.p = levels;
  std::vector<int> frontier(q);
  std::iota(frontier.begin(), frontier.end(), 0);
  t.hyperedges.push_back(frontier);
  int next = q;
  for (int d = 0; d < levels; ++d) {
    std::vector<int> grown;
    for (int v : frontier) {
      for (long long c = 0; c < D; ++c) {
        std::vector<int> e{v};
        for (int i = 0; i < q - 1; ++i) {
          e.push_back(next);
          grown.push_back(next);
          ++next;
        }
        t.hyperedges.push_back(std::move(e));
      }
    }
    frontier = std::move(grown);
  }
  t.num_vertices = next;
  t.central_edge = 0;
  t.couplings.assign(t.hyperedges.size(), -1);
  return t;
}

namespace detail {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace detail

/// Throws if the spec is malformed, disconnected or contains a Berge cycle.
inline void validate_tree(const TreeSpec& t) {
  if (t.q < 2 || t.num_vertices < t.q) throw std::invalid_argument("TreeSpec: bad q or vertex count");
  if (t.hyperedges.empty()) throw std::invalid_argument("TreeSpec: no hyperedges");
  if (t.central_edge < 0 || static_cast<std::size_t>(t.central_edge) >= t.hyperedges.size()) {
    throw std::invalid_argument("TreeSpec: central edge out of range");
  }
  if (!t.couplings.empty() && t.couplings.size() != t.hyperedges.size()) {
    throw std::invalid_argument("TreeSpec: one coupling per hyperedge");
  }
  for (int j : t.couplings) {
    if (j != 1 && j != -1) throw std::invalid_argument("TreeSpec: couplings must be +1 or -1");
  }
  // The vertex-hyperedge incidence graph is a forest iff every hyperedge
  // joins q distinct components.
  detail::DisjointSets sets(t.num_vertices);
  int merges = 0;
  for (const auto& e : t.hyperedges) {
    if (static_cast<int>(e.size()) != t.q) throw std::invalid_argument("TreeSpec: hyperedge arity differs from q");
    for (int v : e) {
      if (v < 0 || v >= t.num_vertices) throw std::invalid_argument("TreeSpec: vertex out of range");
    }
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (!sets.unite(e[0], e[i])) throw std::invalid_argument("TreeSpec: hypergraph contains a cycle");
      ++merges;
    }
  }
  if (merges != t.num_vertices - 1) throw std::invalid_argument("TreeSpec: hypergraph is disconnected");
}

}  // namespace qaoa_girth
