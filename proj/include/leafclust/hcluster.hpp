#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "leafclust/distances.hpp"

namespace leafclust {

enum class Linkage { kComplete, kSingle, kAverage };

Linkage parse_linkage(std::string_view name);
std::string_view linkage_name(Linkage linkage);

struct Merge {
  std::size_t left;   // node id; leaves are 0..m-1, internal nodes m..2m-2
  std::size_t right;
  double height;
  std::size_t size;
};

struct Dendrogram {
  std::vector<std::string> labels;
  std::vector<Merge> merges;  // m-1 records in merge order; merge i creates node m+i

  std::size_t leaves() const { return labels.size(); }
  /// Throws InputError when the merge list is not a valid binary tree over the leaves.
  void validate() const;
};

/// Agglomerative clustering. Ties on the minimal linkage distance go to the
/// lexicographically smallest (smaller id, larger id) pair of active nodes.
Dendrogram agglomerate(const DistanceMatrix& dm, Linkage linkage);

/// Flat clustering into k groups by undoing the last k-1 merges. Clusters are
/// numbered 0..k-1 in order of their smallest leaf index.
std::vector<std::size_t> cut(const Dendrogram& dend, std::size_t k);

/// Leaf indices in display order: at every node the child whose subtree holds
/// the smaller leaf index comes first.
std::vector<std::size_t> leaf_order(const Dendrogram& dend);

/// Newick text with branch length = parent height - child height.
std::string to_newick(const Dendrogram& dend);

/// Chance-corrected agreement between two labelings of the same items.
double adjusted_rand_index(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

}  // namespace leafclust
