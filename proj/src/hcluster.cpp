#include "leafclust/hcluster.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "leafclust/error.hpp"
#include "leafclust/numfmt.hpp"

namespace leafclust {

Linkage parse_linkage(std::string_view name) {
  if (name == "complete") return Linkage::kComplete;
  if (name == "single") return Linkage::kSingle;
  if (name == "average") return Linkage::kAverage;
  throw InputError("unknown linkage '" + std::string(name) + "'");
}

std::string_view linkage_name(Linkage linkage) {
  switch (linkage) {
    case Linkage::kComplete: return "complete";
    case Linkage::kSingle: return "single";
    case Linkage::kAverage: return "average";
  }
  return "unknown";
}

void Dendrogram::validate() const {
  const std::size_t m = labels.size();
  if (m == 0) throw InputError("dendrogram has no leaves");
  if (merges.size() != m - 1) throw InputError("dendrogram must have m-1 merges");
  std::vector<std::size_t> sizes(2 * m - 1, 1);
  std::vector<bool> used(2 * m - 1, false);
  for (std::size_t i = 0; i < merges.size(); ++i) {
    const Merge& merge = merges[i];
    const std::size_t node = m + i;
    for (std::size_t child : {merge.left, merge.right}) {
      if (child >= node || used[child]) throw InputError("dendrogram child id invalid or reused");
      used[child] = true;
    }
    if (merge.left == merge.right) throw InputError("dendrogram merges a node with itself");
    if (!std::isfinite(merge.height) || merge.height < 0.0) {
      throw InputError("dendrogram merge height negative or not finite");
    }
    sizes[node] = sizes[merge.left] + sizes[merge.right];
    if (merge.size != sizes[node]) throw InputError("dendrogram merge size mismatch");
  }
}

Dendrogram agglomerate(const DistanceMatrix& dm, Linkage linkage) {
  const std::size_t m = dm.size();
  const std::size_t nodes = 2 * m - 1;
  // Cluster-to-cluster distances indexed by node id, updated by the
  // Lance-Williams recurrence of the chosen linkage.
  std::vector<double> dist(nodes * nodes, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) dist[i * nodes + k] = dm(i, k);
  }
  std::vector<std::size_t> size(nodes, 1);
  std::vector<std::size_t> active(m);
  std::iota(active.begin(), active.end(), std::size_t{0});

  Dendrogram dend{dm.labels(), {}};
  dend.merges.reserve(m - 1);
  for (std::size_t step = 0; step + 1 < m; ++step) {
    // `active` stays sorted, so the first strict minimum is the
    // lexicographically smallest (id, id) pair.
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const double d = dist[active[x] * nodes + active[y]];
        if (d < best) {
          best = d;
          best_a = x;
          best_b = y;
        }
      }
    }
    const std::size_t a = active[best_a];
    const std::size_t b = active[best_b];
    const std::size_t node = m + step;
    size[node] = size[a] + size[b];
    dend.merges.push_back({a, b, best, size[node]});

    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_a));
    for (std::size_t c : active) {
      const double da = dist[a * nodes + c];
      const double db = dist[b * nodes + c];
      double merged = 0.0;
      switch (linkage) {
        case Linkage::kComplete: merged = std::max(da, db); break;
        case Linkage::kSingle: merged = std::min(da, db); break;
        case Linkage::kAverage:
          merged = (static_cast<double>(size[a]) * da + static_cast<double>(size[b]) * db) /
                   static_cast<double>(size[node]);
          break;
      }
      dist[node * nodes + c] = merged;
      dist[c * nodes + node] = merged;
    }
    active.push_back(node);
  }
  return dend;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Smallest leaf index under every node.
std::vector<std::size_t> subtree_min_leaf(const Dendrogram& dend) {
  const std::size_t m = dend.leaves();
  std::vector<std::size_t> min_leaf(2 * m - 1);
  std::iota(min_leaf.begin(), min_leaf.begin() + static_cast<std::ptrdiff_t>(m), std::size_t{0});
  for (std::size_t i = 0; i < dend.merges.size(); ++i) {
    min_leaf[m + i] = std::min(min_leaf[dend.merges[i].left], min_leaf[dend.merges[i].right]);
  }
  return min_leaf;
}

std::pair<std::size_t, std::size_t> ordered_children(const Merge& merge,
                                                     const std::vector<std::size_t>& min_leaf) {
  if (min_leaf[merge.left] <= min_leaf[merge.right]) return {merge.left, merge.right};
  return {merge.right, merge.left};
}

bool needs_quotes(const std::string& label) {
  if (label.empty()) return true;
  return label.find_first_of(" \t\n()[]':;,") != std::string::npos;
}

std::string newick_label(const std::string& label) {
  if (!needs_quotes(label)) return label;
  std::string out = "'";
  for (char ch : label) {
    if (ch == '\'') out += '\'';
    out += ch;
  }
  out += '\'';
  return out;
}

}  // namespace

std::vector<std::size_t> cut(const Dendrogram& dend, std::size_t k) {
  const std::size_t m = dend.leaves();
  if (k < 1 || k > m) {
    throw InputError("cut: k must be in [1, " + std::to_string(m) + "], got " + std::to_string(k));
  }
  std::vector<std::size_t> parent(2 * m - 1);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const std::size_t kept = m - k;
  for (std::size_t i = 0; i < kept; ++i) {
    const Merge& merge = dend.merges[i];
    parent[find_root(parent, merge.left)] = m + i;
    parent[find_root(parent, merge.right)] = m + i;
  }
  std::map<std::size_t, std::size_t> cluster_of_root;
  std::vector<std::size_t> assignment(m);
  for (std::size_t leaf = 0; leaf < m; ++leaf) {
    const std::size_t root = find_root(parent, leaf);
    auto [it, inserted] = cluster_of_root.try_emplace(root, cluster_of_root.size());
    assignment[leaf] = it->second;
  }
  return assignment;
}

std::vector<std::size_t> leaf_order(const Dendrogram& dend) {
  const std::size_t m = dend.leaves();
  const auto min_leaf = subtree_min_leaf(dend);
  std::vector<std::size_t> order;
  order.reserve(m);
  std::vector<std::size_t> stack{2 * m - 2};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (node < m) {
      order.push_back(node);
      continue;
    }
    const auto [first, second] = ordered_children(dend.merges[node - m], min_leaf);
    stack.push_back(second);
    stack.push_back(first);
  }
  return order;
}

std::string to_newick(const Dendrogram& dend) {
  const std::size_t m = dend.leaves();
  if (m == 1) return newick_label(dend.labels[0]) + ";";
  const auto min_leaf = subtree_min_leaf(dend);
  auto height = [&](std::size_t node) { return node < m ? 0.0 : dend.merges[node - m].height; };

  std::string out;
  std::function<void(std::size_t)> emit = [&](std::size_t node) {
    if (node < m) {
      out += newick_label(dend.labels[node]);
      return;
    }
    const auto [first, second] = ordered_children(dend.merges[node - m], min_leaf);
    out += '(';
    emit(first);
    out += ':' + format_shortest(height(node) - height(first)) + ',';
    emit(second);
    out += ':' + format_shortest(height(node) - height(second)) + ')';
  };
  emit(2 * m - 2);
  out += ';';
  return out;
}

double adjusted_rand_index(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) throw InputError("adjusted_rand_index: labelings differ in length");
  const auto pairs = [](double n) { return n * (n - 1.0) / 2.0; };

  std::map<std::pair<std::size_t, std::size_t>, double> table;
  std::map<std::size_t, double> rows;
  std::map<std::size_t, double> cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double index = 0.0;
  for (const auto& [cell, count] : table) index += pairs(count);
  double row_sum = 0.0;
  for (const auto& [label, count] : rows) row_sum += pairs(count);
  double col_sum = 0.0;
  for (const auto& [label, count] : cols) col_sum += pairs(count);

  const double total = pairs(static_cast<double>(a.size()));
  const double expected = total > 0.0 ? row_sum * col_sum / total : 0.0;
  const double max_index = 0.5 * (row_sum + col_sum);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace leafclust
