#pragma once

// Independent reference computations used only by tests. None of these call
// the closed-form or merged-breakpoint paths they are checked against.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "leafclust/ccd.hpp"
#include "leafclust/hcluster.hpp"

namespace oracle {

using leafclust::kTwoPi;
using leafclust::StepDensity;

// Value of every panel midpoint, found by walking the breakpoints in step
// with the panels.
inline std::vector<double> sample_midpoints(const StepDensity& d, std::size_t panels) {
  std::vector<double> out(panels);
  const auto& b = d.breakpoints();
  const auto& h = d.heights();
  std::size_t k = 0;
  const double width = kTwoPi / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * width;
    while (k + 1 < h.size() && b[k + 1] < t) ++k;
    out[i] = h[k];
  }
  return out;
}

/// Midpoint-rule alpha(p), beta(p) for p = 1..order.
inline std::vector<std::pair<double, double>> midpoint_moments(const StepDensity& d, int order,
                                                               std::size_t panels = 1'000'000) {
  const auto values = sample_midpoints(d, panels);
  const double width = kTwoPi / static_cast<double>(panels);
  std::vector<std::pair<double, double>> sums(static_cast<std::size_t>(order), {0.0, 0.0});
  for (std::size_t i = 0; i < panels; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * width;
    const std::complex<double> base(std::cos(t), std::sin(t));
    std::complex<double> power = base;
    for (int p = 0; p < order; ++p) {
      sums[static_cast<std::size_t>(p)].first += values[i] * power.real();
      sums[static_cast<std::size_t>(p)].second += values[i] * power.imag();
      power *= base;
    }
  }
  for (auto& [a, b] : sums) {
    a *= width;
    b *= width;
  }
  return sums;
}

struct GridDistances {
  double l1 = 0.0;
  double sup = 0.0;
  double hellinger_sq = 0.0;
};

inline GridDistances grid_distances(const StepDensity& f, const StepDensity& g,
                                    std::size_t panels = 1'000'000) {
  const auto fv = sample_midpoints(f, panels);
  const auto gv = sample_midpoints(g, panels);
  const double width = kTwoPi / static_cast<double>(panels);
  GridDistances out;
  for (std::size_t i = 0; i < panels; ++i) {
    const double diff = std::abs(fv[i] - gv[i]);
    const double root = std::sqrt(fv[i]) - std::sqrt(gv[i]);
    out.l1 += diff * width;
    out.sup = std::max(out.sup, diff);
    out.hellinger_sq += root * root * width;
  }
  return out;
}

/// One merge of the brute-force reference: the merged leaf set and its height.
struct BruteMerge {
  std::vector<std::size_t> leaves;
  double height;
};

/// O(m^3)-per-step agglomeration recomputing every linkage from member lists.
inline std::vector<BruteMerge> brute_force_agglomerate(const std::vector<std::vector<double>>& dm,
                                                       leafclust::Linkage linkage) {
  const std::size_t m = dm.size();
  std::map<std::size_t, std::vector<std::size_t>> active;  // node id -> leaves
  for (std::size_t i = 0; i < m; ++i) active[i] = {i};
  std::vector<BruteMerge> merges;
  std::size_t next_id = m;
  while (active.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0;
    for (auto a = active.begin(); a != active.end(); ++a) {
      for (auto b = std::next(a); b != active.end(); ++b) {
        double link = 0.0;
        if (linkage == leafclust::Linkage::kSingle) link = std::numeric_limits<double>::infinity();
        double total = 0.0;
        for (std::size_t x : a->second) {
          for (std::size_t y : b->second) {
            total += dm[x][y];
            if (linkage == leafclust::Linkage::kComplete) link = std::max(link, dm[x][y]);
            if (linkage == leafclust::Linkage::kSingle) link = std::min(link, dm[x][y]);
          }
        }
        if (linkage == leafclust::Linkage::kAverage) {
          link = total / static_cast<double>(a->second.size() * b->second.size());
        }
        if (link < best) {
          best = link;
          best_a = a->first;
          best_b = b->first;
        }
      }
    }
    std::vector<std::size_t> merged = active[best_a];
    merged.insert(merged.end(), active[best_b].begin(), active[best_b].end());
    std::sort(merged.begin(), merged.end());
    active.erase(best_a);
    active.erase(best_b);
    active[next_id++] = merged;
    merges.push_back({merged, best});
  }
  return merges;
}

/// Leaf sets and heights of a Dendrogram, in merge order.
inline std::vector<BruteMerge> dendrogram_clusters(const leafclust::Dendrogram& dend) {
  const std::size_t m = dend.leaves();
  std::vector<std::vector<std::size_t>> members(2 * m - 1);
  for (std::size_t i = 0; i < m; ++i) members[i] = {i};
  std::vector<BruteMerge> out;
  for (std::size_t i = 0; i < dend.merges.size(); ++i) {
    auto merged = members[dend.merges[i].left];
    merged.insert(merged.end(), members[dend.merges[i].right].begin(),
                  members[dend.merges[i].right].end());
    std::sort(merged.begin(), merged.end());
    members[m + i] = merged;
    out.push_back({merged, dend.merges[i].height});
  }
  return out;
}

/// Minimal Newick reader: labels (bare or single-quoted) and branch lengths.
/// Returns every internal cluster as (sorted leaf labels, height above leaves).
class NewickReader {
 public:
  struct Cluster {
    std::vector<std::string> leaves;
    double height;
  };

  explicit NewickReader(std::string text) : s_(std::move(text)) {}

  std::vector<Cluster> parse() {
    pos_ = 0;
    clusters_.clear();
    Node root = node();
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ';') throw std::runtime_error("newick: missing ';'");
    (void)root;
    return clusters_;
  }

 private:
  struct Node {
    std::vector<std::string> leaves;
    double height;  // distance from node to its leaves
  };

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string label() {
    std::string out;
    if (pos_ < s_.size() && s_[pos_] == '\'') {
      ++pos_;
      while (pos_ < s_.size()) {
        if (s_[pos_] == '\'') {
          if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\'') {
            out += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          return out;
        }
        out += s_[pos_++];
      }
      throw std::runtime_error("newick: unterminated quote");
    }
    while (pos_ < s_.size() && std::string("(),:;").find(s_[pos_]) == std::string::npos) out += s_[pos_++];
    return out;
  }

  double branch_length() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ':') throw std::runtime_error("newick: missing branch length");
    ++pos_;
    std::size_t used = 0;
    const double v = std::stod(s_.substr(pos_), &used);
    pos_ += used;
    return v;
  }

  Node node() {
    skip_ws();
    if (s_[pos_] != '(') return {{label()}, 0.0};
    ++pos_;
    std::vector<std::pair<Node, double>> children;
    while (true) {
      Node child = node();
      const double len = branch_length();
      children.emplace_back(std::move(child), len);
      skip_ws();
      if (s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (s_[pos_] == ')') {
        ++pos_;
        break;
      }
      throw std::runtime_error("newick: unexpected character");
    }
    Node out{{}, children.front().first.height + children.front().second};
    for (auto& [child, len] : children) {
      out.leaves.insert(out.leaves.end(), child.leaves.begin(), child.leaves.end());
    }
    std::sort(out.leaves.begin(), out.leaves.end());
    clusters_.push_back({out.leaves, out.height});
    // Internal label, if any.
    label();
    return out;
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::vector<Cluster> clusters_;
};

/// Random valid CCD values: length in [min_len, max_len], values in (0, max_value].
inline std::vector<double> random_ccd(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                                      double max_value = 100.0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_real_distribution<double> value(0.0, max_value);
  std::vector<double> y(len(rng));
  for (auto& v : y) {
    do {
      v = value(rng);
    } while (v <= 0.0);
  }
  return y;
}

/// Lengths that divide 10^6, so CCD breakpoints coincide with quadrature panel edges.
inline std::vector<std::size_t> aligned_lengths() {
  std::vector<std::size_t> out;
  for (std::size_t n = 2; n <= 5000; ++n) {
    if (1'000'000 % n == 0) out.push_back(n);
  }
  return out;
}

}  // namespace oracle
