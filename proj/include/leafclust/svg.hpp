#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "leafclust/ccd.hpp"
#include "leafclust/hcluster.hpp"

namespace leafclust {

/// One step curve for a density plot. `breakpoints` has one more entry than `heights`.
struct StepSeries {
  std::string label;
  std::string group;
  std::vector<double> breakpoints;
  std::vector<double> heights;
};

StepSeries series_from_density(const StepDensity& d, std::string group = {});
/// Raw trace drawn with c = 1, i.e. heights are the CCD values themselves.
StepSeries series_from_raw(const CcdSequence& seq, std::string group = {});

// All plots draw geometry in data coordinates inside a transformed <g>, so
// the attribute values are the data values (angles, heights, u/v) verbatim.

/// Step plot over (0, 2*pi]; one <polyline class="density"> per series, style per group.
std::string svg_densities(const std::vector<StepSeries>& series, const std::string& title);
void plot_densities(const std::vector<StepSeries>& series, const std::string& title,
                    const std::filesystem::path& path);

/// One closed <polygon class="leaf"> per outline, each in its own grid cell.
std::string svg_leaves(const std::vector<LeafOutline>& outlines, std::size_t columns,
                       const std::string& title);
void plot_leaves(const std::vector<LeafOutline>& outlines, std::size_t columns,
                 const std::string& title, const std::filesystem::path& path);

/// Rectangular dendrogram. Horizontal bars are <line class="merge"> with
/// y1 == y2 == merge height; leaves sit at x = 0..m-1 in leaf_order().
std::string svg_dendrogram(const Dendrogram& dend, const std::string& title);
void plot_dendrogram(const Dendrogram& dend, const std::string& title,
                     const std::filesystem::path& path);

std::string xml_escape(const std::string& text);

}  // namespace leafclust
