#include "leafclust/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

#include "leafclust/dataset.hpp"
#include "leafclust/numfmt.hpp"

namespace leafclust {
namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};
constexpr std::array<const char*, 4> kDashes = {"none", "8,4", "2,3", "8,3,2,3"};

std::string num(double x) { return format_shortest(x); }

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string svg_open(double width, double height, const std::string& title) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"white\"/>\n";
  out += "<text class=\"title\" x=\"" + num(width / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + xml_escape(title) + "</text>\n";
  return out;
}

std::string line(double x1, double y1, double x2, double y2, const std::string& extra = {}) {
  return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
         num(y2) + "\"" + extra + "/>\n";
}

std::string text(double x, double y, const std::string& body, const std::string& extra = {}) {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\"" + extra + ">" + xml_escape(body) +
         "</text>\n";
}

std::string data_transform(double x0, double y0, double sx, double sy) {
  return "translate(" + num(x0) + "," + num(y0) + ") scale(" + num(sx) + "," + num(-sy) + ")";
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

StepSeries series_from_density(const StepDensity& d, std::string group) {
  return {d.source_id(), std::move(group), d.breakpoints(), d.heights()};
}

StepSeries series_from_raw(const CcdSequence& seq, std::string group) {
  StepSeries series{seq.id(), std::move(group), {0.0}, seq.values()};
  for (std::size_t j = 1; j <= seq.size(); ++j) series.breakpoints.push_back(seq.grid_angle(j));
  return series;
}

std::string svg_densities(const std::vector<StepSeries>& series, const std::string& title) {
  constexpr double kWidth = 820, kHeight = 480;
  constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;

  double ymax = 0.0;
  for (const auto& s : series) {
    for (double h : s.heights) ymax = std::max(ymax, h);
  }
  ymax = ymax > 0.0 ? ymax * 1.05 : 1.0;

  std::vector<std::string> groups;
  std::map<std::string, std::size_t> style_of;
  for (const auto& s : series) {
    if (style_of.try_emplace(s.group, groups.size()).second) groups.push_back(s.group);
  }

  std::string out = svg_open(kWidth, kHeight, title);
  const double x_axis = kTop + ph;
  out += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  out += line(kLeft, x_axis, kLeft + pw, x_axis);
  out += line(kLeft, kTop, kLeft, x_axis);
  const std::array<const char*, 5> angle_labels = {"0", "π/2", "π", "3π/2", "2π"};
  for (int i = 0; i <= 4; ++i) {
    const double x = kLeft + pw * i / 4.0;
    out += line(x, x_axis, x, x_axis + 5);
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = x_axis - ph * i / 4.0;
    out += line(kLeft - 5, y, kLeft, y);
  }
  out += "</g>\n<g class=\"tick-labels\">\n";
  for (int i = 0; i <= 4; ++i) {
    out += text(kLeft + pw * i / 4.0, x_axis + 18, angle_labels[static_cast<std::size_t>(i)],
                " text-anchor=\"middle\"");
    out += text(kLeft - 8, x_axis - ph * i / 4.0 + 4, tick_label(ymax * i / 4.0),
                " text-anchor=\"end\"");
  }
  out += "</g>\n";

  out += "<g class=\"data\" transform=\"" + data_transform(kLeft, x_axis, pw / kTwoPi, ph / ymax) +
         "\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (const auto& s : series) {
    const std::size_t style = style_of.at(s.group);
    std::string points;
    for (std::size_t k = 0; k < s.heights.size(); ++k) {
      if (k > 0) points += ' ';
      points += num(s.breakpoints[k]) + ',' + num(s.heights[k]) + ' ' + num(s.breakpoints[k + 1]) +
                ',' + num(s.heights[k]);
    }
    out += "<polyline class=\"density\" data-id=\"" + xml_escape(s.label) + "\" stroke=\"" +
           kPalette[style % kPalette.size()] + "\" stroke-dasharray=\"" +
           kDashes[style % kDashes.size()] +
           "\" vector-effect=\"non-scaling-stroke\" points=\"" + points + "\"/>\n";
  }
  out += "</g>\n";

  if (groups.size() > 1 || (groups.size() == 1 && !groups[0].empty())) {
    out += "<g class=\"legend\">\n";
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const double y = kTop + 10 + 20.0 * static_cast<double>(g);
      const double x = kLeft + pw + 20;
      out += line(x, y, x + 30, y,
                  std::string(" stroke=\"") + kPalette[g % kPalette.size()] +
                      "\" stroke-width=\"2\" stroke-dasharray=\"" + kDashes[g % kDashes.size()] + "\"");
      out += text(x + 38, y + 4, groups[g]);
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

void plot_densities(const std::vector<StepSeries>& series, const std::string& title,
                    const std::filesystem::path& path) {
  write_text_file(path, svg_densities(series, title));
}

std::string svg_leaves(const std::vector<LeafOutline>& outlines, std::size_t columns,
                       const std::string& title) {
  constexpr double kCell = 200, kHeader = 36, kRadius = 80;
  columns = std::max<std::size_t>(1, std::min(columns, std::max<std::size_t>(1, outlines.size())));
  const std::size_t rows = (outlines.size() + columns - 1) / columns;
  const double width = kCell * static_cast<double>(columns);
  const double height = kHeader + kCell * static_cast<double>(std::max<std::size_t>(rows, 1));

  std::string out = svg_open(width, height, title);
  for (std::size_t i = 0; i < outlines.size(); ++i) {
    const auto& outline = outlines[i];
    const double x0 = kCell * static_cast<double>(i % columns);
    const double y0 = kHeader + kCell * static_cast<double>(i / columns);
    const double cx = x0 + kCell / 2;
    const double cy = y0 + kCell / 2 + 8;

    double extent = 0.0;
    for (const auto& p : outline.points) extent = std::max({extent, std::abs(p.u), std::abs(p.v)});
    const double scale = extent > 0.0 ? kRadius / extent : 1.0;

    out += "<g class=\"cell\">\n";
    out += "<rect x=\"" + num(x0 + 2) + "\" y=\"" + num(y0 + 2) + "\" width=\"" + num(kCell - 4) +
           "\" height=\"" + num(kCell - 4) + "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    out += text(cx, y0 + 18, outline.id, " class=\"cell-title\" text-anchor=\"middle\"");
    out += line(cx - kRadius, cy, cx + kRadius, cy, " stroke=\"#dddddd\"");
    out += line(cx, cy - kRadius, cx, cy + kRadius, " stroke=\"#dddddd\"");
    std::string points;
    for (std::size_t j = 0; j < outline.points.size(); ++j) {
      if (j > 0) points += ' ';
      points += num(outline.points[j].u) + ',' + num(outline.points[j].v);
    }
    out += "<g transform=\"" + data_transform(cx, cy, scale, scale) + "\">\n";
    out += "<polygon class=\"leaf\" data-id=\"" + xml_escape(outline.id) +
           "\" fill=\"#9ccc65\" fill-opacity=\"0.5\" stroke=\"#33691e\" stroke-width=\"1\" "
           "vector-effect=\"non-scaling-stroke\" points=\"" +
           points + "\"/>\n";
    out += "</g>\n</g>\n";
  }
  out += "</svg>\n";
  return out;
}

void plot_leaves(const std::vector<LeafOutline>& outlines, std::size_t columns,
                 const std::string& title, const std::filesystem::path& path) {
  write_text_file(path, svg_leaves(outlines, columns, title));
}

std::string svg_dendrogram(const Dendrogram& dend, const std::string& title) {
  const std::size_t m = dend.leaves();
  const double width = std::max(420.0, 60.0 * static_cast<double>(m) + 120.0);
  constexpr double kHeight = 460, kLeft = 80, kRight = 40, kTop = 40, kBottom = 120;
  const double pw = width - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;

  const auto order = leaf_order(dend);
  std::vector<double> x(2 * m - 1, 0.0);
  std::vector<double> y(2 * m - 1, 0.0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) x[order[pos]] = static_cast<double>(pos);
  double top = 0.0;
  for (std::size_t i = 0; i < dend.merges.size(); ++i) {
    const Merge& merge = dend.merges[i];
    x[m + i] = 0.5 * (x[merge.left] + x[merge.right]);
    y[m + i] = merge.height;
    top = std::max(top, merge.height);
  }
  const double ymax = top > 0.0 ? top : 1.0;
  const double pad = 0.5;
  const double span = static_cast<double>(m > 1 ? m - 1 : 1) + 2 * pad;
  const double sx = pw / span;
  const double sy = ph / ymax;
  const double x_axis = kTop + ph;

  std::string out = svg_open(width, kHeight, title);
  out += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  out += line(kLeft, kTop, kLeft, x_axis);
  for (int i = 0; i <= 4; ++i) out += line(kLeft - 5, x_axis - ph * i / 4.0, kLeft, x_axis - ph * i / 4.0);
  out += "</g>\n<g class=\"tick-labels\">\n";
  for (int i = 0; i <= 4; ++i) {
    out += text(kLeft - 8, x_axis - ph * i / 4.0 + 4, tick_label(ymax * i / 4.0), " text-anchor=\"end\"");
  }
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const double lx = kLeft + sx * (static_cast<double>(pos) + pad);
    out += "<text class=\"leaf-label\" x=\"" + num(lx) + "\" y=\"" + num(x_axis + 12) +
           "\" text-anchor=\"end\" transform=\"rotate(-60," + num(lx) + "," + num(x_axis + 12) +
           ")\">" + xml_escape(dend.labels[order[pos]]) + "</text>\n";
  }
  out += "</g>\n";

  out += "<g class=\"tree\" transform=\"" + data_transform(kLeft + sx * pad, x_axis, sx, sy) +
         "\" stroke=\"black\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\">\n";
  for (std::size_t i = 0; i < dend.merges.size(); ++i) {
    const Merge& merge = dend.merges[i];
    const double h = merge.height;
    const std::string stem = " class=\"stem\" vector-effect=\"non-scaling-stroke\"";
    out += line(x[merge.left], y[merge.left], x[merge.left], h, stem);
    out += line(x[merge.right], y[merge.right], x[merge.right], h, stem);
    out += line(std::min(x[merge.left], x[merge.right]), h, std::max(x[merge.left], x[merge.right]), h,
                " class=\"merge\" vector-effect=\"non-scaling-stroke\"");
  }
  out += "</g>\n</svg>\n";
  return out;
}

void plot_dendrogram(const Dendrogram& dend, const std::string& title,
                     const std::filesystem::path& path) {
  write_text_file(path, svg_dendrogram(dend, title));
}

}  // namespace leafclust
