#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bcs/geometry.hpp"
#include "bcs/solution.hpp"

namespace bcs {

struct SvgOptions {
  int width = 900;
  int height = 700;
  bool log_scale_y = false;  // compress hugely tall instances
};

namespace detail {

inline std::string fmt2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline double svg_y_value(const Rational& y, bool log_scale) {
  const double v = to_double(y);
  if (!log_scale) return v;
  return v >= 0 ? std::log10(1.0 + v) : -std::log10(1.0 - v);
}

}  // namespace detail

// Deterministic standalone SVG: every point as a dot, solution sets colored
// with their hull outlined, unused points gray.
inline std::string render_svg(const PointSet& ps, const Solution* sol = nullptr,
                              const SvgOptions& opt = SvgOptions{}) {
  static const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                   "#ff7f00", "#a65628", "#f781bf", "#17becf",
                                   "#b2df8a", "#fb9a99", "#cab2d6", "#fdbf6f"};
  const int palette_size = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));
  const double margin = 50.0;

  const int n = ps.size();
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = to_double(ps[i].x);
    ys[static_cast<std::size_t>(i)] = detail::svg_y_value(ps[i].y, opt.log_scale_y);
    if (i == 0) {
      min_x = max_x = xs[0];
      min_y = max_y = ys[0];
    } else {
      min_x = std::min(min_x, xs[static_cast<std::size_t>(i)]);
      max_x = std::max(max_x, xs[static_cast<std::size_t>(i)]);
      min_y = std::min(min_y, ys[static_cast<std::size_t>(i)]);
      max_y = std::max(max_y, ys[static_cast<std::size_t>(i)]);
    }
  }
  const double span_x = max_x - min_x > 1e-9 ? max_x - min_x : 1.0;
  const double span_y = max_y - min_y > 1e-9 ? max_y - min_y : 1.0;
  const double scale = std::min((opt.width - 2 * margin) / span_x,
                                (opt.height - 2 * margin) / span_y);
  auto px = [&](int i) { return margin + (xs[static_cast<std::size_t>(i)] - min_x) * scale; };
  auto py = [&](int i) { return opt.height - margin - (ys[static_cast<std::size_t>(i)] - min_y) * scale; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opt.width) + "\" height=\"" + std::to_string(opt.height) +
         "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
         std::to_string(opt.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::vector<int> color_of(static_cast<std::size_t>(n), -1);
  if (sol != nullptr) {
    for (std::size_t s = 0; s < sol->sets.size(); ++s) {
      const char* color = kPalette[s % static_cast<std::size_t>(palette_size)];
      for (int idx : sol->sets[s]) color_of[static_cast<std::size_t>(idx)] = static_cast<int>(s);
      const auto& set = sol->sets[s];
      if (set.size() >= 2) {
        const std::vector<int> hull = convex_hull(ps, set);
        std::string pts_attr;
        for (int h : hull) {
          if (!pts_attr.empty()) pts_attr += " ";
          pts_attr += detail::fmt2(px(h)) + "," + detail::fmt2(py(h));
        }
        svg += std::string("<polygon points=\"") + pts_attr + "\" fill=\"" + color +
               "\" fill-opacity=\"0.15\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const int c = color_of[static_cast<std::size_t>(i)];
    const char* fill = c >= 0 ? kPalette[static_cast<std::size_t>(c) % static_cast<std::size_t>(palette_size)] : "#888888";
    svg += std::string("<circle cx=\"") + detail::fmt2(px(i)) + "\" cy=\"" +
           detail::fmt2(py(i)) + "\" r=\"4\" fill=\"" + fill + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace bcs
