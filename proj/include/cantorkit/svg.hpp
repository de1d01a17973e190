#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cantorkit/cantorset.hpp"
#include "cantorkit/thickness.hpp"

namespace cantorkit {

enum class SvgAnnotation { Gaps, Bridges };

inline SvgAnnotation parse_annotation(const std::string& s) {
  if (s == "gaps") return SvgAnnotation::Gaps;
  if (s == "bridges") return SvgAnnotation::Bridges;
  throw std::invalid_argument("annotate: expected \"gaps\" or \"bridges\", got \"" + s + "\"");
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace detail

/// Depth-k cover as bars, plus "(" ")" markers over each gap or one row per bridge labelled C.
/// Exact endpoints ride along in data-lo / data-hi; pixel positions are only for display.
inline std::string render_svg(const CantorPresentation& set, std::size_t k, SvgAnnotation annotate) {
  if (k == 0 && annotate == SvgAnnotation::Bridges) throw std::invalid_argument("bridges need depth >= 1");
  constexpr double width = 800;
  constexpr double margin = 40;
  const Interval hull = convex_hull(set);
  const IntervalUnion cover = depth_cover(set, k);
  const auto gaps = k == 0 ? std::vector<GapRecord>{} : extract_gaps(set, k);
  const double span = hull.length().to_double();
  auto px = [&](const Rational& v) { return margin + (v - hull.lo).to_double() / span * (width - 2 * margin); };

  const double bar_y = 40;
  const std::size_t rows = annotate == SvgAnnotation::Bridges ? 2 * gaps.size() : 0;
  const double height = bar_y + 60 + 18.0 * static_cast<double>(rows);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\""
      << detail::fmt(height) << "\" viewBox=\"0 0 " << width << ' ' << detail::fmt(height) << "\">\n"
      << "<title>depth-" << k << " cover, " << cover.size() << " intervals</title>\n"
      << "<style>.bar{fill:#222}.gap text{font:14px monospace;fill:#c33}.bridge line{stroke:#36c;stroke-width:2}"
         ".bridge text{font:12px monospace;fill:#36c}</style>\n";
  for (const auto& iv : cover.intervals()) {
    out << "<rect class=\"bar\" x=\"" << detail::fmt(px(iv.lo)) << "\" y=\"" << bar_y << "\" width=\""
        << detail::fmt(px(iv.hi) - px(iv.lo)) << "\" height=\"12\" data-lo=\"" << iv.lo.str() << "\" data-hi=\""
        << iv.hi.str() << "\"/>\n";
  }
  if (annotate == SvgAnnotation::Gaps) {
    for (const auto& g : gaps) {
      out << "<g class=\"gap\" data-lo=\"" << g.lo.str() << "\" data-hi=\"" << g.hi.str() << "\" data-birth=\""
          << g.birth_depth << "\">"
          << "<text x=\"" << detail::fmt(px(g.lo)) << "\" y=\"" << bar_y - 6 << "\">(</text>"
          << "<text x=\"" << detail::fmt(px(g.hi) - 5) << "\" y=\"" << bar_y - 6 << "\">)</text></g>\n";
    }
  } else {
    double y = bar_y + 40;
    for (const auto& g : gaps) {
      for (Side side : {Side::Left, Side::Right}) {
        const auto br = bridge_at(set, g, side, k);
        out << "<g class=\"bridge\" data-side=\"" << to_string(side) << "\" data-gap-lo=\"" << g.lo.str()
            << "\" data-gap-hi=\"" << g.hi.str() << "\" data-lo=\"" << br.bridge.lo.str() << "\" data-hi=\""
            << br.bridge.hi.str() << "\">"
            << "<line x1=\"" << detail::fmt(px(br.bridge.lo)) << "\" y1=\"" << y << "\" x2=\""
            << detail::fmt(px(br.bridge.hi)) << "\" y2=\"" << y << "\"/>"
            << "<text x=\"" << detail::fmt((px(br.bridge.lo) + px(br.bridge.hi)) / 2) << "\" y=\"" << y - 3
            << "\">C</text></g>\n";
        y += 18;
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cantorkit
