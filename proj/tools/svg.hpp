#pragma once

// Minimal SVG line/band renderer for sweep tables. Log axes, one colour per
// series, quartile band behind the median line. No external dependencies.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace womp::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> median;
  std::vector<double> lo;  // lower band edge (may be empty)
  std::vector<double> hi;  // upper band edge
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = true;
  bool log_y = true;
  int width = 760;
  int height = 520;
};

inline const char* series_color(size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[i % 8];
}

inline void render(const PlotSpec& spec, const std::vector<Series>& series,
                   const std::string& path) {
  const double ml = 70, mr = 20, mt = 40, mb = 55;
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;

  const auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  const auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const Series& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_x && s.x[i] <= 0) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      const double vals[] = {s.median[i], s.lo.empty() ? s.median[i] : s.lo[i],
                             s.hi.empty() ? s.median[i] : s.hi[i]};
      for (double v : vals) {
        if (spec.log_y && v <= 0) continue;
        if (!std::isfinite(ty(v))) continue;
        y0 = std::min(y0, ty(v));
        y1 = std::max(y1, ty(v));
      }
    }
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  const double xpad = 0.02 * (x1 - x0), ypad = 0.05 * (y1 - y0);
  x0 -= xpad;
  x1 += xpad;
  y0 -= ypad;
  y1 += ypad;

  const auto px = [&](double v) { return ml + (tx(v) - x0) / (x1 - x0) * pw; };
  const auto py = [&](double v) { return mt + ph - (ty(v) - y0) / (y1 - y0) * ph; };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << spec.width << "' height='"
      << spec.height << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << spec.width / 2 << "' y='22' text-anchor='middle' font-size='15' "
      << "font-family='sans-serif'>" << spec.title << "</text>\n";

  // frame and decade ticks
  out << "<rect x='" << ml << "' y='" << mt << "' width='" << pw << "' height='" << ph
      << "' fill='none' stroke='#333'/>\n";
  const auto ticks = [](double lo, double hi) {
    std::vector<double> t;
    for (int e = static_cast<int>(std::floor(lo)); e <= static_cast<int>(std::ceil(hi)); ++e) {
      if (e >= lo - 1e-9 && e <= hi + 1e-9) t.push_back(e);
    }
    if (t.size() < 2) {
      t = {lo, (lo + hi) / 2, hi};
    }
    return t;
  };
  for (double t : ticks(x0, x1)) {
    const double x = ml + (t - x0) / (x1 - x0) * pw;
    out << "<line x1='" << x << "' y1='" << mt + ph << "' x2='" << x << "' y2='" << mt + ph + 5
        << "' stroke='#333'/>\n";
    out << "<text x='" << x << "' y='" << mt + ph + 20 << "' text-anchor='middle' font-size='11' "
        << "font-family='sans-serif'>" << (spec.log_x ? "1e" + std::to_string((int)t)
                                                      : std::to_string((int)std::lround(t)))
        << "</text>\n";
  }
  for (double t : ticks(y0, y1)) {
    const double y = mt + ph - (t - y0) / (y1 - y0) * ph;
    out << "<line x1='" << ml - 5 << "' y1='" << y << "' x2='" << ml << "' y2='" << y
        << "' stroke='#333'/>\n";
    out << "<text x='" << ml - 8 << "' y='" << y + 4 << "' text-anchor='end' font-size='11' "
        << "font-family='sans-serif'>" << (spec.log_y ? "1e" + std::to_string((int)t)
                                                      : std::to_string((int)std::lround(t)))
        << "</text>\n";
  }
  out << "<text x='" << ml + pw / 2 << "' y='" << spec.height - 12
      << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << spec.x_label
      << "</text>\n";
  out << "<text x='16' y='" << mt + ph / 2
      << "' text-anchor='middle' font-size='13' font-family='sans-serif' transform='rotate(-90 16 "
      << mt + ph / 2 << ")'>" << spec.y_label << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = series_color(si);
    if (!s.lo.empty()) {
      std::ostringstream poly;
      for (size_t i = 0; i < s.x.size(); ++i) {
        if ((spec.log_y && s.hi[i] <= 0) || (spec.log_x && s.x[i] <= 0)) continue;
        poly << px(s.x[i]) << ',' << py(s.hi[i]) << ' ';
      }
      for (size_t i = s.x.size(); i-- > 0;) {
        if ((spec.log_y && s.lo[i] <= 0) || (spec.log_x && s.x[i] <= 0)) continue;
        poly << px(s.x[i]) << ',' << py(s.lo[i]) << ' ';
      }
      out << "<polygon points='" << poly.str() << "' fill='" << color
          << "' fill-opacity='0.15' stroke='none'/>\n";
    }
    std::ostringstream line;
    for (size_t i = 0; i < s.x.size(); ++i) {
      if ((spec.log_y && s.median[i] <= 0) || (spec.log_x && s.x[i] <= 0)) continue;
      line << px(s.x[i]) << ',' << py(s.median[i]) << ' ';
    }
    out << "<polyline points='" << line.str() << "' fill='none' stroke='" << color
        << "' stroke-width='1.8'/>\n";
    out << "<text x='" << ml + pw - 8 << "' y='" << mt + 16 + 16 * si
        << "' text-anchor='end' font-size='12' font-family='sans-serif' fill='" << color << "'>"
        << s.label << "</text>\n";
  }
  out << "</svg>\n";

  std::ofstream file(path);
  file << out.str();
}

}  // namespace womp::svg
