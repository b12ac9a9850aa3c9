#include "ym/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ym {

namespace {

constexpr int kWidth = 640, kHeight = 480;
constexpr int kLeft = 64, kRight = 24, kTop = 40, kBottom = 48;

const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string color_ramp(double t) {
  // Diverging blue -> white -> red.
  t = std::clamp(t, 0.0, 1.0);
  auto lerp = [](double a, double b, double s) { return a + (b - a) * s; };
  double r, g, b;
  if (t < 0.5) {
    double s = t / 0.5;
    r = lerp(59, 247, s);
    g = lerp(76, 247, s);
    b = lerp(192, 247, s);
  } else {
    double s = (t - 0.5) / 0.5;
    r = lerp(247, 180, s);
    g = lerp(247, 4, s);
    b = lerp(247, 38, s);
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(r + 0.5), int(g + 0.5), int(b + 0.5));
  return buf;
}

void open_svg(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"#ffffff\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-family=\"monospace\" font-size=\"14\" "
        "text-anchor=\"middle\">"
     << title << "</text>\n";
}

void axis_labels(std::ostringstream& os, const std::string& xlab, const std::string& ylab) {
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
     << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" << xlab
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << kHeight / 2
     << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 16 "
     << kHeight / 2 << ")\">" << ylab << "</text>\n";
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

}  // namespace

std::string svg_heatmap(const MomentsCsv& data, int comp, const std::string& title) {
  Range vr;
  for (const State& s : data.moments.values) vr.add(s[comp]);

  std::ostringstream os;
  open_svg(os, title);
  const double pw = double(kWidth - kLeft - kRight) / data.nx;
  const double ph = double(kHeight - kTop - kBottom) / data.nxi;
  for (int i = 0; i < data.nxi; ++i) {
    for (int j = 0; j < data.nx; ++j) {
      double t = (data.moments.at(i, j)[comp] - vr.lo) / vr.span();
      double x = kLeft + j * pw;
      // xi increases upward
      double y = kTop + (data.nxi - 1 - i) * ph;
      os << "<rect x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" width=\"" << f2(pw + 0.5)
         << "\" height=\"" << f2(ph + 0.5) << "\" fill=\"" << color_ramp(t) << "\"/>\n";
    }
  }
  os << "<text x=\"" << kLeft << "\" y=\"" << kTop - 6
     << "\" font-family=\"monospace\" font-size=\"11\">scale min=" << format_double(vr.lo)
     << " max=" << format_double(vr.hi) << "</text>\n";
  axis_labels(os, "x", "xi");
  os << "</svg>\n";
  return os.str();
}

std::string svg_line_overlay(const MomentsCsv& data, int comp, const std::string& title) {
  Range vr, xr;
  for (const State& s : data.moments.values) vr.add(s[comp]);
  for (double x : data.x) xr.add(x);

  std::ostringstream os;
  open_svg(os, title);
  const double w = kWidth - kLeft - kRight, h = kHeight - kTop - kBottom;
  for (int i = 0; i < data.nxi; ++i) {
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 10]
       << "\" stroke-width=\"1\" points=\"";
    for (int j = 0; j < data.nx; ++j) {
      double px = kLeft + (data.x[j] - xr.lo) / xr.span() * w;
      double py = kTop + h - (data.moments.at(i, j)[comp] - vr.lo) / vr.span() * h;
      os << f2(px) << "," << f2(py) << " ";
    }
    os << "\"/>\n";
  }
  os << "<text x=\"" << kLeft << "\" y=\"" << kTop - 6
     << "\" font-family=\"monospace\" font-size=\"11\">range min=" << format_double(vr.lo)
     << " max=" << format_double(vr.hi) << "</text>\n";
  axis_labels(os, "x", "u");
  os << "</svg>\n";
  return os.str();
}

std::string svg_support_scatter(const std::vector<SupportPoint>& pts, const std::string& title) {
  Range xr, ur, wr;
  for (const auto& p : pts) {
    xr.add(p.x);
    ur.add(p.u);
    wr.add(p.weight);
  }
  std::ostringstream os;
  open_svg(os, title);
  const double w = kWidth - kLeft - kRight, h = kHeight - kTop - kBottom;
  for (const auto& p : pts) {
    double px = kLeft + (p.x - xr.lo) / xr.span() * w;
    double py = kTop + h - (p.u - ur.lo) / ur.span() * h;
    double r = 1.0 + 2.5 * (wr.hi > 0.0 ? p.weight / wr.hi : 0.0);
    os << "<circle cx=\"" << f2(px) << "\" cy=\"" << f2(py) << "\" r=\"" << f2(r)
       << "\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";
  }
  axis_labels(os, "x", "u");
  os << "</svg>\n";
  return os.str();
}

}  // namespace ym
