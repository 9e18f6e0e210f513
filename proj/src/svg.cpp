#include "kpo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace kpo {

namespace {

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 48;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  int w, h;
  double px(double x) const { return kMarginLeft + (x - x0) / (x1 - x0) * (w - kMarginLeft - kMarginRight); }
  double py(double y) const { return h - kMarginBottom - (y - y0) / (y1 - y0) * (h - kMarginTop - kMarginBottom); }
};

void widen(double& lo, double& hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
}

void axes(std::ostringstream& os, const Frame& f, const PlotOptions& o) {
  os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << f.w - kMarginLeft - kMarginRight
     << "\" height=\"" << f.h - kMarginTop - kMarginBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
    os << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << f.h - kMarginBottom + 16
       << "\" font-size=\"11\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    os << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << num(f.py(yv) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  os << "<text x=\"" << f.w / 2 << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">" << escape(o.title)
     << "</text>\n";
  os << "<text x=\"" << (kMarginLeft + f.w - kMarginRight) / 2 << "\" y=\"" << f.h - 10
     << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(o.x_label) << "</text>\n";
  os << "<text x=\"14\" y=\"" << f.h / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << f.h / 2 << ")\">" << escape(o.y_label) << "</text>\n";
}

std::string open_svg(int w, int h) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

// Blue below zero, white at zero, red above, scaled by the largest |W|.
std::string diverging(double v, double scale) {
  const double t = std::clamp(v / scale, -1.0, 1.0);
  int r = 255, g = 255, b = 255;
  if (t >= 0) {
    g = b = static_cast<int>(std::lround(255 * (1.0 - t)));
  } else {
    r = g = static_cast<int>(std::lround(255 * (1.0 + t)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string svg_line_plot(const SeriesTable& table, const std::string& x_column,
                          const std::vector<std::string>& y_columns, const PlotOptions& options) {
  const auto& x = table.column(x_column);
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (double v : x)
    if (std::isfinite(v)) {
      x0 = std::min(x0, v);
      x1 = std::max(x1, v);
    }
  for (const auto& name : y_columns)
    for (double v : table.column(name))
      if (std::isfinite(v)) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
      }
  widen(x0, x1);
  widen(y0, y1);
  const double pad = 0.05 * (y1 - y0);
  const Frame f{x0, x1, y0 - pad, y1 + pad, options.width, options.height};

  std::ostringstream os;
  os << open_svg(f.w, f.h);
  axes(os, f, options);
  for (std::size_t k = 0; k < y_columns.size(); ++k) {
    const auto& y = table.column(y_columns[k]);
    const char* color = kPalette[k % std::size(kPalette)];
    if (options.markers) {
      for (std::size_t i = 0; i < y.size(); ++i)
        if (std::isfinite(x[i]) && std::isfinite(y[i]))
          os << "<circle cx=\"" << num(f.px(x[i])) << "\" cy=\"" << num(f.py(y[i])) << "\" r=\"2.5\" fill=\"" << color
             << "\"/>\n";
    } else {
      std::string path;
      bool pen = false;
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
          pen = false;
          continue;
        }
        path += (pen ? " L" : " M") + num(f.px(x[i])) + "," + num(f.py(y[i]));
        pen = true;
      }
      if (!path.empty())
        os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    }
    const int ly = kMarginTop + 14 + 16 * static_cast<int>(k);
    os << "<line x1=\"" << f.w - kMarginRight + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << f.w - kMarginRight + 28
       << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << f.w - kMarginRight + 32 << "\" y=\"" << ly << "\" font-size=\"11\">" << escape(y_columns[k])
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const WignerGrid& grid, const PlotOptions& options) {
  const auto nx = grid.x_axis.size();
  const auto ny = grid.y_axis.size();
  double x0 = grid.x_axis(0), x1 = grid.x_axis(nx - 1), y0 = grid.y_axis(0), y1 = grid.y_axis(ny - 1);
  widen(x0, x1);
  widen(y0, y1);
  const Frame f{x0, x1, y0, y1, options.width, options.height};
  const double scale = std::max(1e-300, grid.values.cwiseAbs().maxCoeff());
  const double cw = (f.w - kMarginLeft - kMarginRight) / static_cast<double>(std::max<Eigen::Index>(1, nx - 1));
  const double ch = (f.h - kMarginTop - kMarginBottom) / static_cast<double>(std::max<Eigen::Index>(1, ny - 1));

  std::ostringstream os;
  os << open_svg(f.w, f.h);
  os << "<g shape-rendering=\"crispEdges\">\n";
  for (Eigen::Index ix = 0; ix < nx; ++ix)
    for (Eigen::Index iy = 0; iy < ny; ++iy)
      os << "<rect x=\"" << num(f.px(grid.x_axis(ix)) - cw / 2) << "\" y=\"" << num(f.py(grid.y_axis(iy)) - ch / 2)
         << "\" width=\"" << num(cw + 0.05) << "\" height=\"" << num(ch + 0.05) << "\" fill=\""
         << diverging(grid.values(ix, iy), scale) << "\"/>\n";
  os << "</g>\n";
  axes(os, f, options);
  const int bx = f.w - kMarginRight + 20;
  for (int k = 0; k <= 20; ++k) {
    const double v = scale * (1.0 - k / 10.0);
    os << "<rect x=\"" << bx << "\" y=\"" << kMarginTop + 8 * k << "\" width=\"16\" height=\"8\" fill=\""
       << diverging(v, scale) << "\"/>\n";
  }
  os << "<text x=\"" << bx + 20 << "\" y=\"" << kMarginTop + 8 << "\" font-size=\"11\">" << tick(scale) << "</text>\n";
  os << "<text x=\"" << bx + 20 << "\" y=\"" << kMarginTop + 88 << "\" font-size=\"11\">0</text>\n";
  os << "<text x=\"" << bx + 20 << "\" y=\"" << kMarginTop + 168 << "\" font-size=\"11\">" << tick(-scale)
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << contents;
}

}  // namespace kpo
