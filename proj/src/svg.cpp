#include "ck/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ck {

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a",
};

struct curve {
  std::string label;
  std::vector<const sweep_row*> points;
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double nice_step(double range, int target_ticks) {
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_chart(const std::vector<sweep_row>& rows, const plot_options& options,
                         const std::string& manifest_comment) {
  if (rows.empty()) throw std::invalid_argument("plot: no data rows");

  std::vector<curve> curves;
  std::map<std::string, std::size_t> index;
  for (const sweep_row& row : rows) {
    const std::string label = row.method.name() + " N_s=" + std::to_string(row.group_count);
    auto it = index.find(label);
    if (it == index.end()) {
      it = index.emplace(label, curves.size()).first;
      curves.push_back(curve{label, {}});
    }
    curves[it->second].points.push_back(&row);
  }
  for (curve& c : curves) {
    std::sort(c.points.begin(), c.points.end(),
              [](const sweep_row* a, const sweep_row* b) { return a->beta < b->beta; });
  }

  double x_lo = rows.front().beta, x_hi = x_lo;
  double y_lo = rows.front().estimate.mean, y_hi = y_lo;
  for (const sweep_row& row : rows) {
    x_lo = std::min(x_lo, row.beta);
    x_hi = std::max(x_hi, row.beta);
    y_lo = std::min(y_lo, row.estimate.mean - row.estimate.std_error);
    y_hi = std::max(y_hi, row.estimate.mean + row.estimate.std_error);
  }
  if (options.y_min) y_lo = *options.y_min;
  if (options.y_max) y_hi = *options.y_max;
  if (x_hi == x_lo) { x_lo -= 0.5; x_hi += 0.5; }
  if (y_hi <= y_lo) { y_lo -= 0.5; y_hi += 0.5; }

  const double ml = 70, mr = 190, mt = 30, mb = 55;
  const double pw = options.width - ml - mr;
  const double ph = options.height - mt - mb;
  const auto sx = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto sy = [&](double y) { return mt + (y_hi - y) / (y_hi - y_lo) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height << "\">\n"
      << "<!-- " << manifest_comment << " -->\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes and ticks
  svg << "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">"
      << "<path d=\"M" << fmt(ml) << " " << fmt(mt) << " V" << fmt(mt + ph) << " H"
      << fmt(ml + pw) << "\"/></g>\n";
  const double xs = nice_step(x_hi - x_lo, 8);
  for (double x = std::ceil(x_lo / xs) * xs; x <= x_hi + 1e-9; x += xs) {
    svg << "<line x1=\"" << fmt(sx(x)) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\"" << fmt(sx(x))
        << "\" y2=\"" << fmt(mt + ph + 5) << "\" stroke=\"#333\"/>"
        << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << fmt(mt + ph + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">" << fmt(x)
        << "</text>\n";
  }
  const double ys = nice_step(y_hi - y_lo, 6);
  for (double y = std::ceil(y_lo / ys) * ys; y <= y_hi + 1e-9; y += ys) {
    svg << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(sy(y)) << "\" x2=\"" << fmt(ml)
        << "\" y2=\"" << fmt(sy(y)) << "\" stroke=\"#333\"/>"
        << "<text x=\"" << fmt(ml - 9) << "\" y=\"" << fmt(sy(y) + 4)
        << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">" << fmt(y)
        << "</text>\n";
  }
  svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(options.height - 12)
      << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">knowledge breadth "
         "&#946;</text>\n"
      << "<text x=\"18\" y=\"" << fmt(mt + ph / 2)
      << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 "
         "18 "
      << fmt(mt + ph / 2) << ")\">mean portfolio value</text>\n";

  // curves outside the requested y-range are clipped away, not clamped
  svg << "<clipPath id=\"plot\"><rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\""
      << fmt(pw) << "\" height=\"" << fmt(ph) << "\"/></clipPath>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "<g clip-path=\"url(#plot)\">\n";
    // std-error band
    if (curves[c].points.size() > 1) {
      std::ostringstream band;
      for (const sweep_row* p : curves[c].points) {
        band << fmt(sx(p->beta)) << "," << fmt(sy(p->estimate.mean + p->estimate.std_error))
             << " ";
      }
      for (auto it = curves[c].points.rbegin(); it != curves[c].points.rend(); ++it) {
        band << fmt(sx((*it)->beta)) << ","
             << fmt(sy((*it)->estimate.mean - (*it)->estimate.std_error)) << " ";
      }
      svg << "<polygon points=\"" << band.str() << "\" fill=\"" << color
          << "\" opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    std::ostringstream line;
    for (const sweep_row* p : curves[c].points) {
      line << fmt(sx(p->beta)) << "," << fmt(sy(p->estimate.mean)) << " ";
    }
    svg << "<polyline points=\"" << line.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\"/>\n";
    for (const sweep_row* p : curves[c].points) {
      svg << "<circle cx=\"" << fmt(sx(p->beta)) << "\" cy=\"" << fmt(sy(p->estimate.mean))
          << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
    }
    svg << "</g>\n";
    const double ly = mt + 16 + 18 * static_cast<double>(c);
    svg << "<line x1=\"" << fmt(ml + pw + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(ml + pw + 34) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << fmt(ml + pw + 40) << "\" y=\"" << fmt(ly)
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << curves[c].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ck
