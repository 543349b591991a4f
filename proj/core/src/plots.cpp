#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sleeve/errors.hpp"
#include "sleeve/harness.hpp"

namespace sleeve {

namespace {

constexpr double kW = 720, kH = 460;
constexpr double kLeft = 80, kRight = 560, kTop = 40, kBottom = 400;
constexpr double kErrorFloor = 1e-16;  // log-scale floor for zero errors

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

struct SeriesPoint {
  double param, mean, q95;
};

struct Series {
  std::string label;
  std::vector<SeriesPoint> pts;
};

std::vector<std::string> split_line(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_num(const std::string& s, int lineno) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("csv line " + std::to_string(lineno) + ": cannot parse number '" + s + "'");
  }
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// one plot: log-log polylines with decade ticks and a legend
std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::vector<Series>& series, bool use_q95) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (const auto& p : s.pts) {
      const double x = std::log10(std::max(p.param, kErrorFloor));
      const double y = std::log10(std::max(use_q95 ? p.q95 : p.mean, kErrorFloor));
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const auto sx = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * (kRight - kLeft); };
  const auto sy = [&](double ly) { return kBottom - (ly - ymin) / (ymax - ymin) * (kBottom - kTop); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
         "font-family=\"sans-serif\">"
      << title << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft << "\" height=\""
      << kBottom - kTop << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e) {
    const double x = sx(e);
    svg << "<line x1=\"" << svg_num(x) << "\" y1=\"" << kBottom << "\" x2=\"" << svg_num(x) << "\" y2=\""
        << kBottom + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << svg_num(x) << "\" y=\"" << kBottom + 20
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax)); ++e) {
    const double y = sy(e);
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << svg_num(y) << "\" x2=\"" << kLeft << "\" y2=\""
        << svg_num(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << svg_num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">1e" << e << "</text>\n";
  }
  svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 42
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
      << " (log)</text>\n"
      << "<text x=\"22\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 22 "
      << (kTop + kBottom) / 2 << ")\">HS error (log)</text>\n";

  int color = 0;
  double legend_y = kTop + 12;
  for (const auto& s : series) {
    const char* c = kPalette[color % 10];
    std::vector<SeriesPoint> pts = s.pts;
    std::sort(pts.begin(), pts.end(),
              [](const SeriesPoint& a, const SeriesPoint& b) { return a.param < b.param; });
    svg << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& p : pts)
      svg << svg_num(sx(std::log10(std::max(p.param, kErrorFloor)))) << ","
          << svg_num(sy(std::log10(std::max(use_q95 ? p.q95 : p.mean, kErrorFloor)))) << " ";
    svg << "\"/>\n";
    for (const auto& p : pts)
      svg << "<circle cx=\"" << svg_num(sx(std::log10(std::max(p.param, kErrorFloor)))) << "\" cy=\""
          << svg_num(sy(std::log10(std::max(use_q95 ? p.q95 : p.mean, kErrorFloor)))) << "\" r=\"2.5\" fill=\""
          << c << "\"/>\n";
    svg << "<line x1=\"" << kRight + 12 << "\" y1=\"" << svg_num(legend_y - 4) << "\" x2=\"" << kRight + 36
        << "\" y2=\"" << svg_num(legend_y - 4) << "\" stroke=\"" << c << "\" stroke-width=\"1.6\"/>\n"
        << "<text x=\"" << kRight + 42 << "\" y=\"" << svg_num(legend_y)
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.label << "</text>\n";
    legend_y += 18;
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& csv_path, const std::string& out_dir) {
  std::ifstream in(csv_path);
  if (!in) throw ParseError("cannot open csv: " + csv_path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv line 1: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kAggregateCsvHeader)
    throw ParseError("csv line 1: expected header '" + std::string(kAggregateCsvHeader) + "'");

  // algorithm -> label -> series
  std::map<std::string, std::map<std::string, Series>> groups;
  int lineno = 1;
  int rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto f = split_line(line);
    if (f.size() != 8)
      throw ParseError("csv line " + std::to_string(lineno) + ": expected 8 fields, got " +
                       std::to_string(f.size()));
    const std::string label = "N=" + f[1] + " d=" + f[2] + " " + f[3];
    Series& s = groups[f[0]][label];
    s.label = label;
    s.pts.push_back(SeriesPoint{parse_num(f[4], lineno), parse_num(f[6], lineno), parse_num(f[7], lineno)});
    ++rows;
  }
  if (rows == 0) throw ParseError("csv: no data rows");

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  for (const auto& [alg, by_label] : groups) {
    std::vector<Series> series;
    for (const auto& [_, s] : by_label) series.push_back(s);
    const std::string x_label = alg == "atpe" ? "step size h" : (alg == "ogm" ? "samples M" : "points");
    for (const bool use_q95 : {false, true}) {
      const std::string stat = use_q95 ? "q95" : "mean";
      const std::string path = (std::filesystem::path(out_dir) / (alg + "_" + stat + ".svg")).string();
      std::ofstream(path) << render_svg(alg + " - " + (use_q95 ? "95% quantile" : "average") + " error",
                                        x_label, series, use_q95);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace sleeve
