#include "picardo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace picardo {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw DimensionError("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double rank = q * double(values.size() - 1);
  const std::size_t lo = std::size_t(std::floor(rank));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = rank - double(lo);
  return values[lo] + (values[lo + 1] - values[lo]) * frac;
}

CurveBand aggregate_by_iteration(const std::vector<RunRecord>& records,
                                 const std::string& algorithm) {
  CurveBand band;
  band.algorithm = algorithm;
  std::size_t longest = 0;
  for (const RunRecord& rec : records)
    if (rec.algorithm == algorithm) longest = std::max(longest, rec.trace.size());
  for (std::size_t k = 0; k < longest; ++k) {
    std::vector<double> values;
    for (const RunRecord& rec : records)
      if (rec.algorithm == algorithm && k < rec.trace.size())
        values.push_back(rec.trace[k].grad_norm);
    if (values.empty()) break;
    band.x.push_back(double(k));
    band.median.push_back(percentile(values, 0.5));
    band.lo.push_back(percentile(values, 0.1));
    band.hi.push_back(percentile(values, 0.9));
  }
  return band;
}

CurveBand aggregate_by_time(const std::vector<RunRecord>& records,
                            const std::string& algorithm, int grid_points) {
  CurveBand band;
  band.algorithm = algorithm;
  double t_max = 0;
  for (const RunRecord& rec : records)
    if (rec.algorithm == algorithm && !rec.trace.empty())
      t_max = std::max(t_max, rec.trace.back().elapsed_s);
  if (t_max <= 0) return band;
  for (int g = 0; g < grid_points; ++g) {
    const double t = t_max * double(g) / double(grid_points - 1);
    std::vector<double> values;
    for (const RunRecord& rec : records) {
      if (rec.algorithm != algorithm || rec.trace.empty()) continue;
      double v = rec.trace.front().grad_norm;
      for (const IterationRecord& it : rec.trace) {
        if (it.elapsed_s > t) break;
        v = it.grad_norm;
      }
      values.push_back(v);
    }
    if (values.empty()) continue;
    band.x.push_back(t);
    band.median.push_back(percentile(values, 0.5));
    band.lo.push_back(percentile(values, 0.1));
    band.hi.push_back(percentile(values, 0.9));
  }
  return band;
}

namespace {

constexpr double kPanelW = 380, kPanelH = 300, kPanelTop = 50;
constexpr double kFloor = 1e-16;

struct PanelScale {
  double x0, x1;        // data range on x
  double ly0, ly1;      // log10 range on y
  double px, py;        // panel origin in page coordinates
  double sx(double x) const {
    return px + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * kPanelW;
  }
  double sy(double v) const {
    const double l = std::log10(std::max(v, kFloor));
    return py + kPanelH - (l - ly0) / (ly1 - ly0) * kPanelH;
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

const char* color_for(const std::string& algorithm) {
  return algorithm == "picardo" ? "#1f77b4" : "#d62728";
}

void draw_band(std::ostream& out, const CurveBand& band, const PanelScale& s) {
  if (band.x.empty()) return;
  out << "  <path class=\"band-" << band.algorithm << "\" fill=\""
      << color_for(band.algorithm) << "\" fill-opacity=\"0.18\" stroke=\"none\" d=\"";
  for (std::size_t i = 0; i < band.x.size(); ++i)
    out << (i == 0 ? 'M' : 'L') << fmt(s.sx(band.x[i])) << ' '
        << fmt(s.sy(band.hi[i]));
  for (std::size_t i = band.x.size(); i-- > 0;)
    out << 'L' << fmt(s.sx(band.x[i])) << ' ' << fmt(s.sy(band.lo[i]));
  out << "Z\"/>\n";
  out << "  <polyline class=\"median-" << band.algorithm << "\" fill=\"none\" stroke=\""
      << color_for(band.algorithm) << "\" stroke-width=\"1.8\" points=\"";
  for (std::size_t i = 0; i < band.x.size(); ++i) {
    if (i) out << ' ';
    out << fmt(s.sx(band.x[i])) << ',' << fmt(s.sy(band.median[i]));
  }
  out << "\"/>\n";
}

void draw_axes(std::ostream& out, const PanelScale& s, const std::string& x_label) {
  out << "  <rect x=\"" << fmt(s.px) << "\" y=\"" << fmt(s.py) << "\" width=\""
      << kPanelW << "\" height=\"" << kPanelH
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  for (int d = int(std::ceil(s.ly0)); d <= int(std::floor(s.ly1)); ++d) {
    const double y = s.sy(std::pow(10.0, d));
    out << "  <line x1=\"" << fmt(s.px) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(s.px + kPanelW) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#dddddd\"/>\n";
    out << "  <text x=\"" << fmt(s.px - 6) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">1e" << d << "</text>\n";
  }
  for (int tick = 0; tick <= 4; ++tick) {
    const double x = s.x0 + (s.x1 - s.x0) * tick / 4.0;
    out << "  <text x=\"" << fmt(s.sx(x)) << "\" y=\""
        << fmt(s.py + kPanelH + 16)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(x) << "</text>\n";
  }
  out << "  <text x=\"" << fmt(s.px + kPanelW / 2) << "\" y=\""
      << fmt(s.py + kPanelH + 34)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
}

}  // namespace

void render_svg(const std::vector<RunRecord>& records, std::ostream& out) {
  if (records.empty()) throw DimensionError("render_svg: no records");

  std::set<std::string> algorithms;
  for (const RunRecord& rec : records) algorithms.insert(rec.algorithm);

  std::vector<CurveBand> iter_bands, time_bands;
  double gmin = 1.0, gmax = 1.0, xmax_iter = 1.0, xmax_time = 0.0;
  for (const std::string& algo : algorithms) {
    iter_bands.push_back(aggregate_by_iteration(records, algo));
    time_bands.push_back(aggregate_by_time(records, algo));
    for (const CurveBand* band : {&iter_bands.back(), &time_bands.back()})
      for (std::size_t i = 0; i < band->x.size(); ++i) {
        gmin = std::min(gmin, std::max(band->lo[i], kFloor));
        gmax = std::max(gmax, band->hi[i]);
      }
    if (!iter_bands.back().x.empty())
      xmax_iter = std::max(xmax_iter, iter_bands.back().x.back());
    if (!time_bands.back().x.empty())
      xmax_time = std::max(xmax_time, time_bands.back().x.back());
  }

  const double ly0 = std::floor(std::log10(gmin)) - 0.2;
  const double ly1 = std::ceil(std::log10(gmax)) + 0.2;
  const PanelScale left{0, xmax_iter, ly0, ly1, 70, kPanelTop};
  const PanelScale right{0, std::max(xmax_time, 1e-9), ly0, ly1, 540, kPanelTop};

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"980\" height=\"420\" "
         "viewBox=\"0 0 980 420\" font-family=\"sans-serif\">\n";
  out << "  <title>gradient norm convergence</title>\n";
  out << "  <text x=\"490\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
         "projected gradient norm, median and 10-90% band</text>\n";
  draw_axes(out, left, "iteration");
  draw_axes(out, right, "elapsed seconds");
  for (const CurveBand& band : iter_bands) draw_band(out, band, left);
  for (const CurveBand& band : time_bands) draw_band(out, band, right);

  double legend_y = kPanelTop + 12;
  for (const std::string& algo : algorithms) {
    out << "  <line x1=\"760\" y1=\"" << fmt(legend_y - 4) << "\" x2=\"790\" y2=\""
        << fmt(legend_y - 4) << "\" stroke=\"" << color_for(algo)
        << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"796\" y=\"" << fmt(legend_y) << "\" font-size=\"12\">"
        << algo << "</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
}

void render_svg(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  render_svg(records, out);
  if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace picardo
