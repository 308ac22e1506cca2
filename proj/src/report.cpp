#include "igam/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "igam/errors.hpp"

namespace igam {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_curve_csv(const std::filesystem::path& path, const DominationCurve& curve) {
  std::string s = "prefix_size,covered_fraction\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    s += std::to_string(curve.prefix_sizes[i]) + "," + format_number(curve.covered_fraction(i)) + "\n";
  write_text(path, s);
}

void write_scores_csv(const std::filesystem::path& path, std::span<const double> scores) {
  std::string s = "node_id,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i) s += std::to_string(i) + "," + format_number(scores[i]) + "\n";
  write_text(path, s);
}

namespace {

using nlohmann::json;

constexpr int kW = 640, kH = 480, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1b6ca8", "#d1495b", "#edae49", "#00798c", "#66a182", "#8d96a3", "#2e4057"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

/// JSON text that is safe inside an XML comment.
std::string data_comment(const json& j) {
  std::string text = j.dump();
  std::string out;
  for (char ch : text) {
    if (ch == '-' && !out.empty() && out.back() == '-') out += "\\u002d";
    else out.push_back(ch);
  }
  return "<!-- igam-data " + out + " -->\n";
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); }
  double py(double y) const { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); }
};

Frame make_frame(double x0, double x1, double y0, double y1) {
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  const double px = 0.04 * (x1 - x0), py = 0.04 * (y1 - y0);
  return {x0 - px, x1 + px, y0 - py, y1 + py};
}

std::string header(int w, int h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(w) + "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
         std::to_string(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Frame& f, const std::string& title, const std::string& xlabel, const std::string& ylabel) {
  std::string s;
  const auto n = format_number;
  s += "<text x=\"" + std::to_string(kW / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
       escape_xml(title) + "</text>\n";
  s += "<line x1=\"" + n(f.px(f.x0)) + "\" y1=\"" + n(f.py(f.y0)) + "\" x2=\"" + n(f.px(f.x1)) + "\" y2=\"" +
       n(f.py(f.y0)) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + n(f.px(f.x0)) + "\" y1=\"" + n(f.py(f.y0)) + "\" x2=\"" + n(f.px(f.x0)) + "\" y2=\"" +
       n(f.py(f.y1)) + "\" stroke=\"black\"/>\n";
  char buf[64];
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    std::snprintf(buf, sizeof buf, "%.2f", x);
    s += "<text x=\"" + n(std::round(f.px(x))) + "\" y=\"" + std::to_string(kH - kBottom + 18) +
         "\" text-anchor=\"middle\" font-size=\"11\">" + buf + "</text>\n";
    std::snprintf(buf, sizeof buf, "%.2f", y);
    s += "<text x=\"" + std::to_string(kLeft - 6) + "\" y=\"" + n(std::round(f.py(y)) + 4) +
         "\" text-anchor=\"end\" font-size=\"11\">" + buf + "</text>\n";
  }
  s += "<text x=\"" + std::to_string(kW / 2) + "\" y=\"" + std::to_string(kH - 16) +
       "\" text-anchor=\"middle\" font-size=\"13\">" + escape_xml(xlabel) + "</text>\n";
  s += "<text x=\"18\" y=\"" + std::to_string(kH / 2) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
       std::to_string(kH / 2) + ")\">" + escape_xml(ylabel) + "</text>\n";
  return s;
}

std::string polyline(const Frame& f, const std::vector<double>& xs, const std::vector<double>& ys, const char* color) {
  std::string pts;
  char buf[64];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", f.px(xs[i]), f.py(ys[i]));
    pts += buf;
  }
  if (!pts.empty()) pts.pop_back();
  return "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
         "\"/>\n";
}

json curve_json(const NamedCurve& c) {
  json pts = json::array();
  for (std::size_t i = 0; i < c.curve.size(); ++i) pts.push_back({c.curve.prefix_sizes[i], c.curve.covered[i]});
  return {{"series", c.name}, {"n", c.curve.node_count}, {"points", pts}};
}

}  // namespace

std::string svg_domination_loglog(const std::vector<NamedCurve>& curves, const std::string& title) {
  std::vector<std::vector<double>> xs(curves.size()), ys(curves.size());
  double x0 = 0, x1 = 0, y0 = 2, y1 = 2;
  bool first = true;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k].curve;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double frac = c.covered_fraction(i);
      if (frac <= 0) continue;
      xs[k].push_back(std::log10(static_cast<double>(c.prefix_sizes[i])));
      ys[k].push_back(std::log10(100.0 * frac));
      if (first) {
        x0 = x1 = xs[k].back();
        y0 = y1 = ys[k].back();
        first = false;
      }
      x0 = std::min(x0, xs[k].back());
      x1 = std::max(x1, xs[k].back());
      y0 = std::min(y0, ys[k].back());
      y1 = std::max(y1, ys[k].back());
    }
  }
  const Frame f = make_frame(x0, x1, y0, y1);
  std::string s = header(kW, kH);
  for (const auto& c : curves) s += data_comment(curve_json(c));
  s += axes(f, title, "log10 prefix size", "log10 covered %");
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    s += polyline(f, xs[k], ys[k], color);
    s += "<text x=\"" + std::to_string(kW - kRight - 120) + "\" y=\"" + std::to_string(kTop + 16 * (k + 1)) +
         "\" font-size=\"12\" fill=\"" + color + "\">" + escape_xml(curves[k].name) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string svg_joint_coverage(const NamedCurve& x, const NamedCurve& y, const LogLogFit& fit) {
  const std::size_t count = std::min(x.curve.size(), y.curve.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < count; ++i) {
    lx.push_back(std::log10(100.0 * x.curve.covered_fraction(i)));
    ly.push_back(std::log10(100.0 * y.curve.covered_fraction(i)));
  }
  double x0 = 0, x1 = 2, y0 = 0, y1 = 2;
  if (!lx.empty()) {
    x0 = *std::min_element(lx.begin(), lx.end());
    x1 = *std::max_element(lx.begin(), lx.end());
    y0 = *std::min_element(ly.begin(), ly.end());
    y1 = *std::max_element(ly.begin(), ly.end());
  }
  const Frame f = make_frame(x0, x1, y0, y1);
  std::string s = header(kW, kH);
  s += data_comment(curve_json(x));
  s += data_comment(curve_json(y));
  s += data_comment({{"series", "fit"},
                     {"slope", fit.slope},
                     {"intercept", fit.intercept},
                     {"r_squared", fit.r_squared},
                     {"points", fit.points}});
  char title[160];
  std::snprintf(title, sizeof title, "%s vs %s: slope %.3f, R2 %.3f", y.name.c_str(), x.name.c_str(), fit.slope,
                fit.r_squared);
  s += axes(f, title, "log10 covered % (" + x.name + ")", "log10 covered % (" + y.name + ")");
  char buf[128];
  for (std::size_t i = 0; i < lx.size(); ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"%s\"/>\n", f.px(lx[i]), f.py(ly[i]),
                  kPalette[0]);
    s += buf;
  }
  s += polyline(f, {f.x0, f.x1}, {fit.intercept + fit.slope * f.x0, fit.intercept + fit.slope * f.x1}, kPalette[1]);
  s += "</svg>\n";
  return s;
}

std::string svg_fit_scatter(const std::vector<std::pair<int, double>>& level_log_degrees, double slope,
                            double intercept, double r_squared, int b, double c) {
  std::vector<double> xs, ys;
  for (const auto& [h, y] : level_log_degrees) {
    xs.push_back(h);
    ys.push_back(y);
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!xs.empty()) {
    x0 = *std::min_element(xs.begin(), xs.end());
    x1 = *std::max_element(xs.begin(), xs.end());
    y0 = std::min(*std::min_element(ys.begin(), ys.end()), intercept + slope * x0);
    y1 = std::max(*std::max_element(ys.begin(), ys.end()), intercept + slope * x1);
  }
  const Frame f = make_frame(x0, x1, std::min(y0, y1), std::max(y0, y1));
  std::string s = header(kW, kH);
  json pts = json::array();
  for (const auto& [h, y] : level_log_degrees) pts.push_back({h, y});
  s += data_comment({{"series", "levels"}, {"points", pts}});
  s += data_comment({{"series", "fit"},
                     {"slope", slope},
                     {"intercept", intercept},
                     {"r_squared", r_squared},
                     {"b", b},
                     {"c", c}});
  char title[160];
  std::snprintf(title, sizeof title, "b = %d, c = %.3f, R2 = %.3f", b, c, r_squared);
  s += axes(f, title, "level", "log total degree");
  char buf[128];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"%s\"/>\n", f.px(xs[i]), f.py(ys[i]),
                  kPalette[0]);
    s += buf;
  }
  s += polyline(f, {x0, x1}, {intercept + slope * x0, intercept + slope * x1}, kPalette[1]);
  s += "</svg>\n";
  return s;
}

namespace {

std::vector<node_t> order_by_height(std::span<const int> heights) {
  std::vector<node_t> order(heights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](node_t a, node_t b) { return heights[a] < heights[b]; });
  return order;
}

}  // namespace

std::string svg_adjacency(const Graph& g, std::span<const int> heights, int max_cells) {
  const auto n = g.node_count();
  if (heights.size() != n) throw MalformedInput("heights do not cover the graph");
  const auto order = order_by_height(heights);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  const std::size_t cells = std::max<std::size_t>(1, std::min<std::size_t>(n, static_cast<std::size_t>(max_cells)));
  auto bin = [&](std::size_t p) { return p * cells / std::max<std::size_t>(n, 1); };
  std::vector<std::size_t> bin_size(cells, 0);
  for (std::size_t i = 0; i < n; ++i) ++bin_size[bin(i)];
  std::vector<double> count(cells * cells, 0.0);
  for (node_t u = 0; u < static_cast<node_t>(n); ++u)
    for (node_t v : g.neighbors(u)) count[bin(pos[u]) * cells + bin(pos[v])] += 1.0;
  const int side = 600;
  const double cell = static_cast<double>(side) / static_cast<double>(cells);
  std::string s = header(side + 40, side + 40);
  json levels = json::array();
  int maxh = 0;
  for (int h : heights) maxh = std::max(maxh, h);
  std::vector<std::size_t> per(static_cast<std::size_t>(maxh) + 1, 0);
  for (int h : heights) ++per[h];
  for (std::size_t h = 0; h < per.size(); ++h) levels.push_back({h, per[h]});
  s += data_comment({{"series", "adjacency"}, {"n", n}, {"m", g.edge_count()}, {"cells", cells}, {"levels", levels}});
  s += "<g transform=\"translate(20,20)\">\n";
  char buf[320];
  for (std::size_t i = 0; i < cells; ++i)
    for (std::size_t j = 0; j < cells; ++j) {
      const double pairs = static_cast<double>(bin_size[i]) * static_cast<double>(bin_size[j]) -
                           (i == j ? static_cast<double>(bin_size[i]) : 0.0);
      if (pairs <= 0 || count[i * cells + j] == 0) continue;
      const double d = std::min(1.0, count[i * cells + j] / pairs);
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - d)));
      std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"rgb(%d,%d,%d)\"/>\n",
                    j * cell, i * cell, cell, cell, shade, shade, shade);
      s += buf;
    }
  // level boundaries
  std::size_t acc = 0;
  for (std::size_t h = 0; h + 1 < per.size(); ++h) {
    acc += per[h];
    const double x = static_cast<double>(bin(acc)) * cell;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"0\" x2=\"%.2f\" y2=\"%d\" stroke=\"#d1495b\" stroke-width=\"0.5\"/>\n"
                  "<line x1=\"0\" y1=\"%.2f\" x2=\"%d\" y2=\"%.2f\" stroke=\"#d1495b\" stroke-width=\"0.5\"/>\n",
                  x, x, side, x, side, x);
    s += buf;
  }
  s += "<rect width=\"" + std::to_string(side) + "\" height=\"" + std::to_string(side) +
       "\" fill=\"none\" stroke=\"black\"/>\n</g>\n</svg>\n";
  return s;
}

std::string svg_layered(const Graph& g, std::span<const int> heights, std::size_t max_edges) {
  const auto n = g.node_count();
  if (heights.size() != n) throw MalformedInput("heights do not cover the graph");
  int maxh = 0;
  for (int h : heights) maxh = std::max(maxh, h);
  std::vector<std::vector<node_t>> rows(static_cast<std::size_t>(maxh) + 1);
  for (node_t v = 0; v < static_cast<node_t>(n); ++v) rows[heights[v]].push_back(v);
  const int w = 900, h = 120 + 90 * maxh;
  std::vector<double> x(n), y(n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      x[rows[r][i]] = 20 + (w - 40) * (i + 0.5) / static_cast<double>(rows[r].size());
      y[rows[r][i]] = 60 + 90.0 * static_cast<double>(r);
    }
  std::string s = header(w, h);
  json sizes = json::array();
  for (const auto& r : rows) sizes.push_back(r.size());
  const auto edges = g.edges();
  const std::size_t shown = std::min(edges.size(), max_edges);
  s += data_comment({{"series", "layers"}, {"n", n}, {"m", edges.size()}, {"edges_drawn", shown}, {"level_sizes", sizes}});
  char buf[200];
  s += "<g stroke=\"#8d96a3\" stroke-opacity=\"0.25\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < shown; ++i) {
    std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n", x[edges[i].u],
                  y[edges[i].u], x[edges[i].v], y[edges[i].v]);
    s += buf;
  }
  s += "</g>\n";
  for (node_t v = 0; v < static_cast<node_t>(n); ++v) {
    const int shade = maxh == 0 ? 40 : 40 + 170 * heights[v] / maxh;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"rgb(%d,%d,200)\"/>\n", x[v], y[v],
                  shade, shade);
    s += buf;
  }
  s += "</svg>\n";
  return s;
}

std::vector<std::string> svg_data_blocks(const std::string& svg) {
  std::vector<std::string> out;
  const std::string open = "<!-- igam-data ";
  std::size_t pos = 0;
  while ((pos = svg.find(open, pos)) != std::string::npos) {
    const auto start = pos + open.size();
    const auto end = svg.find(" -->", start);
    if (end == std::string::npos) break;
    out.push_back(svg.substr(start, end - start));
    pos = end;
  }
  return out;
}

}  // namespace igam
