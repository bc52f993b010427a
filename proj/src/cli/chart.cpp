#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "crowdkit/cli.hpp"
#include "crowdkit/collect.hpp"
#include "crowdkit/errors.hpp"
#include "json.hpp"

namespace crowdkit::cli {

std::optional<ChartKind> parse_chart_kind(std::string_view name) noexcept {
  if (name == "line") return ChartKind::line;
  if (name == "bar") return ChartKind::bar;
  if (name == "area") return ChartKind::area;
  if (name == "scatter") return ChartKind::scatter;
  return std::nullopt;
}

namespace {

void append_series(std::vector<ChartSeries>& out, const collect::CollectorSeries& s, const std::string& prefix) {
  std::map<std::string, ChartSeries> by_key;
  ChartSeries scalar{prefix.empty() ? s.name() : prefix, {}};
  for (const auto& e : s.entries()) {
    const double x = static_cast<double>(e.iteration);
    if (const auto* d = std::get_if<double>(&e.value)) {
      scalar.points.emplace_back(x, *d);
    } else {
      for (const auto& [k, v] : std::get<collect::FlatMap>(e.value)) {
        auto& cs = by_key[k];
        cs.label = prefix.empty() ? k : prefix + "/" + k;
        cs.points.emplace_back(x, v);
      }
    }
  }
  if (!by_key.empty()) {
    for (auto& [_, cs] : by_key) out.push_back(std::move(cs));
  } else {
    out.push_back(std::move(scalar));
  }
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string coord(double v) { return fmt("%.2f", v); }

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* color(std::size_t i) { return palette[i % std::size(palette)]; }

double nice_step(double range) {
  if (!(range > 0)) return 1;
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f < 1.5 ? 1 : f < 3 ? 2 : f < 7 ? 5 : 10;
  return nice * mag;
}

struct Range {
  double lo = 0, hi = 1;
  void widen() {
    if (hi - lo <= 0) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::vector<ChartSeries> load_chart_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string(), 0, std::string("invalid JSON: ") + e.what());
  }
  std::vector<ChartSeries> out;
  if (j.is_object() && j.contains("series")) {
    const auto labeled = collect::labeled_from_json(text, path.string());
    for (const auto& ls : labeled) append_series(out, ls.series, ls.label);
  } else {
    append_series(out, collect::CollectorSeries::from_json(text, path.string()), "");
  }
  return out;
}

std::string render_svg(const std::vector<ChartSeries>& series, const ChartOptions& opt) {
  const double left = 64, right = 170, top = 40, bottom = 44;
  const double w = opt.width, h = opt.height;
  const double pw = w - left - right, ph = h - top - bottom;

  // x values shared by all series, for stacking and grouping
  std::vector<double> xs;
  for (const auto& s : series)
    for (const auto& [x, _] : s.points) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::map<double, double>> values(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    for (const auto& [x, y] : series[i].points) values[i][x] = y;

  Range xr, yr;
  if (!xs.empty()) {
    xr = {xs.front(), xs.back()};
    bool first = true;
    if (opt.kind == ChartKind::area) {
      yr = {0, 0};
      for (double x : xs) {
        double sum = 0;
        for (const auto& v : values)
          if (auto it = v.find(x); it != v.end()) sum += it->second;
        yr.hi = std::max(yr.hi, sum);
      }
    } else {
      for (const auto& s : series)
        for (const auto& [_, y] : s.points) {
          if (first) yr = {y, y};
          yr.lo = std::min(yr.lo, y);
          yr.hi = std::max(yr.hi, y);
          first = false;
        }
      if (opt.kind == ChartKind::bar) {
        yr.lo = std::min(yr.lo, 0.0);
        yr.hi = std::max(yr.hi, 0.0);
      }
    }
  }
  if (opt.kind == ChartKind::bar && !xs.empty()) {
    xr.lo -= 0.5;
    xr.hi += 0.5;
  }
  xr.widen();
  yr.widen();
  const double ystep = nice_step(yr.hi - yr.lo);
  yr.lo = std::floor(yr.lo / ystep) * ystep;
  yr.hi = std::ceil(yr.hi / ystep) * ystep;
  const double xstep = nice_step(xr.hi - xr.lo);

  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
    << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    o << "<text x=\"" << coord(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(opt.title) << "</text>\n";

  // axes and ticks
  o << "<g class=\"axes\" stroke=\"#333\" fill=\"none\">\n";
  o << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(top + ph) << "\" x2=\"" << coord(left + pw) << "\" y2=\""
    << coord(top + ph) << "\"/>\n";
  o << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(top) << "\" x2=\"" << coord(left) << "\" y2=\""
    << coord(top + ph) << "\"/>\n";
  o << "</g>\n<g class=\"ticks\" fill=\"#333\">\n";
  for (double y = yr.lo; y <= yr.hi + ystep * 1e-9; y += ystep) {
    const double v = std::abs(y) < ystep * 1e-9 ? 0.0 : y;
    o << "<line x1=\"" << coord(left - 4) << "\" y1=\"" << coord(py(v)) << "\" x2=\"" << coord(left) << "\" y2=\""
      << coord(py(v)) << "\" stroke=\"#333\"/>";
    o << "<text x=\"" << coord(left - 7) << "\" y=\"" << coord(py(v) + 4) << "\" text-anchor=\"end\">"
      << fmt("%.6g", v) << "</text>\n";
  }
  for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + xstep * 1e-9; x += xstep) {
    const double v = std::abs(x) < xstep * 1e-9 ? 0.0 : x;
    o << "<line x1=\"" << coord(px(v)) << "\" y1=\"" << coord(top + ph) << "\" x2=\"" << coord(px(v)) << "\" y2=\""
      << coord(top + ph + 4) << "\" stroke=\"#333\"/>";
    o << "<text x=\"" << coord(px(v)) << "\" y=\"" << coord(top + ph + 18) << "\" text-anchor=\"middle\">"
      << fmt("%.6g", v) << "</text>\n";
  }
  o << "<text x=\"" << coord(left + pw / 2) << "\" y=\"" << coord(h - 6) << "\" text-anchor=\"middle\">iteration</text>\n";
  o << "</g>\n";

  // marks
  std::map<double, double> stack;
  const double group = xs.size() > 1 ? (px(xs[1]) - px(xs[0])) : pw * 0.5;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    o << "<g class=\"series\" data-label=\"" << escape(s.label) << "\">\n";
    switch (opt.kind) {
      case ChartKind::line:
        if (!s.points.empty()) {
          o << "<polyline fill=\"none\" stroke=\"" << color(i) << "\" stroke-width=\"2\" points=\"";
          for (std::size_t k = 0; k < s.points.size(); ++k)
            o << (k ? " " : "") << coord(px(s.points[k].first)) << ',' << coord(py(s.points[k].second));
          o << "\"/>\n";
        }
        break;
      case ChartKind::scatter:
        for (const auto& [x, y] : s.points)
          o << "<circle cx=\"" << coord(px(x)) << "\" cy=\"" << coord(py(y)) << "\" r=\"3\" fill=\"" << color(i)
            << "\"/>\n";
        break;
      case ChartKind::bar: {
        const double gw = std::min(group, pw) * 0.8;
        const double bw = series.empty() ? gw : gw / static_cast<double>(series.size());
        for (const auto& [x, y] : s.points) {
          const double x0 = px(x) - gw / 2 + bw * static_cast<double>(i);
          const double y0 = py(std::max(y, 0.0)), y1 = py(std::min(y, 0.0));
          o << "<rect x=\"" << coord(x0) << "\" y=\"" << coord(y0) << "\" width=\"" << coord(bw) << "\" height=\""
            << coord(y1 - y0) << "\" fill=\"" << color(i) << "\"/>\n";
        }
        break;
      }
      case ChartKind::area:
        if (!xs.empty()) {
          std::vector<std::pair<double, double>> upper, lower;
          for (double x : xs) {
            const double base = stack[x];
            auto it = values[i].find(x);
            const double top_v = base + (it == values[i].end() ? 0.0 : it->second);
            lower.emplace_back(x, base);
            upper.emplace_back(x, top_v);
            stack[x] = top_v;
          }
          o << "<polygon fill=\"" << color(i) << "\" fill-opacity=\"0.75\" stroke=\"" << color(i) << "\" points=\"";
          bool first = true;
          for (const auto& [x, y] : upper) {
            o << (first ? "" : " ") << coord(px(x)) << ',' << coord(py(y));
            first = false;
          }
          for (auto it = lower.rbegin(); it != lower.rend(); ++it) o << ' ' << coord(px(it->first)) << ',' << coord(py(it->second));
          o << "\"/>\n";
        }
        break;
    }
    o << "</g>\n";
  }

  // legend
  o << "<g class=\"legend\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = top + 8 + 18 * static_cast<double>(i);
    o << "<rect x=\"" << coord(left + pw + 16) << "\" y=\"" << coord(y - 9) << "\" width=\"12\" height=\"12\" fill=\""
      << color(i) << "\"/><text x=\"" << coord(left + pw + 33) << "\" y=\"" << coord(y + 1) << "\">"
      << escape(series[i].label) << "</text>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

std::string render_html(const std::vector<ChartSeries>& series, const ChartOptions& options) {
  std::string out = "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>";
  out += escape(options.title.empty() ? "chart" : options.title);
  out += "</title>\n</head>\n<body>\n";
  out += render_svg(series, options);
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace crowdkit::cli
