#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crowdkit::cli {

// Process exit codes.
enum ExitCode : int { ok = 0, usage_error = 2, runtime_error = 3, data_error = 4 };

enum class ChartKind { line, bar, area, scatter };
std::optional<ChartKind> parse_chart_kind(std::string_view name) noexcept;

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (iteration, value)
};

struct ChartOptions {
  ChartKind kind = ChartKind::line;
  std::string title;
  int width = 800;
  int height = 480;
};

// Series of a collector, merged or labeled file. Map-valued series yield one
// series per key ("label/key" for labeled files with several labels).
// Throws ParseError when the file matches none of the schemas.
std::vector<ChartSeries> load_chart_series(const std::filesystem::path& path);

// Deterministic output: fixed palette, fixed number formatting, no timestamps.
std::string render_svg(const std::vector<ChartSeries>& series, const ChartOptions& options);
std::string render_html(const std::vector<ChartSeries>& series, const ChartOptions& options);

// Entry point of the crowdkit tool.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace crowdkit::cli
