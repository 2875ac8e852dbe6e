#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nstars/stats.hpp"

namespace nstars::io {

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_double(double value);

/// "div" for a divergent (nullopt) value.
std::string format_moment(const std::optional<double>& value);

/// Buffered writer for the CSV and key=value outputs ('\n' line endings).
class TextFile {
 public:
  explicit TextFile(std::filesystem::path path);
  ~TextFile();
  TextFile(const TextFile&) = delete;
  TextFile& operator=(const TextFile&) = delete;

  void line(const std::vector<std::string>& fields, char separator = ',');
  void key_value(const std::string& key, const std::string& value);

  /// Writes the buffered text; throws InvalidParams if the file cannot be
  /// written. Called by the destructor (errors ignored) if not called before.
  void close();

 private:
  std::filesystem::path path_;
  std::string buffer_;
  bool closed_ = false;
};

/// Rows of a moments CSV written by write_moment_rows. The header names the
/// fixed coordinate ("w1" or "w2").
struct MomentFile {
  stats::Axis axis = stats::Axis::kFixW1;
  std::vector<stats::EmpiricalMomentRow> rows;
};

void write_moment_rows(const std::filesystem::path& path, stats::Axis axis,
                       const std::vector<stats::EmpiricalMomentRow>& rows);

/// Throws InvalidParams on a missing file or malformed content.
MomentFile read_moment_rows(const std::filesystem::path& path);

/// Reads `key=value` lines; blank lines and lines starting with '#' are
/// skipped. Throws InvalidParams on malformed lines.
std::vector<std::pair<std::string, std::string>> read_key_values(
    const std::filesystem::path& path);

}  // namespace nstars::io
