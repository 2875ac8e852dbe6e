#include "nstars/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nstars/errors.hpp"

namespace nstars::io {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  return out;
}

double parse_double(const std::string& text, const std::string& where) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw InvalidParams("cannot parse number '" + text + "' in " + where);
  }
  return v;
}

std::uint64_t parse_count(const std::string& text, const std::string& where) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || text[0] == '-' || end != text.c_str() + text.size() ||
      errno == ERANGE) {
    throw InvalidParams("cannot parse count '" + text + "' in " + where);
  }
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_moment(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string("div");
}

TextFile::TextFile(std::filesystem::path path) : path_(std::move(path)) {}

TextFile::~TextFile() {
  if (closed_) return;
  try {
    close();
  } catch (const Error&) {
  }
}

void TextFile::close() {
  closed_ = true;
  std::ofstream out(path_, std::ios::binary | std::ios::trunc);
  out << buffer_;
  out.flush();
  if (!out) throw InvalidParams("cannot write " + path_.string());
}

void TextFile::line(const std::vector<std::string>& fields, char separator) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) buffer_ += separator;
    buffer_ += fields[i];
  }
  buffer_ += '\n';
}

void TextFile::key_value(const std::string& key, const std::string& value) {
  buffer_ += key;
  buffer_ += '=';
  buffer_ += value;
  buffer_ += '\n';
}

void write_moment_rows(const std::filesystem::path& path, stats::Axis axis,
                       const std::vector<stats::EmpiricalMomentRow>& rows) {
  TextFile out(path);
  out.line({axis == stats::Axis::kFixW1 ? "w1" : "w2", "count", "marginal",
            "mean", "second_moment"});
  for (const auto& row : rows) {
    out.line({std::to_string(row.fixed), std::to_string(row.count),
              format_double(row.marginal), format_double(row.mean),
              format_double(row.second_moment)});
  }
  out.close();
}

MomentFile read_moment_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open " + path.string());
  const std::string where = path.string();
  std::string line;
  if (!std::getline(in, line)) throw InvalidParams(where + " is empty");
  const auto header = split(line, ',');
  if (header.size() != 5 || (header[0] != "w1" && header[0] != "w2")) {
    throw InvalidParams(where +
                        ": expected header w1|w2,count,marginal,mean,second_moment");
  }
  MomentFile file;
  file.axis = header[0] == "w1" ? stats::Axis::kFixW1 : stats::Axis::kFixW2;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5) throw InvalidParams(where + ": malformed row '" + line + "'");
    stats::EmpiricalMomentRow row;
    row.fixed = parse_count(f[0], where);
    row.count = parse_count(f[1], where);
    row.marginal = parse_double(f[2], where);
    row.mean = parse_double(f[3], where);
    row.second_moment = parse_double(f[4], where);
    file.rows.push_back(row);
  }
  return file;
}

std::vector<std::pair<std::string, std::string>> read_key_values(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidParams(path.string() + ": expected key=value, got '" + t + "'");
    }
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

}  // namespace nstars::io
