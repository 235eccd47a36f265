#pragma once

// CSV emission. Bodies are deterministic: fixed "%.12g" formatting, rows
// provided pre-sorted by the caller. Files are written whole or not at all.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcp {

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  // '#'-prefixed header lines; every file carries its unit conventions here.
  void comment(const std::string& line) { comments_.push_back(line); }

  void row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
      throw std::invalid_argument("csv row width mismatch");
    std::string r;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) r += ',';
      r += format(values[i]);
    }
    rows_.push_back(std::move(r));
  }

  // For tables whose leading cells are labels rather than numbers.
  void text_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
      throw std::invalid_argument("csv row width mismatch");
    std::string r;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) r += ',';
      r += cells[i];
    }
    rows_.push_back(std::move(r));
  }

  static std::string format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
  }

  std::string body() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) out += ',';
      out += columns_[i];
    }
    out += '\n';
    for (const auto& r : rows_) {
      out += r;
      out += '\n';
    }
    return out;
  }

  std::string text() const {
    std::string out;
    for (const auto& c : comments_) {
      out += "# ";
      out += c;
      out += '\n';
    }
    out += body();
    return out;
  }

  void write(const std::filesystem::path& path) const {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot open " + tmp.string());
      f << text();
      if (!f) {
        f.close();
        std::filesystem::remove(tmp);
        throw std::runtime_error("write failed: " + path.string());
      }
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::string> rows_;
};

}  // namespace rcp
