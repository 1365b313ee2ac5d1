#pragma once

// Report files: CSV tables headed by a comment line with the tool version,
// a configuration hash and the tolerances, written atomically.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ffmean {

inline constexpr const char* kVersion = "0.1.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);

/// "# ffmean 0.1.0 config=<16 hex digits> tol_a=... tol_b=..."
std::string comment_line(const std::string& config, const std::vector<std::pair<std::string, double>>& tolerances);

/// Writes content to path.tmp and renames it over path. "-" writes to stdout.
void write_atomic(const std::string& path, const std::string& content);

class CsvTable {
 public:
  CsvTable(std::string config, std::vector<std::pair<std::string, double>> tolerances, std::string header);

  void add_row(std::string row) { rows_.push_back(std::move(row)); }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;
  void write(const std::string& path) const { write_atomic(path, str()); }

 private:
  std::string comment_, header_;
  std::vector<std::string> rows_;
};

/// %.17g formatting; -0 prints as 0.
std::string fmt_double(double x);

}  // namespace ffmean
