#include "ffmean/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace ffmean {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string comment_line(const std::string& config, const std::vector<std::pair<std::string, double>>& tolerances) {
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(config)));
  std::string s = std::string("# ffmean ") + kVersion + " config=" + hash;
  for (const auto& [name, v] : tolerances) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %s=%.3g", name.c_str(), v);
    s += buf;
  }
  return s;
}

void write_atomic(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

CsvTable::CsvTable(std::string config, std::vector<std::pair<std::string, double>> tolerances, std::string header)
    : comment_(comment_line(config, tolerances)), header_(std::move(header)) {}

std::string CsvTable::str() const {
  std::string s = comment_ + "\n" + header_ + "\n";
  for (const auto& r : rows_) s += r + "\n";
  return s;
}

}  // namespace ffmean
