#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wimax/harness.hpp"

namespace wimax::harness {

std::string format_csv(std::span<const BerPoint> points) {
  std::string out(kCsvHeader);
  out += '\n';
  char line[256];
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%s,%.10g,%" PRIu64 ",%" PRIu64 ",%.5e,%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n",
                  std::string(to_string(p.mode)).c_str(), p.ebn0_db, p.bits, p.bit_errors, p.ber, p.frames,
                  p.frame_errors, p.auth_failures);
    out += line;
  }
  return out;
}

void write_csv(std::span<const BerPoint> points, std::ostream& out) { out << format_csv(points); }

void write_csv(std::span<const BerPoint> points, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write_csv(points, f);
  f.flush();
  if (!f) throw IoError("failed writing " + path);
}

std::vector<BerPoint> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("missing CSV header");
  std::vector<BerPoint> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 8) throw std::invalid_argument("CSV row must have 8 fields");
    BerPoint p;
    try {
      p.mode = parse_mode(f[0]);
      p.ebn0_db = std::stod(f[1]);
      p.bits = std::stoull(f[2]);
      p.bit_errors = std::stoull(f[3]);
      p.ber = std::stod(f[4]);
      p.frames = std::stoull(f[5]);
      p.frame_errors = std::stoull(f[6]);
      p.auth_failures = std::stoull(f[7]);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed CSV row: " + line);
    }
    out.push_back(p);
  }
  return out;
}

void write_dat(std::span<const BerPoint> points, std::ostream& out) {
  out << "# ebn0_db ber\n";
  char line[64];
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%.10g %.5e\n", p.ebn0_db, p.ber);
    out << line;
  }
}

void write_dat(std::span<const BerPoint> points, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write_dat(points, f);
  f.flush();
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace wimax::harness
