#include "hadamard/report.hpp"

#include "hadamard/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hadamard {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        os << '"';
        for (char ch : c) {
          if (ch == '"') os << '"';
          os << ch;
        }
        os << '"';
      } else {
        os << c;
      }
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LabError(ErrorKind::io_error, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw LabError(ErrorKind::io_error, "failed writing '" + path + "'");
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0.0) || !(hi >= lo))
    throw LabError(ErrorKind::invalid_argument, "logarithmic grid needs 0 < start <= stop and count >= 1");
  if (count == 1) return {lo};
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  g.back() = hi;
  return g;
}

std::vector<double> lin_grid(double lo, double hi, int count) {
  if (count < 1 || !(hi >= lo)) throw LabError(ErrorKind::invalid_argument, "linear grid needs start <= stop");
  if (count == 1) return {lo};
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  g.back() = hi;
  return g;
}

namespace {

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw LabError(ErrorKind::parse_error, "invalid " + what + " '" + s + "' in radii specification");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<double> parse_radii(const std::string& spec) {
  if (spec.find(':') == std::string::npos) {
    std::vector<double> out;
    for (const auto& part : split(spec, ',')) out.push_back(to_double(part, "radius"));
    return out;
  }
  const auto parts = split(spec, ':');
  if (parts.size() < 3 || parts.size() > 4)
    throw LabError(ErrorKind::parse_error, "radii must be start:stop:count[:lin|:log], got '" + spec + "'");
  const double lo = to_double(parts[0], "start");
  const double hi = to_double(parts[1], "stop");
  const double count = to_double(parts[2], "count");
  if (count != std::floor(count) || count < 1)
    throw LabError(ErrorKind::parse_error, "radius count must be a positive integer");
  const std::string mode = parts.size() == 4 ? parts[3] : "lin";
  if (mode == "log") return log_grid(lo, hi, static_cast<int>(count));
  if (mode == "lin") return lin_grid(lo, hi, static_cast<int>(count));
  throw LabError(ErrorKind::parse_error, "radius spacing must be lin or log, got '" + mode + "'");
}

}  // namespace hadamard
