#include "vtorus/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vtorus/error.hpp"

namespace vtorus {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void dump_value(std::ostringstream& os, const nlohmann::json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        os << nlohmann::json(key).dump() << (indent >= 0 ? ": " : ":");
        dump_value(os, value, indent, depth + 1);
      }
      pad(depth);
      os << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // numeric arrays stay on one line
      bool scalar = true;
      for (const auto& v : j) scalar = scalar && v.is_primitive();
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (scalar && indent >= 0 ? ", " : ",");
        first = false;
        if (!scalar) pad(depth + 1);
        dump_value(os, v, indent, depth + 1);
      }
      if (!scalar) pad(depth);
      os << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        os << format_double(v);
      } else {
        os << "null";
      }
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

CsvTable parse_csv(std::string_view text, std::string_view source) {
  CsvTable table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto cells = split(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw InvalidArgument(std::string(source) + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " columns, got " +
                            std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      double v = 0.0;
      const auto* first = c.data();
      const auto* last = c.data() + c.size();
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc{} || res.ptr != last) {
        throw InvalidArgument(std::string(source) + ":" + std::to_string(line_no) +
                              ": not a number: '" + c + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  if (table.header.empty()) {
    throw InvalidArgument(std::string(source) + ": empty CSV (a header row is required)");
  }
  // a header made only of numbers means the header row is missing
  bool numeric_header = true;
  for (const auto& h : table.header) {
    double v = 0.0;
    const auto res = std::from_chars(h.data(), h.data() + h.size(), v);
    numeric_header = numeric_header && res.ec == std::errc{} && res.ptr == h.data() + h.size();
  }
  if (numeric_header) {
    throw InvalidArgument(std::string(source) + ": header row required");
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  return parse_csv(read_text(path), path.string());
}

std::string format_double(double v) {
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[64];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  write_csv(os, header, rows);
  write_text(path, os.str());
}

std::string dump_json(const nlohmann::json& j, int indent) {
  std::ostringstream os;
  dump_value(os, j, indent, 0);
  return os.str();
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, dump_json(j) + "\n");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write file " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InvalidArgument("write failed for " + path.string());
}

}  // namespace vtorus
