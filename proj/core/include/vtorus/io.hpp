#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vtorus {

/// Numeric CSV with one header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text, std::string_view source = "<memory>");

/// 17 significant digits, the format used by every machine-readable output.
std::string format_double(double v);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// JSON text with every floating-point number printed at 17 significant
/// digits. Non-finite numbers become null.
std::string dump_json(const nlohmann::json& j, int indent = 2);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace vtorus
