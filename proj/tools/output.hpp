#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace floqsim::cli {

using Cell = std::variant<double, long long, std::string>;

/// Comma separated, header row, LF line endings, doubles as %.17g.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<Cell> row);
  std::string str() const;
  size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::uintmax_t bytes = 0;
  std::string sha256;
};

/// Collects emitted files so the run report can list them with checksums.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  /// Writes bytes verbatim (binary mode) and records the file.
  void write(const std::string& name, const std::string& content);
  const std::vector<ManifestEntry>& manifest() const { return manifest_; }
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::vector<ManifestEntry> manifest_;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Serializes with two-space indentation and a trailing LF.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace floqsim::cli
