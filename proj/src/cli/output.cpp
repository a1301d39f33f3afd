// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/cli/output.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gdp/io.hpp"
#include "gdp/version.hpp"

namespace gdp::cli {

namespace fs = std::filesystem;

CsvTable& CsvTable::comment(const std::string& key, const std::string& value) {
  comments_.emplace_back(key, value);
  return *this;
}

CsvTable& CsvTable::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(io::format_double(v));
  return row(cells);
}

CsvTable& CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size()) throw std::logic_error("CSV row width mismatch");
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  rows_.push_back(std::move(line));
  return *this;
}

std::string CsvTable::render(const Metadata& meta) const {
  std::ostringstream os;
  os << "# tool=" << kToolName << ' ' << kVersion << '\n';
  os << "# command=" << meta.command << '\n';
  os << "# config_hash=" << meta.config_hash << '\n';
  os << "# seed=" << meta.seed << '\n';
  for (const auto& [k, v] : comments_) os << "# " << k << '=' << v << '\n';
  for (std::size_t k = 0; k < header_.size(); ++k) os << (k ? "," : "") << header_[k];
  os << '\n';
  for (const auto& r : rows_) os << r << '\n';
  return os.str();
}

Json metadata_json(const Metadata& meta) {
  return Json{{"tool", std::string(kToolName)},
              {"version", std::string(kVersion)},
              {"command", meta.command},
              {"config_hash", meta.config_hash},
              {"seed", meta.seed}};
}

Artifact json_artifact(const std::string& name, Json body, const Metadata& meta) {
  body["meta"] = metadata_json(meta);
  return {name, body.dump(2) + "\n"};
}

void write_artifacts(const fs::path& dir, const std::vector<Artifact>& artifacts) {
  fs::create_directories(dir);
  std::vector<fs::path> staged;
  try {
    for (const auto& a : artifacts) {
      const fs::path tmp = dir / (a.name + ".partial");
      std::ofstream os(tmp, std::ios::binary);
      os << a.content;
      os.close();
      if (!os) throw std::runtime_error("cannot write " + tmp.string());
      staged.push_back(tmp);
    }
  } catch (...) {
    for (const auto& p : staged) fs::remove(p);
    throw;
  }
  for (std::size_t k = 0; k < artifacts.size(); ++k)
    fs::rename(staged[k], dir / artifacts[k].name);
}

}  // namespace gdp::cli
