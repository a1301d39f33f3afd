// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gdp/cli/config.hpp"

namespace gdp::cli {

struct Metadata {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
};

struct Artifact {
  std::string name;
  std::string content;
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& comment(const std::string& key, const std::string& value);
  CsvTable& row(const std::vector<double>& values);
  CsvTable& row(const std::vector<std::string>& cells);

  std::string render(const Metadata& meta) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::pair<std::string, std::string>> comments_;
  std::vector<std::string> rows_;
};

Json metadata_json(const Metadata& meta);
Artifact json_artifact(const std::string& name, Json body, const Metadata& meta);

//! Writes every artifact under `dir`, or none of them.
void write_artifacts(const std::filesystem::path& dir, const std::vector<Artifact>& artifacts);

}  // namespace gdp::cli
