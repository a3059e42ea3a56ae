#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hslpp/harness/config.hpp"

namespace hslpp::harness {

// SHA-1 of "blob <size>\0<content>", as git hashes file contents.
std::string git_blob_sha1(const std::string& content);

// Resolved config, seed and config hash; every output file carries this.
json run_metadata(const RunConfig& cfg);

// "%.17g": round-trips doubles so reruns compare byte for byte.
std::string fmt(double v);

class CsvWriter {
public:
    // Writes "# schema=v1", a "# config=..." line and the header.
    CsvWriter(const std::filesystem::path& path, const RunConfig& cfg, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
};

// Pretty JSON with a trailing newline; throws std::runtime_error on I/O failure.
void write_json(const std::filesystem::path& path, const json& j);

std::filesystem::path ensure_dir(const std::string& dir);

}  // namespace hslpp::harness
