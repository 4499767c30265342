#pragma once

#include <cstddef>
#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "uscpol/params.hpp"

namespace uscpol::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { ok = 0, failure = 1, config_error = 2, numeric_error = 3, resolvability_error = 4 };

struct RunOptions {
  std::string command;
  std::string out_dir = ".";
  std::size_t threads = 0;  // 0: USCPOL_THREADS, then hardware concurrency
  std::string format = "csv";
  std::string map_path;  // tomography only: analyse a stored binary map
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunResult {
  std::vector<OutputFile> files;  // manifest.json last
  std::vector<std::string> notes;
};

const std::vector<std::string>& command_names();

// Computes every output of `options.command` in memory.
std::vector<OutputFile> compute(const Config& config, const RunOptions& options, std::vector<std::string>& notes);

// compute(), then writes the files and manifest.json atomically into out_dir.
RunResult run(const Config& config, const RunOptions& options);

// Re-runs the command recorded in a manifest into out_dir and compares hashes.
// Returns the names of outputs whose hashes differ.
std::vector<std::string> replay(const std::string& manifest_path, const std::string& out_dir, std::size_t threads);

std::string sha256_hex(const std::string& data);
std::string format12(double v);
void write_atomic(const std::string& path, const std::string& content);

int exit_code_for(const std::exception& e);

// Full command-line entry point; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uscpol::cli
