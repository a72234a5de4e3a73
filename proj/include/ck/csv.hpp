#pragma once

#include <string>
#include <vector>

#include "ck/simulator.hpp"

namespace ck {

inline constexpr const char* artifact_version = "0.1.0";

struct run_manifest {
  std::string config_digest;
  std::string version = artifact_version;
  std::uint64_t seed = 0;
  std::string timestamp;  // sidecar only; never part of the deterministic CSV
};

// Header: method,N_s,beta,cost,kappa,r,samples,mean,std_error. A leading
// '#'-comment embeds the deterministic manifest fields. UTF-8, LF endings,
// byte-identical for identical rows.
std::string sweep_csv(const std::vector<sweep_row>& rows, const run_manifest& manifest);

void write_sweep_csv(const std::string& path, const std::vector<sweep_row>& rows,
                     const run_manifest& manifest);

// Sidecar <csv path>.manifest.json with digest, version, seed and timestamp.
void write_manifest_file(const std::string& csv_path, const run_manifest& manifest,
                         const std::string& config_json);

// Rows back from a sweep CSV ('#' comments skipped). Throws on malformed input.
std::vector<sweep_row> read_sweep_csv(const std::string& path);

// The leading "# manifest ..." comment of a sweep CSV, without the "# ";
// empty when absent.
std::string read_manifest_comment(const std::string& path);

}  // namespace ck
