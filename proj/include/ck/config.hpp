#pragma once

#include <string>
#include <vector>

#include "ck/analytic.hpp"
#include "ck/simulator.hpp"

namespace ck {

// A resolved run: the sweep request plus the analytic-mode quadrature knobs.
struct run_spec {
  sweep_request sweep;
  quadrature_spec quadrature;
};

// Parses and fully defaults a JSON config. Unknown keys, out-of-range values
// and even N_s (without allow_even_groups) are rejected with the offending
// key named. Defaults: N_p=30, W=N_p/2, t in [0,10], e_M=5, v_i=i, kappa=1,
// r=0, samples=20000, N_s=3, beta=0, uniform costs, seed=1.
run_spec parse_config(const std::string& json_text);
run_spec parse_config_file(const std::string& path);

// Canonical JSON for a resolved spec; parse_config(write_config(s)) == s.
std::string write_config(const run_spec& spec);

// FNV-1a digest of the canonical config, hex-encoded; identifies a run.
std::string config_digest(const run_spec& spec);

}  // namespace ck
