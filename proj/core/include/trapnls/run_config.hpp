#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trapnls/grid.hpp"
#include "trapnls/hessian.hpp"
#include "trapnls/multi_index.hpp"
#include "trapnls/propagator.hpp"
#include "trapnls/wavelab.hpp"

namespace trapnls {

struct InitialSpec {
  enum class Type { HermiteMode, MultiPeak, GridFile };
  Type type = Type::HermiteMode;
  double mass = 1.0;           // target mass (HermiteMode: exact; MultiPeak: μ-normalized)
  std::vector<PeakSpec> peaks; // HermiteMode: exactly one entry, unit alpha
  std::string grid_file;
};

struct TimeSpec {
  double t_end = 1.0;
  int samples = 16;
};

struct StabilityBlock {
  double s = 1.0;
  std::vector<Perturbation> perturbation;
  std::vector<double> deltas; // one entry = plain run, several = sweep
  double t_end = 0.0;         // 0 = 20 trap periods
  int samples = 160;
};

struct MorseBlock {
  HessianCase which = HessianCase::I;
  int n = 2;
  int cutoff = 200;
  Subspace subspace = Subspace::Even;
};

// Parsed and validated run description. `echo_json` holds the canonical
// (sorted-key) re-serialization of the input so reports can reproduce it
// byte-for-byte.
struct RunConfig {
  Model model = Model::H;
  int dimension = 1;
  double lambda = 0.0;
  double eta = 1.0;
  std::uint64_t seed = 0;
  int workers = 1;
  InitialSpec initial;
  int basis_cutoff = 64;
  GridSpec grid;               // from grid {L, points}; L defaults to path-aware auto
  double oracle_dt = 0.0;      // grid.dt; 0 = choose from t_end
  double richardson_tol = 0.0; // grid.richardson_tol, optional
  TimeSpec time;
  StabilityBlock stability;
  MorseBlock morse;
  std::string echo_json;
};

// Both throw ConfigError with a message naming the offending key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Materialize the configured initial state on the configured grid. For
// grid_file initials the file defines the grid (it overrides the grid block).
GridState build_initial(const RunConfig&);

// λ + η·mass of the configured initial data (the spectral scale the run will use)
double configured_kappa(const RunConfig&);

} // namespace trapnls
