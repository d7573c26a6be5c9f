#include "trapnls/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "trapnls/errors.hpp"
#include "trapnls/galilean.hpp"
#include "trapnls/io.hpp"

namespace trapnls {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& context, const std::string& why) {
  throw ConfigError("config_invalid: " + context + " " + why);
}

void expect_keys(const json& j, const std::string& context,
                 std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("config_unknown_key: " + context + "." + item.key());
  }
}

double get_number(const json& j, const std::string& context) {
  if (!j.is_number()) bad_key(context, "must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& context) {
  if (!j.is_number_integer()) bad_key(context, "must be an integer");
  return j.get<int>();
}

MultiIndex get_mode(const json& j, int dim, const std::string& context) {
  std::vector<int> n;
  if (j.is_number_integer()) {
    n.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const json& e : j) n.push_back(get_int(e, context));
  } else {
    bad_key(context, "must be an integer or an array of integers");
  }
  if (static_cast<int>(n.size()) != dim)
    bad_key(context, "must have one entry per dimension");
  for (const int v : n)
    if (v < 0) bad_key(context, "entries must be >= 0");
  return MultiIndex(n);
}

Eigen::VectorXd get_vector(const json& j, int dim, const std::string& context) {
  if (j.is_number()) {
    if (dim != 1) bad_key(context, "must be an array with one entry per dimension");
    return Eigen::VectorXd::Constant(1, j.get<double>());
  }
  if (!j.is_array()) bad_key(context, "must be an array of numbers");
  Eigen::VectorXd v(j.size());
  int i = 0;
  for (const json& e : j) v[i++] = get_number(e, context);
  if (v.size() != dim) bad_key(context, "must have one entry per dimension");
  return v;
}

std::complex<double> get_complex(const json& j, const std::string& context) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return {get_number(j[0], context), get_number(j[1], context)};
  bad_key(context, "must be a number or a [re, im] pair");
}

PeakSpec get_peak(const json& j, int dim, const std::string& context) {
  if (!j.is_object()) bad_key(context, "must be an object");
  expect_keys(j, context, {"n", "alpha", "a", "b"});
  if (!j.contains("n")) bad_key(context + ".n", "is required");
  PeakSpec p;
  p.n = get_mode(j.at("n"), dim, context + ".n");
  if (j.contains("alpha")) p.alpha = get_complex(j.at("alpha"), context + ".alpha");
  if (j.contains("a")) p.a = get_vector(j.at("a"), dim, context + ".a");
  if (j.contains("b")) p.b = get_vector(j.at("b"), dim, context + ".b");
  return p;
}

Perturbation get_perturbation(const json& j, int dim, const std::string& context) {
  if (!j.is_object()) bad_key(context, "must be an object");
  expect_keys(j, context, {"kind", "mode", "amplitude", "dir"});
  if (!j.contains("kind")) bad_key(context + ".kind", "is required");
  const std::string kind = j.at("kind").is_string()
                               ? j.at("kind").get<std::string>()
                               : throw ConfigError("config_invalid: " + context +
                                                   ".kind must be a string");
  Perturbation p;
  if (kind == "mode") {
    p.kind = Perturbation::Kind::Mode;
    if (!j.contains("mode")) bad_key(context + ".mode", "is required for kind mode");
    p.mode = get_mode(j.at("mode"), dim, context + ".mode");
    if (j.contains("amplitude"))
      p.amplitude = get_complex(j.at("amplitude"), context + ".amplitude");
  } else if (kind == "boost" || kind == "shift") {
    p.kind = kind == "boost" ? Perturbation::Kind::Boost : Perturbation::Kind::Shift;
    if (j.contains("dir")) p.dir = get_vector(j.at("dir"), dim, context + ".dir");
  } else if (kind == "mass_factor") {
    p.kind = Perturbation::Kind::MassFactor;
  } else {
    bad_key(context + ".kind", "must be mode, boost, shift, or mass_factor");
  }
  return p;
}

// half-width large enough that the trap path plus the profile tails stay
// inside the box over [0, t_end]
double auto_half_width(const RunConfig& cfg) {
  double reach = 0.0;
  for (const PeakSpec& p : cfg.initial.peaks) {
    const double an = p.a.size() ? p.a.norm() : 0.0;
    const double bn = p.b.size() ? p.b.norm() : 0.0;
    double bound = 0.0;
    if (cfg.lambda > 0.0) {
      bound = std::sqrt(bn * bn + an * an / cfg.lambda);
    } else if (cfg.lambda == 0.0) {
      bound = bn + an * cfg.time.t_end;
    } else {
      const double w = std::sqrt(-cfg.lambda);
      bound = bn * std::cosh(w * cfg.time.t_end) +
              (an / w) * std::sinh(w * cfg.time.t_end);
    }
    reach = std::max(reach, bound);
  }
  return 12.0 + reach;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config_parse: ") + err.what());
  }
  if (!j.is_object()) throw ConfigError("config_parse: top level must be an object");
  expect_keys(j, "config",
              {"model", "dimension", "lambda", "eta", "seed", "workers", "initial",
               "basis_cutoff", "grid", "time", "stability", "morse"});

  RunConfig cfg;
  if (j.contains("model")) {
    const json& m = j.at("model");
    if (!m.is_string()) bad_key("config.model", "must be a string");
    const std::string name = m.get<std::string>();
    if (name == "H")
      cfg.model = Model::H;
    else if (name == "Hprime")
      cfg.model = Model::Hprime;
    else
      bad_key("config.model", "must be H or Hprime");
  }
  if (j.contains("dimension")) cfg.dimension = get_int(j.at("dimension"), "config.dimension");
  if (cfg.dimension < 1 || cfg.dimension > 2)
    bad_key("config.dimension", "must be 1 or 2");
  if (j.contains("lambda")) cfg.lambda = get_number(j.at("lambda"), "config.lambda");
  if (j.contains("eta")) cfg.eta = get_number(j.at("eta"), "config.eta");
  if (!std::isfinite(cfg.lambda) || !std::isfinite(cfg.eta))
    bad_key("config.lambda/eta", "must be finite");
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) bad_key("config.seed", "must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("workers")) {
    cfg.workers = get_int(j.at("workers"), "config.workers");
    if (cfg.workers < 1) bad_key("config.workers", "must be >= 1");
  }
  if (j.contains("basis_cutoff")) {
    cfg.basis_cutoff = get_int(j.at("basis_cutoff"), "config.basis_cutoff");
    if (cfg.basis_cutoff < 1) bad_key("config.basis_cutoff", "must be >= 1");
  }

  if (j.contains("time")) {
    const json& t = j.at("time");
    if (!t.is_object()) bad_key("config.time", "must be an object");
    expect_keys(t, "time", {"t_end", "samples"});
    if (t.contains("t_end")) cfg.time.t_end = get_number(t.at("t_end"), "time.t_end");
    if (t.contains("samples")) cfg.time.samples = get_int(t.at("samples"), "time.samples");
    if (!(cfg.time.t_end > 0.0)) bad_key("time.t_end", "must be > 0");
    if (cfg.time.samples < 1) bad_key("time.samples", "must be >= 1");
  }

  if (!j.contains("initial")) throw ConfigError("config_invalid: initial is required");
  {
    const json& ini = j.at("initial");
    if (!ini.is_object()) bad_key("config.initial", "must be an object");
    expect_keys(ini, "initial", {"type", "mass", "n", "a", "b", "peaks", "path"});
    const std::string type = ini.contains("type") && ini.at("type").is_string()
                                 ? ini.at("type").get<std::string>()
                                 : "hermite_mode";
    if (ini.contains("mass"))
      cfg.initial.mass = get_number(ini.at("mass"), "initial.mass");
    if (type == "hermite_mode") {
      cfg.initial.type = InitialSpec::Type::HermiteMode;
      if (!(cfg.initial.mass > 0.0)) bad_key("initial.mass", "must be > 0");
      PeakSpec p;
      p.n = ini.contains("n") ? get_mode(ini.at("n"), cfg.dimension, "initial.n")
                              : MultiIndex(std::vector<int>(cfg.dimension, 0));
      if (ini.contains("a")) p.a = get_vector(ini.at("a"), cfg.dimension, "initial.a");
      if (ini.contains("b")) p.b = get_vector(ini.at("b"), cfg.dimension, "initial.b");
      cfg.initial.peaks = {std::move(p)};
    } else if (type == "multi_peak") {
      cfg.initial.type = InitialSpec::Type::MultiPeak;
      if (!(cfg.initial.mass > 0.0)) bad_key("initial.mass", "must be > 0");
      if (!ini.contains("peaks") || !ini.at("peaks").is_array() ||
          ini.at("peaks").empty())
        bad_key("initial.peaks", "must be a non-empty array");
      int ix = 0;
      for (const json& e : ini.at("peaks"))
        cfg.initial.peaks.push_back(
            get_peak(e, cfg.dimension, "initial.peaks[" + std::to_string(ix++) + "]"));
    } else if (type == "grid_file") {
      cfg.initial.type = InitialSpec::Type::GridFile;
      if (!ini.contains("path") || !ini.at("path").is_string())
        bad_key("initial.path", "must name the CSV file");
      cfg.initial.grid_file = ini.at("path").get<std::string>();
    } else {
      bad_key("initial.type", "must be hermite_mode, multi_peak, or grid_file");
    }
  }

  cfg.grid.dim = cfg.dimension;
  bool explicit_half_width = false;
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_object()) bad_key("config.grid", "must be an object");
    expect_keys(g, "grid", {"L", "points", "dt", "richardson_tol"});
    if (g.contains("L")) {
      cfg.grid.half_width = get_number(g.at("L"), "grid.L");
      explicit_half_width = true;
      if (!(cfg.grid.half_width > 0.0)) bad_key("grid.L", "must be > 0");
    }
    if (g.contains("points"))
      cfg.grid.points_per_axis = get_int(g.at("points"), "grid.points");
    if (g.contains("dt")) {
      cfg.oracle_dt = get_number(g.at("dt"), "grid.dt");
      if (!(cfg.oracle_dt > 0.0)) bad_key("grid.dt", "must be > 0");
    }
    if (g.contains("richardson_tol")) {
      cfg.richardson_tol = get_number(g.at("richardson_tol"), "grid.richardson_tol");
      if (!(cfg.richardson_tol > 0.0)) bad_key("grid.richardson_tol", "must be > 0");
    }
  }
  if (!explicit_half_width) cfg.grid.half_width = auto_half_width(cfg);
  cfg.grid.validate();

  if (j.contains("stability")) {
    const json& st = j.at("stability");
    if (!st.is_object()) bad_key("config.stability", "must be an object");
    expect_keys(st, "stability",
                {"s", "perturbation", "delta", "deltas", "t_end", "samples"});
    if (st.contains("s")) cfg.stability.s = get_number(st.at("s"), "stability.s");
    if (st.contains("perturbation")) {
      if (!st.at("perturbation").is_array())
        bad_key("stability.perturbation", "must be an array");
      int ix = 0;
      for (const json& e : st.at("perturbation"))
        cfg.stability.perturbation.push_back(get_perturbation(
            e, cfg.dimension, "stability.perturbation[" + std::to_string(ix++) + "]"));
    }
    if (st.contains("delta") && st.contains("deltas"))
      bad_key("stability.delta", "conflicts with stability.deltas");
    if (st.contains("delta"))
      cfg.stability.deltas = {get_number(st.at("delta"), "stability.delta")};
    if (st.contains("deltas")) {
      if (!st.at("deltas").is_array() || st.at("deltas").empty())
        bad_key("stability.deltas", "must be a non-empty array");
      for (const json& e : st.at("deltas"))
        cfg.stability.deltas.push_back(get_number(e, "stability.deltas"));
    }
    for (const double d : cfg.stability.deltas)
      if (!(d > 0.0)) bad_key("stability.deltas", "entries must be > 0");
    if (st.contains("t_end")) {
      cfg.stability.t_end = get_number(st.at("t_end"), "stability.t_end");
      if (!(cfg.stability.t_end > 0.0)) bad_key("stability.t_end", "must be > 0");
    }
    if (st.contains("samples")) {
      cfg.stability.samples = get_int(st.at("samples"), "stability.samples");
      if (cfg.stability.samples < 1) bad_key("stability.samples", "must be >= 1");
    }
  }

  if (j.contains("morse")) {
    const json& mo = j.at("morse");
    if (!mo.is_object()) bad_key("config.morse", "must be an object");
    expect_keys(mo, "morse", {"case", "n", "cutoff", "subspace"});
    if (mo.contains("case")) {
      if (!mo.at("case").is_string()) bad_key("morse.case", "must be a string");
      const std::string which = mo.at("case").get<std::string>();
      if (which == "I")
        cfg.morse.which = HessianCase::I;
      else if (which == "II")
        cfg.morse.which = HessianCase::II;
      else
        bad_key("morse.case", "must be I or II");
    }
    if (mo.contains("n")) cfg.morse.n = get_int(mo.at("n"), "morse.n");
    if (mo.contains("cutoff")) cfg.morse.cutoff = get_int(mo.at("cutoff"), "morse.cutoff");
    if (mo.contains("subspace")) {
      if (!mo.at("subspace").is_string()) bad_key("morse.subspace", "must be a string");
      const std::string sub = mo.at("subspace").get<std::string>();
      if (sub == "even")
        cfg.morse.subspace = Subspace::Even;
      else if (sub == "full")
        cfg.morse.subspace = Subspace::Full;
      else
        bad_key("morse.subspace", "must be even or full");
    }
    if (cfg.morse.n < 2 || cfg.morse.n % 2 != 0)
      bad_key("morse.n", "must be even and >= 2");
    if (cfg.morse.cutoff <= cfg.morse.n + 2)
      bad_key("morse.cutoff", "must exceed n + 2");
  }

  cfg.echo_json = j.dump();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config_missing: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

GridState build_initial(const RunConfig& cfg) {
  switch (cfg.initial.type) {
    case InitialSpec::Type::GridFile: {
      GridState u = read_grid_csv(cfg.initial.grid_file);
      if (u.spec.dim != cfg.dimension)
        throw ConfigError("grid_file_malformed: file dimension differs from config");
      return u;
    }
    case InitialSpec::Type::MultiPeak:
      return multi_peak(cfg.lambda, cfg.eta, cfg.initial.mass, cfg.initial.peaks,
                        cfg.model, cfg.grid)
          .initial(cfg.grid);
    case InitialSpec::Type::HermiteMode:
    default: {
      const double kappa = cfg.lambda + cfg.eta * cfg.initial.mass;
      if (!(kappa > 0.0))
        throw ConfigError("kappa_nonpositive: hermite_mode initials need lambda + eta*M > 0");
      const PeakSpec& p = cfg.initial.peaks.at(0);
      int max_entry = 0;
      for (int i = 0; i < p.n.dim(); ++i) max_entry = std::max(max_entry, p.n[i]);
      const BasisSpec basis{cfg.dimension, kappa,
                            std::max(cfg.basis_cutoff, max_entry + 1)};
      GridState u =
          synthesize(unit_mode(basis, p.n, std::sqrt(cfg.initial.mass)), cfg.grid);
      const bool boosted = (p.a.size() && p.a.norm() > 0.0) ||
                           (p.b.size() && p.b.norm() > 0.0);
      if (boosted) {
        GalileanParams shift;
        shift.t = 0.0;
        shift.kappa = kappa;
        shift.a = p.a.size() ? p.a : Eigen::VectorXd::Zero(cfg.dimension);
        shift.b = p.b.size() ? p.b : Eigen::VectorXd::Zero(cfg.dimension);
        u = apply_galilean(u, shift).state;
      }
      return u;
    }
  }
}

double configured_kappa(const RunConfig& cfg) {
  if (cfg.initial.type == InitialSpec::Type::GridFile)
    return cfg.lambda + cfg.eta * mass(read_grid_csv(cfg.initial.grid_file));
  return cfg.lambda + cfg.eta * cfg.initial.mass;
}

} // namespace trapnls
