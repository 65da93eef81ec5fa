#include "gwmlp/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "gwmlp/error.hpp"
#include "text_util.hpp"

namespace gwmlp {

using detail::trim;

namespace {

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v)) {
    throw ConfigError("config key '" + key + "': invalid number '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size()) {
    throw ConfigError("config key '" + key + "': invalid integer '" + value + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  return static_cast<std::size_t>(parse_u64(key, value));
}

} // namespace

void RunConfig::validate() const {
  if (wells_csv.empty()) throw ConfigError("config: wells_csv is required");
  if (climate_csv.empty()) throw ConfigError("config: climate_csv is required");
  if (hidden_size == 0) throw ConfigError("config: hidden_size must be >= 1");
  if (lags == 0) throw ConfigError("config: lags must be >= 1");
  if (epochs == 0) throw ConfigError("config: epochs must be >= 1");
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw ConfigError("config: split_fraction must be in (0,1)");
  }
  AdamHyper hyper{eta, beta1, beta2, epsilon};
  hyper.validate();
  if (output_activation == Activation::Relu && scaling != ScalerKind::Minmax) {
    throw ConfigError(
        "config: output_activation = relu requires scaling = minmax "
        "(a relu output cannot emit negative standardized targets)");
  }
}

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config '" + path + "'");
  }

  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key or value");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("config: duplicate key '" + key + "'");
    }

    if (key == "wells_csv") {
      cfg.wells_csv = value;
    } else if (key == "climate_csv") {
      cfg.climate_csv = value;
    } else if (key == "hidden_size") {
      cfg.hidden_size = parse_size(key, value);
    } else if (key == "output_activation") {
      cfg.output_activation = activation_from_string(value);
    } else if (key == "lags") {
      cfg.lags = parse_size(key, value);
    } else if (key == "optimizer") {
      cfg.optimizer = optimizer_from_string(value);
    } else if (key == "eta") {
      cfg.eta = parse_double(key, value);
    } else if (key == "beta1") {
      cfg.beta1 = parse_double(key, value);
    } else if (key == "beta2") {
      cfg.beta2 = parse_double(key, value);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double(key, value);
    } else if (key == "epochs") {
      cfg.epochs = parse_size(key, value);
    } else if (key == "batch") {
      if (value == "full") {
        cfg.batch_size = 0;
      } else {
        cfg.batch_size = parse_size(key, value);
        if (cfg.batch_size == 0) {
          throw ConfigError("config key 'batch': must be 'full' or a positive size");
        }
      }
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "split_fraction") {
      cfg.split_fraction = parse_double(key, value);
    } else if (key == "split_mode") {
      cfg.split_mode = split_mode_from_string(value);
    } else if (key == "scaling") {
      cfg.scaling = scaler_kind_from_string(value);
    } else if (key == "model_out") {
      cfg.model_out = value;
    } else if (key == "report_out") {
      cfg.report_out = value;
    } else if (key == "plot_out") {
      cfg.plot_out = value;
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  cfg.validate();
  return cfg;
}

} // namespace gwmlp
