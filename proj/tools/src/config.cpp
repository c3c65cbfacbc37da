// Copyright 2026 The ronmf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "ronmf/datagen.hpp"

namespace ronmf::cli {

using nlohmann::json;

namespace {

const ConfigKey* find_key(const std::string& name) {
  for (const ConfigKey& k : config_keys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

double get_real(const json& cfg, const std::string& key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

Index get_int(const json& cfg, const std::string& key, Index fallback) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (v.is_number_integer()) return v.get<Index>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9.0e15) return static_cast<Index>(d);
  }
  throw ConfigError("'" + key + "' must be an integer");
}

std::string get_string(const json& cfg, const std::string& key,
                       const std::string& fallback) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

bool get_bool(const json& cfg, const std::string& key, bool fallback) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (!v.is_boolean()) throw ConfigError("'" + key + "' must be true or false");
  return v.get<bool>();
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"lambda", KeyType::kReal, "l1 weight on outliers (default 1/sqrt(F))"},
      {"K", KeyType::kInt, "dictionary size"},
      {"tau", KeyType::kInt, "mini-batch size (default max(1, round(5e-5 N)))"},
      {"kappa", KeyType::kReal, "sets kappa_bar and kappa_tilde"},
      {"kappa_bar", KeyType::kReal, "encode PGD step fraction"},
      {"kappa_tilde", KeyType::kReal, "dictionary PGD step fraction"},
      {"rho", KeyType::kReal, "sets rho1, rho2 and rho3"},
      {"rho1", KeyType::kReal, "ADMM penalty for h"},
      {"rho2", KeyType::kReal, "ADMM penalty for r"},
      {"rho3", KeyType::kReal, "ADMM penalty for W"},
      {"eps_encode", KeyType::kReal, "encode relative tolerance"},
      {"max_iter_encode", KeyType::kInt, "encode iteration cap"},
      {"eps_dict", KeyType::kReal, "dictionary update relative tolerance"},
      {"max_iter_dict", KeyType::kInt, "dictionary update iteration cap"},
      {"nu1", KeyType::kReal, "Tikhonov weight on h"},
      {"nu2", KeyType::kReal, "Tikhonov weight on r"},
      {"lambda_h_l1", KeyType::kReal, "l1 weight on h"},
      {"seed", KeyType::kInt, "master seed"},
      {"dict_constraint", KeyType::kString,
       "unit_nonneg_l2_ball, nonneg_orthant, probability_simplex or "
       "elastic_net_ball"},
      {"gamma1", KeyType::kReal, "elastic-net l1 weight"},
      {"gamma2", KeyType::kReal, "elastic-net l2 weight"},
      {"outlier", KeyType::kString, "signed_box, nonneg_box or unbounded"},
      {"M", KeyType::kReal, "outlier magnitude bound"},
      {"h_init", KeyType::kString, "zeros or uniform"},
      {"threads", KeyType::kInt, "encode threads (capped by RONMF_THREADS)"},
      {"max_outer", KeyType::kInt, "batch outer iteration cap"},
      {"tol", KeyType::kReal, "batch relative tolerance"},
      {"replicate", KeyType::kInt, "stream the data this many times"},
      {"shuffle", KeyType::kBool, "shuffle the stream"},
      {"normalize", KeyType::kBool, "scale each sample to unit maximum"},
  };
  return keys;
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  json cfg;
  try {
    cfg = text.find_first_not_of(" \t\r\n") == std::string::npos
              ? json::object()
              : json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..."
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (!cfg.is_object()) {
    throw ConfigError(path.string() + ": top level must be a JSON object");
  }
  return cfg;
}

json merge_config(json base, const json& overrides) {
  for (const auto& [k, v] : overrides.items()) base[k] = v;
  return base;
}

json parse_flag_value(const ConfigKey& key, const std::string& text) {
  const auto bad = [&](const char* what) {
    return ConfigError("--" + key.name + ": '" + text + "' is not " + what);
  };
  switch (key.type) {
    case KeyType::kReal: {
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (text.empty() || end != text.c_str() + text.size()) throw bad("a number");
      return v;
    }
    case KeyType::kInt: {
      long long v = 0;
      const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || p != text.data() + text.size()) {
        throw bad("an integer");
      }
      return v;
    }
    case KeyType::kBool:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw bad("true or false");
    case KeyType::kString:
      return text;
  }
  return text;
}

RunConfig resolve_config(const json& merged, Index F, Index N) {
  if (!merged.is_object()) throw ConfigError("configuration must be an object");
  std::vector<std::string> unknown;
  for (const auto& [k, v] : merged.items()) {
    if (!find_key(k)) unknown.push_back(k);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown configuration key";
    msg += unknown.size() > 1 ? "s: " : ": ";
    for (std::size_t i = 0; i < unknown.size(); ++i) {
      if (i > 0) msg += ", ";
      msg += unknown[i];
    }
    throw ConfigError(msg);
  }

  RunConfig cfg;
  HyperParams& p = cfg.params;
  if (merged.contains("lambda")) p.lambda = get_real(merged, "lambda", 0.0);
  p.K = get_int(merged, "K", p.K);
  cfg.tau_explicit = merged.contains("tau");
  p.tau = cfg.tau_explicit ? get_int(merged, "tau", 1)
                           : psnr_rule_of_thumb_tau(std::max<Index>(N, 1));

  const double kappa = get_real(merged, "kappa", 0.7);
  p.kappa_bar = get_real(merged, "kappa_bar", kappa);
  p.kappa_tilde = get_real(merged, "kappa_tilde", kappa);
  const double rho = get_real(merged, "rho", 1.0);
  p.rho1 = get_real(merged, "rho1", rho);
  p.rho2 = get_real(merged, "rho2", rho);
  p.rho3 = get_real(merged, "rho3", rho);

  p.eps_encode = get_real(merged, "eps_encode", p.eps_encode);
  p.max_iter_encode = get_int(merged, "max_iter_encode", p.max_iter_encode);
  p.eps_dict = get_real(merged, "eps_dict", p.eps_dict);
  p.max_iter_dict = get_int(merged, "max_iter_dict", p.max_iter_dict);
  p.nu1 = get_real(merged, "nu1", p.nu1);
  p.nu2 = get_real(merged, "nu2", p.nu2);
  p.lambda_h_l1 = get_real(merged, "lambda_h_l1", p.lambda_h_l1);

  const Index seed = get_int(merged, "seed", 0);
  if (seed < 0) throw ConfigError("seed must be >= 0, got " + std::to_string(seed));
  p.seed = static_cast<std::uint64_t>(seed);

  try {
    p.constraint.kind = dict_constraint_from_string(
        get_string(merged, "dict_constraint", to_string(p.constraint.kind)));
    p.constraint.outlier.kind = outlier_kind_from_string(
        get_string(merged, "outlier", to_string(p.constraint.outlier.kind)));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  p.constraint.gamma1 = get_real(merged, "gamma1", p.constraint.gamma1);
  p.constraint.gamma2 = get_real(merged, "gamma2", p.constraint.gamma2);
  p.constraint.outlier.bound = get_real(merged, "M", 1.0);
  if (std::isinf(p.constraint.outlier.bound) && p.constraint.outlier.bound > 0) {
    p.constraint.outlier.kind = OutlierKind::kUnbounded;
    p.constraint.outlier.bound = 1.0;
  }

  const std::string h_init = get_string(merged, "h_init", "zeros");
  if (h_init == "zeros") {
    cfg.h_init = InitMode::kZeros;
  } else if (h_init == "uniform") {
    cfg.h_init = InitMode::kUniform01;
  } else {
    throw ConfigError("h_init must be 'zeros' or 'uniform', got '" + h_init + "'");
  }

  const Index threads = get_int(merged, "threads", 1);
  if (threads < 1) {
    throw ConfigError("threads must be >= 1, got " + std::to_string(threads));
  }
  cfg.threads = static_cast<unsigned>(std::min<Index>(threads, 1024));
  cfg.max_outer = get_int(merged, "max_outer", cfg.max_outer);
  if (cfg.max_outer < 1) {
    throw ConfigError("max_outer must be >= 1, got " + std::to_string(cfg.max_outer));
  }
  cfg.tol = get_real(merged, "tol", cfg.tol);
  if (!(cfg.tol > 0.0)) {
    throw ConfigError("tol must be > 0, got " + std::to_string(cfg.tol));
  }
  cfg.replicate = get_int(merged, "replicate", 1);
  if (cfg.replicate < 1) {
    throw ConfigError("replicate must be >= 1, got " + std::to_string(cfg.replicate));
  }
  cfg.shuffle = get_bool(merged, "shuffle", false);
  cfg.normalize = get_bool(merged, "normalize", false);

  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (F < 1) throw ConfigError("data must have at least one row");
  return cfg;
}

json to_json(const RunConfig& cfg, Index F) {
  const HyperParams& p = cfg.params;
  json out = json::object();
  out["lambda"] = p.lambda_for(F);
  out["K"] = p.K;
  out["tau"] = p.tau;
  out["kappa_bar"] = p.kappa_bar;
  out["kappa_tilde"] = p.kappa_tilde;
  out["rho1"] = p.rho1;
  out["rho2"] = p.rho2;
  out["rho3"] = p.rho3;
  out["eps_encode"] = p.eps_encode;
  out["max_iter_encode"] = p.max_iter_encode;
  out["eps_dict"] = p.eps_dict;
  out["max_iter_dict"] = p.max_iter_dict;
  out["nu1"] = p.nu1;
  out["nu2"] = p.nu2;
  out["lambda_h_l1"] = p.lambda_h_l1;
  out["seed"] = p.seed;
  out["dict_constraint"] = to_string(p.constraint.kind);
  out["gamma1"] = p.constraint.gamma1;
  out["gamma2"] = p.constraint.gamma2;
  out["outlier"] = to_string(p.constraint.outlier.kind);
  out["M"] = p.constraint.outlier.bound;
  out["h_init"] = cfg.h_init == InitMode::kZeros ? "zeros" : "uniform";
  out["threads"] = cfg.threads;
  out["max_outer"] = cfg.max_outer;
  out["tol"] = cfg.tol;
  out["replicate"] = cfg.replicate;
  out["shuffle"] = cfg.shuffle;
  out["normalize"] = cfg.normalize;
  return out;
}

unsigned effective_threads(const RunConfig& cfg) {
  unsigned n = cfg.threads;
  if (const char* env = std::getenv("RONMF_THREADS")) {
    unsigned cap = 0;
    const std::string s(env);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && p == s.data() + s.size() && cap >= 1) {
      n = std::min(n, cap);
    }
  }
  return std::max(1u, n);
}

}  // namespace ronmf::cli
