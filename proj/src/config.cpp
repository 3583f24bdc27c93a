// Copyright 2026 The rmt-lab Authors.
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


#include "rmtlab/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rmtlab/error.hpp"
#include "rmtlab/format.hpp"

namespace rmtlab {

namespace {

constexpr std::string_view kKeys[] = {
    "kind",  "n", "dist",   "truncate", "delta0",        "seed",          "trials",    "z",
    "epsilons", "k", "z_grid", "exclude_inner", "exclude_outer", "tolerance", "thresholds",
};

[[noreturn]] void type_error(std::string_view key, std::string_view expected) {
  throw Error(ErrorCode::kParse,
              "key '" + std::string(key) + "': expected " + std::string(expected));
}

std::string scalar(const YAML::Node& node, std::string_view key, std::string_view expected) {
  if (!node.IsScalar()) type_error(key, expected);
  return node.Scalar();
}

double as_double(const YAML::Node& node, std::string_view key) {
  const std::string s = scalar(node, key, "a number");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    type_error(key, "a finite number");
  }
  return v;
}

std::uint64_t as_uint(const YAML::Node& node, std::string_view key) {
  const std::string s = scalar(node, key, "a nonnegative integer");
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) type_error(key, "a nonnegative integer");
  return v;
}

bool as_bool(const YAML::Node& node, std::string_view key) {
  const std::string s = scalar(node, key, "true or false");
  if (s == "true") return true;
  if (s == "false") return false;
  type_error(key, "true or false");
}

Complex as_complex(const YAML::Node& node, std::string_view key) {
  if (node.IsScalar()) return {as_double(node, key), 0.0};
  if (!node.IsSequence() || node.size() != 2) type_error(key, "a number or [re, im]");
  return {as_double(node[0], key), as_double(node[1], key)};
}

std::vector<double> as_doubles(const YAML::Node& node, std::string_view key) {
  if (!node.IsSequence()) type_error(key, "a list of numbers");
  std::vector<double> out;
  for (const auto& item : node) out.push_back(as_double(item, key));
  return out;
}

std::vector<Complex> as_complexes(const YAML::Node& node, std::string_view key) {
  if (!node.IsSequence()) type_error(key, "a list of complex numbers");
  std::vector<Complex> out;
  for (const auto& item : node) out.push_back(as_complex(item, key));
  return out;
}

void set_key(ExperimentConfig& c, std::string_view key, const YAML::Node& v) {
  if (key == "kind") {
    c.kind = parse_experiment_kind(scalar(v, key, "an experiment kind"));
  } else if (key == "n") {
    c.ensemble.n = as_uint(v, key);
  } else if (key == "dist") {
    c.ensemble.dist = EntryDistribution::parse(scalar(v, key, "a distribution name"));
  } else if (key == "truncate") {
    c.ensemble.truncate = as_bool(v, key);
  } else if (key == "delta0") {
    c.ensemble.epsilon_exponent = as_double(v, key);
  } else if (key == "seed") {
    c.ensemble.master_seed = as_uint(v, key);
  } else if (key == "trials") {
    c.trials = as_uint(v, key);
  } else if (key == "z") {
    c.z = as_complex(v, key);
  } else if (key == "epsilons") {
    c.epsilons = as_doubles(v, key);
  } else if (key == "k") {
    c.k = as_double(v, key);
  } else if (key == "z_grid") {
    c.z_grid = as_complexes(v, key);
  } else if (key == "exclude_inner") {
    c.exclude_inner = as_double(v, key);
  } else if (key == "exclude_outer") {
    c.exclude_outer = as_double(v, key);
  } else if (key == "tolerance") {
    c.tolerance = as_double(v, key);
  } else if (key == "thresholds") {
    c.thresholds = as_doubles(v, key);
  } else {
    throw Error(ErrorCode::kParse, "unknown config key '" + std::string(key) + "'");
  }
}

YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed config: ") + e.what());
  }
}

std::string complex_text(Complex z) {
  return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kCircularLaw: return "circular-law";
    case ExperimentKind::kSminTail: return "smin-tail";
    case ExperimentKind::kNormBound: return "norm-bound";
    case ExperimentKind::kPotentialConvergence: return "potential-convergence";
    case ExperimentKind::kHermitianEsdStability: return "hermitian-esd-stability";
    case ExperimentKind::kSingularity: return "singularity";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : {ExperimentKind::kCircularLaw, ExperimentKind::kSminTail, ExperimentKind::kNormBound,
                 ExperimentKind::kPotentialConvergence, ExperimentKind::kHermitianEsdStability,
                 ExperimentKind::kSingularity}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::kParse, "unknown experiment kind '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  ensemble.validate();
  if (trials < 1) throw Error(ErrorCode::kBadSpec, "trials must be >= 1");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] > epsilons[i - 1]))) {
      throw Error(ErrorCode::kBadSpec, "epsilons must be positive and strictly increasing");
    }
  }
  if (kind == ExperimentKind::kSminTail && epsilons.empty()) {
    throw Error(ErrorCode::kBadSpec, "smin-tail needs at least one epsilon");
  }
  if (kind == ExperimentKind::kPotentialConvergence && z_grid.empty()) {
    throw Error(ErrorCode::kBadSpec, "potential-convergence needs a z grid");
  }
  if (kind == ExperimentKind::kSingularity && ensemble.dist.kind() != DistKind::kRademacher) {
    throw Error(ErrorCode::kBadSpec, "singularity experiments use rademacher entries");
  }
  if (!(exclude_inner <= exclude_outer)) {
    throw Error(ErrorCode::kBadSpec, "exclude_inner must not exceed exclude_outer");
  }
  if (!(k > 0.0) || !(tolerance > 0.0)) {
    throw Error(ErrorCode::kBadSpec, "k and tolerance must be positive");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  const YAML::Node root = load_yaml(text);
  ExperimentConfig c;
  if (root.IsNull()) return c;
  if (!root.IsMap()) throw Error(ErrorCode::kParse, "config must be a key/value mapping");
  std::set<std::string> seen;
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::kParse, "duplicate config key '" + key + "'");
    }
    set_key(c, key, kv.second);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(ExperimentConfig& config, std::string_view key, std::string_view value) {
  if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
    throw Error(ErrorCode::kParse, "unknown config key '" + std::string(key) + "'");
  }
  set_key(config, key, load_yaml(value));
}

std::string canonical_config(const ExperimentConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out.append(key).append(": ").append(value).push_back('\n');
  };
  auto list = [](const auto& xs, auto fmt) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ", ";
      s += fmt(xs[i]);
    }
    return s + "]";
  };
  line("kind", std::string(to_string(c.kind)));
  line("n", std::to_string(c.ensemble.n));
  line("dist", c.ensemble.dist.name());
  line("truncate", c.ensemble.truncate ? "true" : "false");
  line("delta0", format_double(c.ensemble.epsilon_exponent));
  line("seed", std::to_string(c.ensemble.master_seed));
  line("trials", std::to_string(c.trials));
  line("z", complex_text(c.z));
  line("epsilons", list(c.epsilons, format_double));
  line("k", format_double(c.k));
  line("z_grid", list(c.z_grid, complex_text));
  line("exclude_inner", format_double(c.exclude_inner));
  line("exclude_outer", format_double(c.exclude_outer));
  line("tolerance", format_double(c.tolerance));
  line("thresholds", list(c.thresholds, format_double));
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  return fnv1a64(canonical_config(config));
}

std::string hash_hex(std::uint64_t h) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = kDigits[h & 0xf];
  return s;
}

}  // namespace rmtlab
