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

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <utility>

#include "CLI11.hpp"
#include "config.hpp"
#include "ronmf/ronmf.hpp"

namespace ronmf::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string dashed(std::string name) {
  for (char& c : name) {
    if (c == '_') c = '-';
  }
  return name;
}

// Hyperparameter flags shared by the training commands.
class ParamFlags {
 public:
  void attach(CLI::App* app) {
    app->add_option("--config", config_path_, "JSON configuration file");
    for (const ConfigKey& key : config_keys()) {
      const std::string flag = "--" + dashed(key.name);
      Entry e{&key, nullptr, std::make_unique<std::string>()};
      if (key.type == KeyType::kBool) {
        e.option = app->add_flag(flag, key.help);
      } else {
        e.option = app->add_option(flag, *e.text, key.help);
      }
      entries_.push_back(std::move(e));
    }
  }

  // File values overlaid with flag values.
  json merged() const {
    json base = config_path_.empty() ? json::object()
                                     : load_config_file(config_path_);
    json overrides = json::object();
    for (const Entry& e : entries_) {
      if (e.option->count() == 0) continue;
      overrides[e.key->name] = e.key->type == KeyType::kBool
                                   ? json(true)
                                   : parse_flag_value(*e.key, *e.text);
    }
    return merge_config(std::move(base), overrides);
  }

  const std::string& config_path() const { return config_path_; }

 private:
  struct Entry {
    const ConfigKey* key;
    CLI::Option* option;
    std::unique_ptr<std::string> text;
  };
  std::string config_path_;
  std::vector<Entry> entries_;
};

struct Dataset {
  Matrix V;
  std::optional<Matrix> clean;
  std::string data_path;
  std::string clean_path;
};

Dataset load_dataset(const std::string& data_path, const std::string& clean_path) {
  Dataset d;
  d.data_path = data_path;
  d.clean_path = clean_path;
  d.V = read_matrix(data_path).data;
  if (!clean_path.empty()) {
    d.clean = read_matrix(clean_path).data;
    if (d.clean->rows() != d.V.rows() || d.clean->cols() != d.V.cols()) {
      throw DimensionError("clean matrix is " + std::to_string(d.clean->rows()) +
                           "x" + std::to_string(d.clean->cols()) +
                           " but data is " + std::to_string(d.V.rows()) + "x" +
                           std::to_string(d.V.cols()));
    }
  }
  return d;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
}

bool is_online(const std::string& solver) {
  return solver == "opgd" || solver == "oadmm";
}

struct Job {
  std::string solver;
  fs::path out;
  RunConfig cfg;
  std::string setting;
  bool reproducible = false;
};

json run_echo(const Job& job, const Dataset& d, const std::string& command) {
  json j;
  j["command"] = command;
  j["solver"] = job.solver;
  j["setting"] = job.setting;
  j["data"] = d.data_path;
  j["clean"] = d.clean_path.empty() ? json(nullptr) : json(d.clean_path);
  j["reproducible"] = job.reproducible;
  j["params"] = to_json(job.cfg, d.V.rows());
  return j;
}

// Puts stream-ordered columns back in source order when every source
// column appears exactly once.
Matrix to_source_order(const Matrix& X, const PreparedStream& stream,
                       Index replicate) {
  if (replicate != 1) return X;
  Matrix out(X.rows(), X.cols());
  for (Index i = 0; i < stream.size(); ++i) {
    out.col(stream.order[static_cast<std::size_t>(i)]) = X.col(i);
  }
  return out;
}

ResultRow train_online(const Job& job, const Dataset& d, std::ostream& out) {
  const RunConfig& cfg = job.cfg;
  const HyperParams& p = cfg.params;
  fs::create_directories(job.out);
  write_json(job.out / "run_config.json", run_echo(job, d, "train"));

  const PreparedStream stream =
      prepare_stream(d.V, cfg.replicate, cfg.shuffle, p.seed, cfg.normalize);
  OnlineState state = init_state(d.V.rows(), p, HistoryMode::kCodes);
  StepOptions opts;
  opts.encode_solver = job.solver == "opgd" ? EncodeSolver::kPgd : EncodeSolver::kAdmm;
  opts.dict_solver = job.solver == "opgd" ? DictSolver::kPgd : DictSolver::kAdmm;
  opts.h_init = cfg.h_init;
  opts.threads = effective_threads(cfg);

  TraceCsvWriter trace(job.out / "trace.csv", job.reproducible);
  MatrixSource source(d.V, stream);
  std::optional<MatrixSource> clean_source;
  if (d.clean) clean_source.emplace(*d.clean, stream);
  run_stream(state, source, opts, [&](const TraceRecord& r) { trace.write(r); },
             clean_source ? &*clean_source : nullptr);

  const Matrix H = coefficient_history(state);
  write_matrix(job.out / "W.mat", state.dict.W, p.seed);
  write_matrix(job.out / "H.mat", to_source_order(H, stream, cfg.replicate), p.seed);
  write_matrix(job.out / "R.mat",
               to_source_order(outlier_history(state), stream, cfg.replicate),
               p.seed);

  ResultRow row{job.solver, job.setting, kNaN,
                job.reproducible ? 0.0 : state.elapsed_s, p.seed};
  if (d.clean) {
    row.psnr_db = psnr_online(stream.materialize(*d.clean), state.dict.W, H);
    write_results(job.out / "results.csv", {row});
  }
  out << job.solver << ": " << state.t << " samples, "
      << state.trace.size() << " steps, final surrogate "
      << format_real(state.trace.empty() ? kNaN : state.trace.back().surrogate_loss);
  if (d.clean) out << ", psnr " << format_real(row.psnr_db) << " dB";
  out << '\n';
  return row;
}

ResultRow train_batch(const Job& job, const Dataset& d, std::ostream& out) {
  const RunConfig& cfg = job.cfg;
  const HyperParams& p = cfg.params;
  fs::create_directories(job.out);
  write_json(job.out / "run_config.json", run_echo(job, d, "train-batch"));

  const PreparedStream stream =
      prepare_stream(d.V, cfg.replicate, cfg.shuffle, p.seed, cfg.normalize);
  const Matrix V = stream.materialize(d.V);
  std::optional<Matrix> clean;
  if (d.clean) clean = stream.materialize(*d.clean);

  BatchOptions opts;
  opts.max_outer = cfg.max_outer;
  opts.tol = cfg.tol;
  opts.clean = clean ? &*clean : nullptr;
  const auto start = std::chrono::steady_clock::now();
  const BatchResult res = job.solver == "bpgd" ? bpgd(V, p, opts) : badmm(V, p, opts);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  TraceCsvWriter trace(job.out / "trace.csv", job.reproducible);
  for (const TraceRecord& r : res.trace) trace.write(r);
  write_matrix(job.out / "W.mat", res.W, p.seed);
  write_matrix(job.out / "H.mat", to_source_order(res.H, stream, cfg.replicate), p.seed);
  write_matrix(job.out / "R.mat", to_source_order(res.R, stream, cfg.replicate), p.seed);

  ResultRow row{job.solver, job.setting, kNaN, job.reproducible ? 0.0 : elapsed,
                p.seed};
  if (clean) {
    row.psnr_db = psnr_batch(*clean, res.W, res.H);
    write_results(job.out / "results.csv", {row});
  }
  out << job.solver << ": " << res.iterations << " iterations"
      << (res.converged ? " (converged)" : "") << ", final objective "
      << format_real(res.objective.back());
  if (clean) out << ", psnr " << format_real(row.psnr_db) << " dB";
  out << '\n';
  return row;
}

RunConfig make_config(const ParamFlags& flags, const Dataset& d) {
  return resolve_config(flags.merged(), d.V.rows(), d.V.cols());
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Online robust nonnegative matrix factorization", "ronmf"};
  app.require_subcommand(1);

  // generate
  SynthSpec synth;
  std::string gen_out;
  bool no_noise = false;
  CLI::App* gen = app.add_subcommand("generate", "Write a synthetic dataset");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--F", synth.F, "rows")->capture_default_str();
  gen->add_option("--K-true", synth.K_true, "rank of the clean data")->capture_default_str();
  gen->add_option("--N", synth.N, "samples")->capture_default_str();
  gen->add_option("--nu", synth.nu, "fraction of contaminated samples")->capture_default_str();
  gen->add_option("--nu-tilde", synth.nu_tilde, "outlier density per sample")
      ->capture_default_str();
  gen->add_flag("--no-noise", no_noise, "omit the standard normal noise");
  gen->add_option("--seed", synth.seed, "seed")->capture_default_str();

  // contaminate
  std::string con_in, con_out;
  double con_nu = 0.7, con_nu_tilde = 0.1, con_M = 1.0;
  std::uint64_t con_seed = 0;
  CLI::App* con = app.add_subcommand("contaminate", "Add sparse outliers to clean data");
  con->add_option("--input", con_in, "clean matrix file")->required();
  con->add_option("--out", con_out, "output directory")->required();
  con->add_option("--nu", con_nu, "fraction of contaminated samples")->capture_default_str();
  con->add_option("--nu-tilde", con_nu_tilde, "outlier density per sample")
      ->capture_default_str();
  con->add_option("--M", con_M, "outlier magnitude bound")->capture_default_str();
  con->add_option("--seed", con_seed, "seed")->capture_default_str();

  // train / train-batch
  std::string tr_solver, tr_data, tr_clean, tr_out, tr_setting = "default";
  bool tr_repro = false;
  ParamFlags tr_flags;
  CLI::App* train = app.add_subcommand("train", "Stream a dataset through an online solver");
  train->add_option("--solver", tr_solver, "opgd or oadmm")
      ->required()
      ->check(CLI::IsMember({"opgd", "oadmm"}));
  CLI::App* train_b =
      app.add_subcommand("train-batch", "Factorize a dataset with a batch solver");
  train_b->add_option("--solver", tr_solver, "bpgd or badmm")
      ->required()
      ->check(CLI::IsMember({"bpgd", "badmm"}));
  ParamFlags trb_flags;
  for (auto [sub, flags] : {std::pair{train, &tr_flags}, std::pair{train_b, &trb_flags}}) {
    sub->add_option("--data", tr_data, "data matrix file")->required();
    sub->add_option("--clean", tr_clean, "clean matrix file for regret and PSNR");
    sub->add_option("--out", tr_out, "run directory")->required();
    sub->add_option("--setting", tr_setting, "label for results.csv");
    sub->add_flag("--reproducible", tr_repro,
                  "write wall-clock columns as 0 for byte-identical reruns");
    flags->attach(sub);
  }

  // reconstruct
  std::string rc_dict, rc_coef, rc_out;
  CLI::App* rc = app.add_subcommand("reconstruct", "Write W H");
  rc->add_option("--dict", rc_dict, "dictionary file")->required();
  rc->add_option("--coef", rc_coef, "coefficient file")->required();
  rc->add_option("--out", rc_out, "output matrix file")->required();

  // eval-psnr
  std::string ev_clean, ev_dict, ev_coef, ev_results, ev_alg = "unknown",
                                                     ev_setting = "default";
  CLI::App* ev = app.add_subcommand("eval-psnr", "PSNR of W H against clean data");
  ev->add_option("--clean", ev_clean, "clean matrix file")->required();
  ev->add_option("--dict", ev_dict, "dictionary file")->required();
  ev->add_option("--coef", ev_coef, "coefficient file")->required();
  ev->add_option("--results", ev_results, "also write a results CSV here");
  ev->add_option("--algorithm", ev_alg, "algorithm column of the results row");
  ev->add_option("--setting", ev_setting, "setting column of the results row");

  // compare
  std::string cmp_data, cmp_clean, cmp_out, cmp_setting = "default";
  std::vector<std::string> cmp_solvers{"opgd", "oadmm", "bpgd", "badmm"};
  bool cmp_repro = false;
  ParamFlags cmp_flags;
  CLI::App* cmp = app.add_subcommand("compare", "Run several solvers on one dataset");
  cmp->add_option("--data", cmp_data, "data matrix file")->required();
  cmp->add_option("--clean", cmp_clean, "clean matrix file");
  cmp->add_option("--out", cmp_out, "output directory")->required();
  cmp->add_option("--solvers", cmp_solvers, "comma-separated solver list")
      ->delimiter(',')
      ->check(CLI::IsMember({"opgd", "oadmm", "bpgd", "badmm"}))
      ->capture_default_str();
  cmp->add_option("--setting", cmp_setting, "label for the summary rows");
  cmp->add_flag("--reproducible", cmp_repro, "write wall-clock columns as 0");
  cmp_flags.attach(cmp);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (gen->parsed()) {
      synth.noise = !no_noise;
      synth.validate();
      const SynthData data = generate_synthetic(synth);
      const fs::path dir(gen_out);
      fs::create_directories(dir);
      write_matrix(dir / "V.mat", data.V, synth.seed);
      write_matrix(dir / "V_clean.mat", data.V_clean, synth.seed);
      write_matrix(dir / "R_true.mat", data.R_true, synth.seed);
      write_json(dir / "run_config.json",
                 json{{"command", "generate"}, {"F", synth.F},
                      {"K_true", synth.K_true}, {"N", synth.N},
                      {"nu", synth.nu}, {"nu_tilde", synth.nu_tilde},
                      {"noise", synth.noise}, {"seed", synth.seed}});
      out << "wrote " << synth.F << "x" << synth.N << " dataset to " << dir.string()
          << '\n';
    } else if (con->parsed()) {
      const MatrixFile clean = read_matrix(con_in);
      const Contaminated c = contaminate(clean.data, con_nu, con_nu_tilde, con_M, con_seed);
      const fs::path dir(con_out);
      fs::create_directories(dir);
      write_matrix(dir / "V.mat", c.V, con_seed);
      write_matrix(dir / "R_true.mat", c.R_true, con_seed);
      write_json(dir / "run_config.json",
                 json{{"command", "contaminate"}, {"input", con_in},
                      {"nu", con_nu}, {"nu_tilde", con_nu_tilde},
                      {"M", con_M}, {"seed", con_seed}});
      out << "wrote contaminated data to " << dir.string() << '\n';
    } else if (train->parsed() || train_b->parsed()) {
      const Dataset d = load_dataset(tr_data, tr_clean);
      Job job{tr_solver, tr_out,
              make_config(train->parsed() ? tr_flags : trb_flags, d), tr_setting,
              tr_repro};
      if (is_online(tr_solver)) {
        train_online(job, d, out);
      } else {
        train_batch(job, d, out);
      }
    } else if (rc->parsed()) {
      const Matrix W = read_matrix(rc_dict).data;
      const Matrix H = read_matrix(rc_coef).data;
      write_matrix(rc_out, reconstruct(W, H), 0);
      out << "wrote " << W.rows() << "x" << H.cols() << " reconstruction\n";
    } else if (ev->parsed()) {
      const Matrix clean = read_matrix(ev_clean).data;
      const MatrixFile W = read_matrix(ev_dict);
      const Matrix H = read_matrix(ev_coef).data;
      const double psnr = psnr_batch(clean, W.data, H);
      out << "psnr_db " << format_real(psnr) << '\n';
      if (!ev_results.empty()) {
        write_results(ev_results, {ResultRow{ev_alg, ev_setting, psnr, 0.0, W.seed}});
      }
    } else if (cmp->parsed()) {
      const Dataset d = load_dataset(cmp_data, cmp_clean);
      const RunConfig cfg = make_config(cmp_flags, d);
      const fs::path dir(cmp_out);
      fs::create_directories(dir);
      json echo;
      echo["command"] = "compare";
      echo["solvers"] = cmp_solvers;
      echo["setting"] = cmp_setting;
      echo["data"] = d.data_path;
      echo["clean"] = d.clean_path.empty() ? json(nullptr) : json(d.clean_path);
      echo["reproducible"] = cmp_repro;
      echo["params"] = to_json(cfg, d.V.rows());
      write_json(dir / "run_config.json", echo);
      std::vector<ResultRow> rows;
      for (const std::string& solver : cmp_solvers) {
        Job job{solver, dir / solver, cfg, cmp_setting, cmp_repro};
        rows.push_back(is_online(solver) ? train_online(job, d, out)
                                         : train_batch(job, d, out));
      }
      write_results(dir / "summary.csv", rows);
      out << "wrote " << rows.size() << " summary rows to "
          << (dir / "summary.csv").string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ronmf::cli
