// Copyright 2026 The EikGCRL Authors
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

// Acceptance runner: one pass/fail line per criterion.
//   acceptance <criterion 1..9> <workdir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eikgcrl/cli/commands.h"
#include "eikgcrl/cli/run_manifest.h"
#include "eikgcrl/cli/suites.h"
#include "eikgcrl/cli/trainer.h"
#include "eikgcrl/diffcore/adam.h"
#include "eikgcrl/diffcore/checkpoint.h"
#include "eikgcrl/evalkit/export.h"
#include "eikgcrl/mazeworld/dataset.h"
#include "eikgcrl/oracle/agreement.h"
#include "eikgcrl/oracle/distance_field.h"
#include "eikgcrl/policyextract/awr.h"
#include "eikgcrl/valuelearn/losses.h"
#include "eikgcrl/valuelearn/tabular.h"

namespace eikgcrl {
namespace {

namespace fs = std::filesystem;
using cli::Algo;
using diffcore::Matrix;
using diffcore::ParameterSet;

struct Verdict {
  bool passed = false;
  std::string detail;
};

class Clock {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Desk-scale training setup shared by the training criteria.
valuelearn::TrainConfig DeskConfig(std::uint64_t seed) {
  valuelearn::TrainConfig c;
  c.hidden_dims = {64, 64};
  c.batch_size = 256;
  c.eval_interval = 2000;
  c.seed = seed;
  return c;
}

constexpr std::int64_t kSteps = 20000;
constexpr int kMediumNavigateTraj = 2000;
constexpr int kGiantStitchTraj = 5000;

mazeworld::Dataset MakeData(const std::string& maze, mazeworld::DatasetType type,
                            int n_traj, std::uint64_t seed) {
  mazeworld::GeneratorParams gp;
  gp.type = type;
  gp.n_traj = n_traj;
  gp.max_segment_cells = 4;
  gp.seed = seed;
  return mazeworld::GenerateDataset(mazeworld::BuiltinMaze(maze), gp);
}

Verdict FromSuite(const cli::SuiteResult& r, double limit_s) {
  Verdict v;
  v.passed = r.passed && r.seconds < limit_s;
  for (const std::string& line : r.lines) v.detail += line + "; ";
  v.detail += Fmt("%.1f s", r.seconds) + Fmt(" (limit %.0f s)", limit_s);
  return v;
}

// --- closed forms -------------------------------------------------------

struct ClosedForm {
  std::string what;
  double got;
  double want;
};

double LinearPenalty(bool hjb, double gx, double gy, double speed, double dx,
                     double dy) {
  // V(s, g) = w . [n(s), n(g)] with value_scale 1, so grad_s V = scale * w_s.
  const auto maze = mazeworld::BuiltinMaze("medium");
  const auto norm = valuelearn::InputNorm::ForMaze(maze);
  ParameterSet p;
  p.Add("w0", {4, 1},
        (Matrix(4, 1) << gx / norm.scale, gy / norm.scale, 0.3, -0.2).finished());
  p.Add("b0", {1}, Matrix::Constant(1, 1, 0.1));
  const diffcore::MlpSpec spec =
      valuelearn::ValueSpec({}, diffcore::Activation::kTanh);
  const valuelearn::ValueField field(spec, norm, 1.0, p, p);
  valuelearn::ValueBatch b;
  b.states = (Matrix(2, 2) << 6, 6, 10, 21).finished();
  b.next_states = b.states;
  b.next_states.col(0).array() += dx;
  b.next_states.col(1).array() += dy;
  b.goals = (Matrix(2, 2) << 22, 22, 6, 14).finished();
  b.speeds = diffcore::Vector::Constant(2, speed);
  return hjb ? valuelearn::HjbPenalty(field, b).loss
             : valuelearn::EikonalPenalty(field, b).loss;
}

Verdict ClosedForms() {
  Clock clock;
  std::vector<ClosedForm> rows;
  rows.push_back({"expectile(2)", valuelearn::ExpectileLoss(2.0, 0.7), 2.8});
  rows.push_back({"expectile(-2)", valuelearn::ExpectileLoss(-2.0, 0.7), 1.2});

  valuelearn::TrainConfig c;
  c.speed_profile = valuelearn::SpeedKind::kExp;
  const auto profile =
      valuelearn::SpeedProfile::For(c, mazeworld::BuiltinMaze("medium"));
  rows.push_back({"exp speed at d_min", valuelearn::Speed(profile.d_min, profile),
                  0.1 + 0.9 * std::exp(-1.0)});
  rows.push_back({"exp speed at d_max", valuelearn::Speed(profile.d_max, profile),
                  1.0});

  rows.push_back({"eikonal (0.6,0.8) S=1", LinearPenalty(false, 0.6, 0.8, 1, 0, 0), 0.0});
  rows.push_back({"eikonal (2,0) S=0.5", LinearPenalty(false, 2, 0, 0.5, 0, 0), 0.0});
  rows.push_back({"eikonal 0 S=1", LinearPenalty(false, 0, 0, 1, 0, 0), 1.0});
  rows.push_back({"eikonal (3,4) S=1", LinearPenalty(false, 3, 4, 1, 0, 0), 16.0});
  rows.push_back({"hjb (1,0).(2,0)", LinearPenalty(true, 1, 0, 1, 2, 0), 1.0});
  rows.push_back({"hjb (1,0).(1,0)", LinearPenalty(true, 1, 0, 1, 1, 0), 0.0});
  rows.push_back({"hjb zero move", LinearPenalty(true, 0.7, -3, 1, 0, 0), 1.0});

  ParameterSet online, target;
  online.Add("w", {2}, (Matrix(1, 2) << 1.0, -3.0).finished());
  target.Add("w", {2}, (Matrix(1, 2) << 0.0, 1.0).finished());
  valuelearn::PolyakUpdate(target, online, 0.005);
  rows.push_back({"polyak[0]", target.values(0)(0, 0), 0.005});
  rows.push_back({"polyak[1]", target.values(0)(0, 1), 0.995 - 0.015});

  // Adam with default betas after one step: m_hat = g, v_hat = g^2, so the
  // move is lr * g / (|g| + eps).
  ParameterSet x;
  x.Add("x", {2}, (Matrix(1, 2) << 1.0, -2.0).finished());
  ParameterSet g = x.ZerosLike();
  g.mutable_values(0) << 0.3, -4.0;
  auto adam = diffcore::AdamState::For(x);
  diffcore::AdamStep(x, g, adam, 1e-3);
  const diffcore::AdamConfig ac;
  rows.push_back({"adam[0]", x.values(0)(0, 0), 1.0 - 1e-3 * 0.3 / (0.3 + ac.epsilon)});
  rows.push_back({"adam[1]", x.values(0)(0, 1), -2.0 + 1e-3 * 4.0 / (4.0 + ac.epsilon)});

  rows.push_back({"awr weight", policyextract::AwrWeight(1.0, 3.0, 100.0), std::exp(3.0)});
  rows.push_back({"discounted path", valuelearn::DiscountedPathValue(10, 0.99),
                  -9.56179249911955});

  Verdict v;
  v.passed = true;
  double worst = 0.0;
  for (const ClosedForm& r : rows) {
    const double err = std::abs(r.got - r.want);
    worst = std::max(worst, err);
    if (!(err <= 1e-12)) {
      v.passed = false;
      v.detail += r.what + Fmt(" off by %.3g; ", err);
    }
  }
  v.detail += std::to_string(rows.size()) + " values, max abs error " +
              Fmt("%.3g", worst) + Fmt(", %.2f s", clock.Seconds());
  return v;
}

// --- weight-zero equivalence --------------------------------------------

Verdict WeightZero() {
  Clock clock;
  const auto data = MakeData("medium", mazeworld::DatasetType::kNavigate,
                             kMediumNavigateTraj, 0);
  valuelearn::TrainConfig c = DeskConfig(0);
  c.lambda_eik = 0.0;
  cli::TrainOptions o;
  o.steps = kSteps;
  o.algo = Algo::kHiql;
  const cli::TrainResult plain = cli::Train(data, cli::ConfigForAlgo(c, o.algo), o);
  o.algo = Algo::kEikHiql;
  const cli::TrainResult eik = cli::Train(data, cli::ConfigForAlgo(c, o.algo), o);
  auto strip = [](const ParameterSet& p) {
    return diffcore::SerializeCheckpoint(
        p.Contains("meta/algo") ? [&] {
          ParameterSet out;
          for (const auto& e : p.entries()) {
            if (e.name != "meta/algo") out.Add(e.name, e.shape, e.values);
          }
          return out;
        }() : p);
  };
  const auto ck = [](Algo a, const cli::TrainResult& r) {
    return cli::MakeCheckpoint(a, r.value, r.q ? &*r.q : nullptr, &*r.actor);
  };
  const bool final_same =
      strip(ck(Algo::kHiql, plain)) == strip(ck(Algo::kEikHiql, eik));
  const bool best_same = strip(plain.best_checkpoint) == strip(eik.best_checkpoint);
  const double secs = clock.Seconds();
  Verdict v;
  v.passed = final_same && best_same && secs < 600;
  v.detail = std::string("final checkpoints ") +
             (final_same ? "identical" : "DIFFER") + ", best checkpoints " +
             (best_same ? "identical" : "DIFFER") +
             Fmt(" (best step %.0f)", static_cast<double>(plain.best_step)) +
             Fmt(", %.0f s (limit 600 s)", secs);
  return v;
}

// --- distance-field acquisition -----------------------------------------

struct FieldStats {
  double rho = 0.0;
  double grad_median = 0.0;
  double wall_contrast = 0.0;
};

FieldStats ScoreField(const valuelearn::ValueField& value,
                      const mazeworld::MazeSpec& maze) {
  const auto& cells = maze.free_cells();
  FieldStats s;
  constexpr int kGoals = 5;
  for (int k = 0; k < kGoals; ++k) {
    // Evenly spread over the row-major list of free cells.
    const mazeworld::Cell goal = cells[k * cells.size() / kGoals];
    const auto field = oracle::FastMarch(maze, goal, oracle::UnitSpeed());
    const auto rep = oracle::FieldValueAgreement(valuelearn::OnlineValue(value), field);
    s.rho += (rep.valid ? rep.spearman_rho : 0.0) / kGoals;
    s.wall_contrast += rep.wall_contrast / kGoals;
    s.grad_median += evalkit::MedianFreeGradNorm(valuelearn::OnlineGrad(value),
                                                 maze, maze.CenterOf(goal), 4) /
                     kGoals;
  }
  return s;
}

Verdict DistanceField() {
  Clock clock;
  const auto data = MakeData("medium", mazeworld::DatasetType::kNavigate,
                             kMediumNavigateTraj, 0);
  const auto& maze = data.maze();
  FieldStats eik, plain;
  std::string per_seed;
  constexpr int kSeeds = 3;
  for (int seed = 0; seed < kSeeds; ++seed) {
    cli::TrainOptions o;
    o.steps = kSteps;
    // The value network is frozen after the value phase, so stopping there
    // yields the same field as the full run.
    o.value_only = true;
    o.evaluate = false;
    for (const Algo a : {Algo::kEikHiql, Algo::kHiql}) {
      o.algo = a;
      const auto r = cli::Train(data, cli::ConfigForAlgo(DeskConfig(seed), a), o);
      const FieldStats s = ScoreField(r.value, maze);
      FieldStats& acc = a == Algo::kHiql ? plain : eik;
      acc.rho += s.rho / kSeeds;
      acc.grad_median += s.grad_median / kSeeds;
      acc.wall_contrast += s.wall_contrast / kSeeds;
      per_seed += std::string(cli::AlgoName(a)) + " seed " + std::to_string(seed) +
                  Fmt(": rho %.3f", s.rho) + Fmt(" grad %.3f", s.grad_median) +
                  Fmt(" wall %.3f; ", s.wall_contrast);
    }
  }
  const double secs = clock.Seconds();
  const bool rho_ok = eik.rho >= 0.8;
  const bool grad_ok = eik.grad_median >= 0.7 && eik.grad_median <= 1.3;
  const bool wall_ok = plain.wall_contrast < eik.wall_contrast;
  Verdict v;
  v.passed = rho_ok && grad_ok && wall_ok && secs < 1800 &&
             data.size() >= 50000;
  v.detail = Fmt("%.0f transitions; ", static_cast<double>(data.size())) +
             Fmt("eik-hiql rho %.3f (>= 0.8)", eik.rho) +
             Fmt(", median grad norm %.3f (in [0.7, 1.3])", eik.grad_median) +
             Fmt(", wall contrast %.3f", eik.wall_contrast) +
             Fmt(" vs hiql %.3f", plain.wall_contrast) +
             Fmt(" (hiql rho %.3f); ", plain.rho) + per_seed +
             Fmt("%.0f s (limit 1800 s)", secs);
  return v;
}

// --- giant-stitch runs ----------------------------------------------------

// Best evaluation success of one training run. Results are cached under the
// work directory so the regularizer comparison reuses the stitching runs;
// training is deterministic, so a cached number equals a fresh one.
double StitchRun(const fs::path& workdir, Algo algo, int seed, double* seconds) {
  const fs::path cache = workdir / "giant_stitch" /
                         (std::string(cli::AlgoName(algo)) + "_seed" +
                          std::to_string(seed) + ".json");
  if (fs::exists(cache)) {
    const auto j = nlohmann::json::parse(Slurp(cache));
    *seconds += j.at("seconds").get<double>();
    return j.at("best_success").get<double>();
  }
  Clock clock;
  const auto data =
      MakeData("giant", mazeworld::DatasetType::kStitch, kGiantStitchTraj, seed);
  cli::TrainOptions o;
  o.algo = algo;
  o.steps = kSteps;
  const auto r = cli::Train(data, cli::ConfigForAlgo(DeskConfig(seed), algo), o);
  const double secs = clock.Seconds();
  *seconds += secs;
  fs::create_directories(cache.parent_path());
  std::ofstream(cache) << nlohmann::json{{"algo", cli::AlgoName(algo)},
                                         {"seed", seed},
                                         {"best_success", r.best_success},
                                         {"best_step", r.best_step},
                                         {"seconds", secs}}
                              .dump(2);
  return r.best_success;
}

constexpr int kStitchSeeds = 5;

double MeanSuccess(const fs::path& workdir, Algo algo, double* seconds,
                   std::string* log) {
  double sum = 0.0;
  *log += std::string(cli::AlgoName(algo)) + " [";
  for (int seed = 0; seed < kStitchSeeds; ++seed) {
    const double s = StitchRun(workdir, algo, seed, seconds);
    *log += (seed ? " " : "") + Fmt("%.1f", s);
    sum += s;
  }
  *log += "]; ";
  return sum / kStitchSeeds;
}

Verdict StitchingGain(const fs::path& workdir) {
  double secs = 0.0;
  std::string log;
  const double eik_gcivl = MeanSuccess(workdir, Algo::kEikGcivl, &secs, &log);
  const double gcivl = MeanSuccess(workdir, Algo::kGcivl, &secs, &log);
  const double eik_hiql = MeanSuccess(workdir, Algo::kEikHiql, &secs, &log);
  const double hiql = MeanSuccess(workdir, Algo::kHiql, &secs, &log);
  Verdict v;
  v.passed = eik_gcivl - gcivl >= 15.0 && eik_hiql - hiql >= 15.0 && secs < 7200;
  v.detail = Fmt("eik-gcivl %.1f", eik_gcivl) + Fmt(" vs gcivl %.1f", gcivl) +
             Fmt(" (gain %+.1f)", eik_gcivl - gcivl) +
             Fmt(", eik-hiql %.1f", eik_hiql) + Fmt(" vs hiql %.1f", hiql) +
             Fmt(" (gain %+.1f), need >= 15; ", eik_hiql - hiql) + log +
             Fmt("training %.0f s (limit 7200 s)", secs);
  return v;
}

Verdict RegularizerOrder(const fs::path& workdir) {
  double secs = 0.0;
  std::string log;
  const double eik = MeanSuccess(workdir, Algo::kEikHiql, &secs, &log);
  const double hjb = MeanSuccess(workdir, Algo::kHjbHiql, &secs, &log);
  Verdict v;
  v.passed = eik >= hjb && secs < 7200;
  v.detail = Fmt("eik-hiql %.1f", eik) + Fmt(" vs hjb-hiql %.1f; ", hjb) + log +
             Fmt("training %.0f s (limit 7200 s)", secs);
  return v;
}

// --- pipeline determinism -------------------------------------------------

int Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eikgcrl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      cli::Main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

// Every file under `dir` with its SHA-1. The run manifest records wall-clock
// start and finish times, which are dropped before hashing.
std::map<std::string, std::string> Hashes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string bytes = Slurp(e.path());
    const std::string rel = fs::relative(e.path(), dir).string();
    if (rel.ends_with("manifest.json")) {
      auto j = nlohmann::json::parse(bytes);
      j.erase("timestamps");
      bytes = j.dump();
    }
    out[rel] = cli::Sha1Hex(bytes);
  }
  return out;
}

// One full gen-data -> train -> eval pass into `dir`.
bool PipelineOnce(const fs::path& dir, const fs::path& config) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  return Cli({"gen-data", "--maze", "medium", "--dataset-type", "stitch",
              "--n-traj", "500", "--seed", "3", "--out",
              (dir / "data").string()}) == 0 &&
         Cli({"train", "--config", config.string(), "--dataset",
              (dir / "data").string(), "--algo", "eik-hiql", "--steps", "4000",
              "--out", (dir / "run").string(), "--quiet"}) == 0 &&
         Cli({"eval", "--checkpoint", (dir / "run" / "best.ckpt").string(),
              "--maze", "medium", "--seed", "11", "--out",
              (dir / "eval.json").string()}) == 0;
}

Verdict Pipeline(const fs::path& workdir) {
  Clock clock;
  const fs::path root = workdir / "pipeline";
  fs::create_directories(root);
  const fs::path config = root / "config.json";
  std::ofstream(config) << valuelearn::ConfigToJson(DeskConfig(7)).dump(2);
  // Both passes use the same paths, since paths are recorded in outputs.
  const fs::path dir = root / "run";
  if (!PipelineOnce(dir, config)) return {false, "first pass failed"};
  const auto a = Hashes(dir);
  if (!PipelineOnce(dir, config)) return {false, "second pass failed"};
  const auto b = Hashes(dir);
  std::string mismatched;
  for (const auto& [name, hash] : a) {
    const auto it = b.find(name);
    if (it == b.end() || it->second != hash) mismatched += name + " ";
  }
  const double secs = clock.Seconds();
  Verdict v;
  v.passed = mismatched.empty() && a.size() == b.size() && secs < 900;
  v.detail = std::to_string(a.size()) + " files compared, " +
             (mismatched.empty() ? std::string("all identical")
                                 : "mismatched: " + mismatched) +
             Fmt(", %.0f s (limit 900 s)", secs);
  return v;
}

const char* Title(int n) {
  static const char* titles[] = {
      "",
      "autodiff correctness",
      "Hamiltonian bound fuzz",
      "oracle cross-validation",
      "closed-form checks",
      "weight-zero equivalence",
      "distance-field acquisition",
      "stitching gain",
      "regularizer comparison",
      "pipeline determinism"};
  return titles[n];
}

}  // namespace
}  // namespace eikgcrl

int main(int argc, char** argv) {
  using namespace eikgcrl;
  if (argc != 3) {
    std::cerr << "usage: acceptance <criterion 1..9> <workdir>\n";
    return 2;
  }
  const int n = std::atoi(argv[1]);
  const fs::path workdir = argv[2];
  fs::create_directories(workdir);
  Verdict v;
  try {
    switch (n) {
      case 1: v = FromSuite(cli::AutodiffSuite(), 60); break;
      case 2: v = FromSuite(cli::HamiltonianSuite(), 30); break;
      case 3: v = FromSuite(cli::OracleSuite(), 30); break;
      case 4: v = ClosedForms(); break;
      case 5: v = WeightZero(); break;
      case 6: v = DistanceField(); break;
      case 7: v = StitchingGain(workdir); break;
      case 8: v = RegularizerOrder(workdir); break;
      case 9: v = Pipeline(workdir); break;
      default:
        std::cerr << "unknown criterion " << n << "\n";
        return 2;
    }
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  std::cout << "criterion " << n << " (" << Title(n) << "): "
            << (v.passed ? "PASS" : "FAIL") << " | " << v.detail << std::endl;
  return v.passed ? 0 : 1;
}
