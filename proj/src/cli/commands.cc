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

#include "eikgcrl/cli/commands.h"

#include <fstream>

#include <CLI11.hpp>

#include "eikgcrl/cli/run_manifest.h"
#include "eikgcrl/cli/suites.h"
#include "eikgcrl/cli/trainer.h"
#include "eikgcrl/diffcore/checkpoint.h"
#include "eikgcrl/errors.h"
#include "eikgcrl/evalkit/evaluate.h"
#include "eikgcrl/evalkit/export.h"
#include "eikgcrl/mazeworld/dataset.h"
#include "eikgcrl/oracle/agreement.h"
#include "eikgcrl/oracle/distance_field.h"

namespace eikgcrl::cli {

namespace fs = std::filesystem;

namespace {

struct GenDataArgs {
  std::string maze;
  std::string type = "navigate";
  int n_traj = 1000;
  int max_segment_cells = 4;
  std::uint64_t seed = 0;
  std::string out;
};

struct TrainArgs {
  std::string config;
  std::string dataset;
  std::string algo;
  std::int64_t steps = 20000;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct EvalArgs {
  std::string checkpoint;
  std::string maze;
  int n_goals = 5;
  int episodes = 50;
  std::uint64_t seed = 0;
  int max_steps = 0;
  bool stochastic = false;
  std::string out;
};

struct ExportArgs {
  std::string checkpoint;
  std::string maze;
  std::string kind;
  std::vector<double> goal;
  int resolution = 4;
  int refine = 41;
  std::string speed_profile = "unit";
  std::string out;
};

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

int GenData(const GenDataArgs& a, std::ostream& out) {
  const mazeworld::MazeSpec maze = mazeworld::ResolveMaze(a.maze);
  mazeworld::GeneratorParams gp;
  gp.type = mazeworld::ParseDatasetType(a.type);
  gp.n_traj = a.n_traj;
  gp.max_segment_cells = a.max_segment_cells;
  gp.seed = a.seed;
  const mazeworld::Dataset data = mazeworld::GenerateDataset(maze, gp);
  PrepareFreshDir(a.out);
  mazeworld::WriteDataset(data, a.out);
  out << "wrote " << data.size() << " transitions in "
      << data.num_trajectories() << " trajectories to " << a.out << "\n";
  return kExitOk;
}

int TrainCmd(const TrainArgs& a, std::ostream& out) {
  const Algo algo = ParseAlgo(a.algo);
  valuelearn::TrainConfig config =
      a.config.empty() ? valuelearn::TrainConfig{} : valuelearn::LoadConfig(a.config);
  if (a.seed) config.seed = *a.seed;
  config = ConfigForAlgo(config, algo);
  valuelearn::ValidateConfig(config);
  if (a.steps < 1) throw InvalidArgument("--steps must be >= 1");
  const mazeworld::Dataset data = mazeworld::ReadDataset(a.dataset);

  RunManifest m;
  m.command = "train";
  m.config = valuelearn::ConfigToJson(config);
  m.inputs = {{"algo", AlgoName(algo)}, {"steps", a.steps}};
  m.dataset_dir = a.dataset;
  m.dataset_csv_sha1 = FileSha1(fs::path(a.dataset) / mazeworld::kDatasetCsvName);
  m.dataset_manifest_sha1 =
      FileSha1(fs::path(a.dataset) / mazeworld::kDatasetManifestName);
  m.seed = config.seed;
  m.started_at = UtcNow();

  const fs::path dir = a.out;
  PrepareFreshDir(dir);
  WriteText(dir / "config.json", m.config.dump(2) + "\n");
  TrainOptions opts;
  opts.algo = algo;
  opts.steps = a.steps;
  opts.metrics_dir = dir;
  opts.verbose = !a.quiet;
  const TrainResult r = Train(data, config, opts);
  diffcore::WriteCheckpoint(
      dir / "final.ckpt",
      MakeCheckpoint(algo, r.value, r.q ? &*r.q : nullptr, &*r.actor));
  diffcore::WriteCheckpoint(dir / "best.ckpt", r.best_checkpoint);
  m.finished_at = UtcNow();
  m.outputs = {"config.json", "metrics.csv", "evals.json", "final.ckpt",
               "best.ckpt", "manifest.json"};
  WriteText(dir / "manifest.json", m.ToJson().dump(2) + "\n");
  out << "trained " << AlgoName(algo) << " for " << r.steps_done
      << " steps; best eval " << r.best_success << "% at step " << r.best_step
      << "; outputs in " << dir.string() << "\n";
  return kExitOk;
}

int EvalCmd(const EvalArgs& a, std::ostream& out) {
  const mazeworld::MazeSpec maze = mazeworld::ResolveMaze(a.maze);
  const diffcore::ParameterSet ckpt = diffcore::ReadCheckpoint(a.checkpoint);
  const policyextract::Actor actor = policyextract::ActorFromParams(ckpt);
  evalkit::EvalConfig ec;
  ec.n_goals = a.n_goals;
  ec.episodes_per_goal = a.episodes;
  ec.seed = a.seed;
  ec.max_steps = a.max_steps;
  const evalkit::EvalReport rep =
      evalkit::Evaluate(evalkit::ActorPolicy(actor, !a.stochastic), maze, ec);
  nlohmann::json j = evalkit::ReportToJson(rep);
  j["checkpoint"] = a.checkpoint;
  const std::string text = j.dump(2) + "\n";
  const fs::path file =
      a.out.empty() ? fs::path(a.checkpoint + ".eval-seed" +
                               std::to_string(a.seed) + ".json")
                    : fs::path(a.out);
  WriteText(file, text);
  out << text;
  return kExitOk;
}

int CheckCmd(const std::string& suite, std::ostream& out) {
  std::vector<SuiteResult> results;
  if (suite == "autodiff" || suite == "all") results.push_back(AutodiffSuite());
  if (suite == "prop1" || suite == "all") results.push_back(HamiltonianSuite());
  if (suite == "oracle" || suite == "all") results.push_back(OracleSuite());
  bool ok = true;
  for (const SuiteResult& r : results) {
    out << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.name << " ("
        << r.seconds << " s)\n";
    for (const std::string& line : r.lines) out << "  " << line << "\n";
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitFailure;
}

int ExportCmd(const ExportArgs& a, std::ostream& out) {
  const mazeworld::MazeSpec maze = mazeworld::ResolveMaze(a.maze);
  const mazeworld::State goal{a.goal[0], a.goal[1]};
  if (!maze.IsFreeState(goal)) {
    throw InvalidArgument("goal is not a free position of maze " + maze.name());
  }
  const fs::path dir = a.out;
  if (a.kind == "distance-field") {
    valuelearn::TrainConfig c;
    c.speed_profile = valuelearn::ParseSpeedKind(a.speed_profile);
    const auto profile = valuelearn::SpeedProfile::For(c, maze);
    oracle::DistanceField f = oracle::FastMarch(
        maze, maze.CellOf(goal), oracle::ProfileSpeed(profile, maze), a.refine);
    f.speed_profile = a.speed_profile;
    PrepareFreshDir(dir);
    oracle::WriteDistanceField(f, dir);
    out << "wrote " << (dir / "distance_field.csv").string() << "\n";
    return kExitOk;
  }
  if (a.checkpoint.empty()) {
    throw InvalidArgument("--checkpoint is required for --kind " + a.kind);
  }
  const valuelearn::ValueField value = valuelearn::ValueFieldFromParams(
      diffcore::ReadCheckpoint(a.checkpoint), "value/");
  std::string csv, name;
  if (a.kind == "contour") {
    csv = evalkit::ContourCsv(valuelearn::OnlineValue(value), maze, goal,
                              a.resolution);
    name = "contour.csv";
  } else {
    csv = evalkit::GradNormCsv(valuelearn::OnlineGrad(value), maze, goal,
                               a.resolution);
    name = "gradnorm.csv";
  }
  PrepareFreshDir(dir);
  WriteText(dir / name, csv);
  out << "wrote " << (dir / name).string() << "\n";
  return kExitOk;
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Eikonal-regularized goal-conditioned value learning lab"};
  app.require_subcommand(1);

  GenDataArgs gen;
  auto* g = app.add_subcommand("gen-data", "generate an offline dataset");
  g->add_option("--maze", gen.maze, "built-in maze name or maze file")->required();
  g->add_option("--dataset-type", gen.type, "navigate or stitch")
      ->check(CLI::IsMember({"navigate", "stitch"}));
  g->add_option("--n-traj", gen.n_traj, "number of trajectories")
      ->check(CLI::PositiveNumber);
  g->add_option("--max-segment-cells", gen.max_segment_cells,
                "stitch segment length cap in cells")
      ->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "generator seed");
  g->add_option("--out", gen.out, "output directory")->required();

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "train one algorithm on a dataset");
  t->add_option("--config", tr.config, "config JSON (defaults if omitted)");
  t->add_option("--dataset", tr.dataset, "dataset directory")->required();
  t->add_option("--algo", tr.algo, "algorithm")
      ->required()
      ->check(CLI::IsMember({"hiql", "eik-hiql", "hjb-hiql", "gcivl",
                             "eik-gcivl", "gciql", "eik-gciql"}));
  t->add_option("--steps", tr.steps, "total gradient steps");
  t->add_option("--out", tr.out, "run directory")->required();
  t->add_option("--seed", tr.seed, "overrides the config seed");
  t->add_flag("--quiet", tr.quiet, "no progress on stderr");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "evaluate a checkpoint's actor");
  e->add_option("--checkpoint", ev.checkpoint, "checkpoint file")->required();
  e->add_option("--maze", ev.maze, "maze")->required();
  e->add_option("--n-goals", ev.n_goals, "goals")->check(CLI::PositiveNumber);
  e->add_option("--episodes", ev.episodes, "episodes per goal")
      ->check(CLI::PositiveNumber);
  e->add_option("--seed", ev.seed, "evaluation seed");
  e->add_option("--max-steps", ev.max_steps, "episode cap (0: maze default)");
  e->add_flag("--stochastic", ev.stochastic, "sample actions");
  e->add_option("--out", ev.out, "report file");

  std::string suite = "all";
  auto* c = app.add_subcommand("check", "run a verification suite");
  c->add_option("--suite", suite, "autodiff, prop1, oracle or all")
      ->check(CLI::IsMember({"autodiff", "prop1", "oracle", "all"}));

  ExportArgs ex;
  auto* x = app.add_subcommand("export", "export value or oracle grids");
  x->add_option("--checkpoint", ex.checkpoint, "checkpoint file");
  x->add_option("--maze", ex.maze, "maze")->required();
  x->add_option("--kind", ex.kind, "contour, gradnorm or distance-field")
      ->required()
      ->check(CLI::IsMember({"contour", "gradnorm", "distance-field"}));
  x->add_option("--goal", ex.goal, "goal position x,y")
      ->required()
      ->delimiter(',')
      ->expected(2);
  x->add_option("--resolution", ex.resolution, "grid points per cell")
      ->check(CLI::PositiveNumber);
  x->add_option("--refine", ex.refine, "fast-marching refine factor");
  x->add_option("--speed-profile", ex.speed_profile, "unit, exp or lin")
      ->check(CLI::IsMember({"unit", "exp", "lin"}));
  x->add_option("--out", ex.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    if (pe.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << pe.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*g) return GenData(gen, out);
    if (*t) return TrainCmd(tr, out);
    if (*e) return EvalCmd(ev, out);
    if (*c) return CheckCmd(suite, out);
    if (*x) return ExportCmd(ex, out);
  } catch (const InvalidArgument& ia) {
    err << "error: " << ia.what() << "\n";
    return kExitUsage;
  } catch (const CorruptArtifact& ca) {
    err << "corrupt artifact: " << ca.what() << "\n";
    return kExitCorrupt;
  } catch (const NumericalError& ne) {
    err << "numerical abort: " << ne.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace eikgcrl::cli
