// Command-line surface for the ST-HOI benchmark toolkit.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sthoi/dataset.hpp"
#include "sthoi/evaluate.hpp"
#include "sthoi/heatmap.hpp"
#include "sthoi/split.hpp"
#include "sthoi/synthetic.hpp"
#include "sthoi/taxonomy.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitIdMismatch = 3;
constexpr int kExitEmptyGt = 4;

// Method/tracker-specific alpha presets.
const std::map<std::string, double> kAlphaPresets = {
    {"de-deepsort", 0.2},       {"de-fairmot", 0.5},
    {"proposal-deepsort", 0.02}, {"other-deepsort", 0.03},
    {"other-fairmot", 0.4},
};

void emit_error(const std::string& kind, const std::string& message) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

void apply_config_file(const std::string& path, sthoi::EvalConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw sthoi::parse_error("cannot open config: " + path);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw sthoi::parse_error("config line missing '=': " + line);
    }
    const std::string key = line.substr(0, eq);
    const double value = std::stod(line.substr(eq + 1));
    if (key == "alpha") cfg.alpha = value;
    else if (key == "tp_miou") cfg.tp_miou = value;
    else if (key == "tracking_iou") cfg.tracking_iou = value;
    else if (key == "jobs") cfg.jobs = static_cast<int>(value);
    else throw sthoi::parse_error("unknown config key: " + key);
  }
}

struct EvalArgs {
  std::string gt_path, pred_path, config_path, report_path, preset;
  sthoi::EvalConfig cfg;
  std::string criterion = "both";
  std::string mode = "both";
};

void add_eval_options(CLI::App* cmd, EvalArgs& args) {
  cmd->add_option("--gt", args.gt_path, "ground-truth JSONL file")->required();
  cmd->add_option("--pred", args.pred_path, "prediction JSONL file")->required();
  cmd->add_option("--alpha", args.cfg.alpha, "interaction score mask threshold");
  cmd->add_option("--alpha-preset", args.preset,
                  "named alpha preset (de-deepsort, de-fairmot, "
                  "proposal-deepsort, other-deepsort, other-fairmot)");
  cmd->add_option("--criterion", args.criterion, "strict, loose or both");
  cmd->add_option("--mode", args.mode, "2d, 3d or both");
  cmd->add_option("--jobs", args.cfg.jobs, "worker count");
  cmd->add_option("--config", args.config_path, "key=value config file");
  cmd->add_option("--report", args.report_path, "write the JSON report here");
}

sthoi::EvalReport run_eval(EvalArgs& args) {
  if (!args.config_path.empty()) apply_config_file(args.config_path, args.cfg);
  if (!args.preset.empty()) {
    const auto it = kAlphaPresets.find(args.preset);
    if (it == kAlphaPresets.end()) {
      throw sthoi::parse_error("unknown alpha preset: " + args.preset);
    }
    args.cfg.alpha = it->second;
  }
  const auto gt = sthoi::read_tracklets_file(args.gt_path, true);
  const auto pred = sthoi::read_tracklets_file(args.pred_path, false);
  const auto report = sthoi::eval_all(gt, pred, args.cfg);
  if (!args.report_path.empty()) {
    std::ofstream os(args.report_path);
    os << sthoi::report_to_json(report) << "\n";
  }
  return report;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"ST-HOI benchmark evaluation toolkit"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_all_cmd = app.add_subcommand("eval-all", "full step-wise evaluation");
  add_eval_options(eval_all_cmd, eval_args);
  auto* eval_tracking_cmd =
      app.add_subcommand("eval-tracking", "human tracking metrics only");
  auto* eval_interaction_cmd =
      app.add_subcommand("eval-interaction", "interaction detection mAP only");
  auto* eval_objects_cmd =
      app.add_subcommand("eval-objects", "object discovery mIoU only");
  EvalArgs tracking_args, interaction_args, objects_args;
  add_eval_options(eval_tracking_cmd, tracking_args);
  add_eval_options(eval_interaction_cmd, interaction_args);
  add_eval_options(eval_objects_cmd, objects_args);

  std::string hm_in, hm_out, hm_size = "single";
  double hm_threshold = -1.0;
  bool hm_largest = false;
  auto* decode_cmd = app.add_subcommand("decode-heatmap",
                                        "normalize, threshold, tightest box");
  decode_cmd->add_option("--in", hm_in, "STHM raster")->required();
  decode_cmd->add_option("--size", hm_size,
                         "small, medium, large or single (branch default)");
  decode_cmd->add_option("--threshold", hm_threshold, "explicit threshold");
  decode_cmd->add_flag("--largest-component", hm_largest,
                       "box over the biggest blob only");

  std::string fuse_part, fuse_human, fuse_context, fuse_out, fuse_mode = "equal";
  std::vector<double> betas;
  auto* fuse_cmd = app.add_subcommand("fuse-heatmaps", "perspective fusion");
  fuse_cmd->add_option("--part", fuse_part)->required();
  fuse_cmd->add_option("--human", fuse_human)->required();
  fuse_cmd->add_option("--context", fuse_context)->required();
  fuse_cmd->add_option("--out", fuse_out)->required();
  fuse_cmd->add_option("--mode", fuse_mode, "equal or dynamic");
  fuse_cmd->add_option("--beta", betas, "three dynamic fusion weights")
      ->expected(3);

  std::string split_problem, split_out, split_method = "auto";
  std::uint64_t split_seed = 1;
  int split_iterations = 20000;
  auto* split_cmd = app.add_subcommand("make-split", "benchmark split solver");
  split_cmd->add_option("--problem", split_problem, "problem JSON")->required();
  split_cmd->add_option("--out", split_out, "solution JSON path");
  split_cmd->add_option("--method", split_method, "exact, heuristic or auto");
  split_cmd->add_option("--seed", split_seed);
  split_cmd->add_option("--iterations", split_iterations);

  std::string tax_words, tax_ontology;
  bool tax_deepest = false;
  auto* cluster_cmd = app.add_subcommand("cluster-classes", "object class clustering");
  cluster_cmd->add_option("--words", tax_words, "one word per line")->required();
  cluster_cmd->add_option("--ontology", tax_ontology, "child<TAB>parent lines")
      ->required();
  cluster_cmd->add_flag("--deepest-representative", tax_deepest,
                        "read 'highest level' as deepest instead of shallowest");
  auto* tree_cmd = app.add_subcommand("build-tree", "object class tree");
  tree_cmd->add_option("--words", tax_words, "one word per line")->required();
  tree_cmd->add_option("--ontology", tax_ontology)->required();
  tree_cmd->add_flag("--deepest-representative", tax_deepest);

  sthoi::SyntheticSpec syn;
  std::string syn_dir = ".";
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "synthetic benchmark");
  gen_cmd->add_option("--seed", syn.seed);
  gen_cmd->add_option("--videos", syn.n_videos);
  gen_cmd->add_option("--seconds", syn.n_seconds);
  gen_cmd->add_option("--misses", syn.misses_per_video);
  gen_cmd->add_option("--fp-tracklets", syn.fp_tracklets_per_video);
  gen_cmd->add_option("--out-dir", syn_dir);

  CLI11_PARSE(app, argc, argv);

  if (eval_all_cmd->parsed()) {
    const auto report = run_eval(eval_args);
    std::cout << sthoi::report_table(report);
    return 0;
  }
  if (eval_tracking_cmd->parsed()) {
    const auto report = run_eval(tracking_args);
    std::cout.setf(std::ios::fixed);
    std::cout.precision(4);
    std::cout << "MOTA " << 100.0 * report.mota << "%  IDF1 "
              << 100.0 * report.idf1 << "%\n";
    return 0;
  }
  if (eval_interaction_cmd->parsed() || eval_objects_cmd->parsed()) {
    auto& args = eval_interaction_cmd->parsed() ? interaction_args : objects_args;
    const auto report = run_eval(args);
    const auto& cells = eval_interaction_cmd->parsed() ? report.interaction_map
                                                       : report.object_miou;
    std::cout.setf(std::ios::fixed);
    std::cout.precision(4);
    auto want = [&](const std::string& crit, const std::string& mode) {
      return (args.criterion == "both" || args.criterion == crit) &&
             (args.mode == "both" || args.mode == mode);
    };
    if (want("strict", "2d")) std::cout << "strict-2d " << 100.0 * cells.strict_2d << "%\n";
    if (want("strict", "3d")) std::cout << "strict-3d " << 100.0 * cells.strict_3d << "%\n";
    if (want("loose", "2d")) std::cout << "loose-2d " << 100.0 * cells.loose_2d << "%\n";
    if (want("loose", "3d")) std::cout << "loose-3d " << 100.0 * cells.loose_3d << "%\n";
    return 0;
  }
  if (decode_cmd->parsed()) {
    const auto h = sthoi::normalize_peak(sthoi::read_sthm_file(hm_in));
    sthoi::HeatmapConfig cfg;
    double t = hm_threshold;
    if (t < 0.0) {
      if (hm_size == "small") t = cfg.small_threshold;
      else if (hm_size == "medium") t = cfg.medium_threshold;
      else if (hm_size == "large") t = cfg.large_threshold;
      else if (hm_size == "single") t = cfg.single_branch_threshold;
      else throw sthoi::invalid_input("unknown size class: " + hm_size);
    }
    const auto box = sthoi::threshold_to_box(h, t, hm_largest);
    nlohmann::json j;
    j["threshold"] = t;
    if (box) j["box"] = {box->x, box->y, box->w, box->h};
    else j["box"] = nullptr;
    std::cout << j.dump() << "\n";
    return 0;
  }
  if (fuse_cmd->parsed()) {
    const auto part = sthoi::read_sthm_file(fuse_part);
    const auto human = sthoi::read_sthm_file(fuse_human);
    const auto context = sthoi::read_sthm_file(fuse_context);
    sthoi::Heatmap fused;
    if (fuse_mode == "equal") {
      fused = sthoi::fuse_equal(part, human, context);
    } else if (fuse_mode == "dynamic") {
      if (betas.size() != 3) {
        throw sthoi::invalid_input("dynamic fusion needs --beta p h c");
      }
      fused = sthoi::fuse_dynamic(part, human, context,
                                  {betas[0], betas[1], betas[2]});
    } else {
      throw sthoi::invalid_input("unknown fusion mode: " + fuse_mode);
    }
    sthoi::write_sthm_file(fuse_out, fused);
    return 0;
  }
  if (split_cmd->parsed()) {
    const auto problem = sthoi::load_split_problem(split_problem);
    sthoi::SplitSolution solution;
    const bool exact = split_method == "exact" ||
                       (split_method == "auto" && problem.videos.size() <= 24);
    solution = exact ? sthoi::solve_exact(problem)
                     : sthoi::solve_heuristic(problem, split_seed, split_iterations);
    const std::string text = sthoi::solution_to_json(problem, solution);
    if (!split_out.empty()) {
      std::ofstream os(split_out);
      os << text << "\n";
    }
    std::cout << text << "\n";
    return solution.feasible ? 0 : 1;
  }
  if (cluster_cmd->parsed() || tree_cmd->parsed()) {
    const auto oracle = sthoi::MockOntology::from_file(tax_ontology);
    std::vector<std::string> words;
    std::ifstream is(tax_words);
    if (!is) throw sthoi::parse_error("cannot open: " + tax_words);
    std::string line;
    while (std::getline(is, line))
      if (!line.empty()) words.push_back(line);
    sthoi::TaxonomyOptions opt;
    opt.highest_means_shallowest = !tax_deepest;
    const auto clusters = sthoi::cluster_classes(words, oracle, opt);
    if (cluster_cmd->parsed()) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& c : clusters) j.push_back(c);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << sthoi::tree_to_json(sthoi::build_taxonomy(clusters, oracle))
                << "\n";
    }
    return 0;
  }
  if (gen_cmd->parsed()) {
    const auto bench = sthoi::gen_synthetic(syn);
    sthoi::write_tracklets_file(syn_dir + "/gt.jsonl", bench.gt);
    sthoi::write_tracklets_file(syn_dir + "/pred.jsonl", bench.pred);
    std::ofstream os(syn_dir + "/expected.json");
    os << sthoi::report_to_json(bench.expected) << "\n";
    std::cout << "wrote " << syn_dir << "/{gt.jsonl,pred.jsonl,expected.json}\n";
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const sthoi::parse_error& e) {
    emit_error("parse_error", e.what());
    return kExitParse;
  } catch (const sthoi::id_mismatch& e) {
    emit_error("id_mismatch", e.what());
    return kExitIdMismatch;
  } catch (const sthoi::invalid_input& e) {
    const std::string what = e.what();
    if (what.find("empty ground truth") != std::string::npos) {
      emit_error("empty_gt", what);
      return kExitEmptyGt;
    }
    emit_error("invalid_input", what);
    return 1;
  } catch (const std::exception& e) {
    emit_error("error", e.what());
    return 1;
  }
}
