// Pipeline driver: every stage of the diffusion/bridging/SWB analysis as a
// subcommand over a shared flat key=value config. See README.md for the file
// formats.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bridgekit/bridging.hpp"
#include "bridgekit/cascade.hpp"
#include "bridgekit/centrality.hpp"
#include "bridgekit/csv.hpp"
#include "bridgekit/eval.hpp"
#include "bridgekit/graph.hpp"
#include "bridgekit/regression.hpp"
#include "bridgekit/score_table.hpp"
#include "bridgekit/swb.hpp"
#include "bridgekit/synth.hpp"

namespace fs = std::filesystem;
using namespace bridgekit;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string out_dir = ".";
  std::string edges, events, posts;  // default to files under out_dir
  std::uint64_t seed = 1;
  double train_fraction = 0.8;
  double top_fraction = 0.2;
  std::size_t min_posts = 5;
  std::optional<std::int64_t> boundary;
  double damping = 0.85;
  double tol = 1e-10;
  unsigned max_iter = 200;
  double vif_threshold = 10.0;
  unsigned threads = 1;
  std::string metrics = "ubm,in_degree,out_degree,pagerank,twitterrank,betweenness,community,activity";
  std::string topic_sim;
  std::string response = "swb_during";  // or swb_change

  // simulate
  std::size_t n_users = 2000;
  std::string graph_model = "preferential_attachment";
  double edge_param = 5.0;
  std::size_t n_messages = 3000;
  double base_activation_prob = 0.05;
  std::size_t bridge_users = 50;
  double bridge_boost = 5.0;
  double swb_effect = 0.0;

  std::string path(const std::string& explicit_path, const char* default_name) const {
    return explicit_path.empty() ? out_dir + "/" + default_name : explicit_path;
  }
  std::string edges_path() const { return path(edges, "edges.csv"); }
  std::string events_path() const { return path(events, "events.csv"); }
  std::string posts_path() const { return path(posts, "posts.csv"); }
  std::string cascades_path() const { return out_dir + "/cascades.jsonl"; }
  std::string scores_path() const { return out_dir + "/scores.csv"; }
};

void require_file(const std::string& path) {
  if (!fs::exists(path)) throw InputError("missing input file: " + path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

/// Falls back to ground_truth.json (written by `simulate`) when no explicit
/// period boundary was configured.
std::int64_t resolve_boundary(const Options& opt) {
  if (opt.boundary) return *opt.boundary;
  const std::string gt = opt.out_dir + "/ground_truth.json";
  if (fs::exists(gt)) {
    std::ifstream in(gt);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (!j.is_discarded() && j.contains("period_boundary"))
      return j["period_boundary"].get<std::int64_t>();
  }
  throw InputError("boundary: no period boundary given (flag --boundary or config key)");
}

int cmd_simulate(const Options& opt) {
  SynthConfig cfg;
  cfg.n_users = opt.n_users;
  if (opt.graph_model == "preferential_attachment")
    cfg.graph_model = SynthConfig::GraphModel::kPreferentialAttachment;
  else if (opt.graph_model == "uniform_random")
    cfg.graph_model = SynthConfig::GraphModel::kUniformRandom;
  else
    throw InputError("graph_model: must be preferential_attachment or uniform_random");
  cfg.edge_param = opt.edge_param;
  cfg.n_messages = opt.n_messages;
  cfg.base_activation_prob = opt.base_activation_prob;
  cfg.bridge_users = opt.bridge_users;
  cfg.bridge_boost = opt.bridge_boost;
  cfg.swb_effect = opt.swb_effect;
  cfg.seed = opt.seed;

  fs::create_directories(opt.out_dir);
  SynthResult res = generate(cfg, opt.out_dir);
  std::cout << "simulate: " << res.events_written << " events, " << res.cascades_emitted
            << " cascades with >=2 retweets, " << res.bridge_ids.size() << " planted bridges"
            << (res.empty_cascade_warning ? " [warning: no cascades emitted]" : "") << "\n";
  return 0;
}

int cmd_build_cascades(const Options& opt) {
  require_file(opt.edges_path());
  require_file(opt.events_path());
  SocialGraph g = SocialGraph::load_csv_file(opt.edges_path());
  auto events = load_events_file(opt.events_path());
  BuildStats stats;
  auto cascades = build_cascades(g, events, &stats, opt.threads);
  fs::create_directories(opt.out_dir);
  auto out = open_out(opt.cascades_path());
  write_cascades_jsonl(out, cascades, g);
  auto cs = cascade_stats(cascades);
  std::cout << "build-cascades: " << cs.count << " cascades, mean size "
            << (cs.mean_defined ? csv::format_double(cs.mean_size) : std::string("n/a"))
            << ", dropped " << stats.unattachable_dropped << " unattachable retweeters\n";
  return 0;
}

EdgeSimilarity load_topic_sim(const std::string& path, const SocialGraph& g) {
  EdgeSimilarity sim;
  std::ifstream in(path);
  if (!in) throw InputError("cannot open topic similarity file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "user_a,user_b,similarity")
        throw InputError("line 1: expected header 'user_a,user_b,similarity'");
      continue;
    }
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != 3)
      throw InputError("line " + std::to_string(line_no) + ": expected 3 fields");
    UserId a = g.user(std::string(fields[0]));
    UserId b = g.user(std::string(fields[1]));
    double s = csv::parse_double(fields[2], line_no, "similarity");
    if (s < 0.0 || s > 1.0)
      throw InputError("line " + std::to_string(line_no) + ": similarity out of [0,1]");
    if (a != kInvalidUser && b != kInvalidUser) sim.set(a, b, s);
  }
  return sim;
}

int cmd_score(const Options& opt) {
  require_file(opt.edges_path());
  SocialGraph g = SocialGraph::load_csv_file(opt.edges_path());
  auto metric_list = split_list(opt.metrics);

  ScoreTable table;
  PageRankOptions pr{opt.damping, opt.tol, opt.max_iter};

  std::optional<std::vector<DiffusionEvent>> events;
  auto need_events = [&]() -> const std::vector<DiffusionEvent>& {
    if (!events) {
      require_file(opt.events_path());
      events = load_events_file(opt.events_path());
    }
    return *events;
  };

  for (const auto& m : metric_list) {
    if (m == "ubm") {
      require_file(opt.cascades_path());
      std::ifstream in(opt.cascades_path());
      auto cascades = read_cascades_jsonl(in, g);
      table.set("ubm", ubm_vector(cascades, g.node_count()));
    } else if (m == "in_degree") {
      table.set("in_degree", in_degree_vector(g));
    } else if (m == "out_degree") {
      table.set("out_degree", out_degree_vector(g));
    } else if (m == "pagerank") {
      table.set("pagerank", pagerank(g, pr).values);
    } else if (m == "twitterrank") {
      auto posts = activity(g, need_events());
      std::optional<EdgeSimilarity> sim;
      if (!opt.topic_sim.empty()) sim = load_topic_sim(opt.topic_sim, g);
      table.set("twitterrank",
                twitterrank(g, posts, sim ? &*sim : nullptr, pr).values);
    } else if (m == "betweenness") {
      table.set("betweenness", betweenness(g, opt.threads));
    } else if (m == "community") {
      table.set("community", community_centrality(g, opt.seed).scores);
    } else if (m == "activity") {
      table.set("activity", activity(g, need_events()));
    } else {
      throw InputError("metrics: unknown metric '" + m + "'");
    }
  }

  fs::create_directories(opt.out_dir);
  auto out = open_out(opt.scores_path());
  table.write_csv(out, g);
  std::cout << "score: wrote " << metric_list.size() << " metrics for " << g.node_count()
            << " users to " << opt.scores_path() << "\n";
  return 0;
}

int cmd_evaluate(const Options& opt) {
  require_file(opt.edges_path());
  require_file(opt.cascades_path());
  require_file(opt.scores_path());
  SocialGraph g = SocialGraph::load_csv_file(opt.edges_path());
  std::ifstream cin_(opt.cascades_path());
  auto cascades = read_cascades_jsonl(cin_, g);
  std::ifstream sin(opt.scores_path());
  ScoreTable table = ScoreTable::read_csv(sin, g);

  auto [train, test] = split_cascades(cascades, opt.train_fraction, opt.seed);
  (void)train;  // scores.csv is the ranking input; train side is unused here

  auto out = open_out(opt.out_dir + "/eval_report.csv");
  out << "metric,avg_activated_per_minute,avg_activated,pct_impacted,pairs,warning\n";
  for (const auto& metric : table.metric_names()) {
    auto selected_vec = top_fraction(table.values(metric), opt.top_fraction);
    std::unordered_set<UserId> selected(selected_vec.begin(), selected_vec.end());
    EvalReport r = evaluate(selected, test);
    out << metric << ',' << csv::format_double(r.avg_activated_per_minute) << ','
        << csv::format_double(r.avg_activated) << ',' << csv::format_double(r.pct_impacted)
        << ',' << r.pairs_counted << ',' << (r.no_overlap_warning ? 1 : 0) << '\n';
  }
  std::cout << "evaluate: " << table.metric_names().size() << " metrics on " << test.size()
            << " test cascades -> " << opt.out_dir << "/eval_report.csv\n";
  return 0;
}

int cmd_swb(const Options& opt) {
  require_file(opt.edges_path());
  require_file(opt.posts_path());
  require_file(opt.scores_path());
  const std::int64_t boundary = resolve_boundary(opt);

  SocialGraph g = SocialGraph::load_csv_file(opt.edges_path());
  auto posts = load_posts_file(opt.posts_path(), g);
  auto records = user_swb(posts, boundary, opt.min_posts);
  {
    auto out = open_out(opt.out_dir + "/swb.csv");
    write_swb_csv(out, records, g);
  }

  std::ifstream sin(opt.scores_path());
  ScoreTable table = ScoreTable::read_csv(sin, g);
  auto [top, bottom] = group_swb_change(records, table.values("ubm"), opt.top_fraction);
  {
    auto out = open_out(opt.out_dir + "/group_report.json");
    write_group_report_json(out, top, bottom);
  }
  std::cout << "swb: " << records.size() << " user-period records; top-group mean change "
            << csv::format_double(top.mean_change) << ", bottom "
            << csv::format_double(bottom.mean_change) << "\n";
  return 0;
}

int cmd_regress(const Options& opt) {
  require_file(opt.edges_path());
  require_file(opt.scores_path());
  require_file(opt.out_dir + "/swb.csv");
  SocialGraph g = SocialGraph::load_csv_file(opt.edges_path());
  std::ifstream sin(opt.scores_path());
  ScoreTable table = ScoreTable::read_csv(sin, g);

  // Response per user from swb.csv.
  std::ifstream swb_in(opt.out_dir + "/swb.csv");
  std::string line;
  std::getline(swb_in, line);
  std::map<UserId, std::pair<std::optional<double>, std::optional<double>>> swb_by_user;
  std::size_t line_no = 1;
  while (std::getline(swb_in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != 6) throw InputError("swb.csv line " + std::to_string(line_no));
    UserId u = g.user(std::string(fields[0]));
    if (u == kInvalidUser) continue;
    double value = csv::parse_double(fields[5], line_no, "swb");
    if (fields[1] == "before") swb_by_user[u].first = value;
    else swb_by_user[u].second = value;
  }

  const bool use_change = opt.response == "swb_change";
  if (!use_change && opt.response != "swb_during")
    throw InputError("response: must be swb_during or swb_change");

  std::vector<UserId> rows;
  std::vector<double> y;
  for (const auto& [u, periods] : swb_by_user) {
    if (use_change) {
      if (periods.first && periods.second) {
        rows.push_back(u);
        y.push_back(*periods.second - *periods.first);
      }
    } else if (periods.second) {
      rows.push_back(u);
      y.push_back(*periods.second);
    }
  }
  if (rows.size() < 10) throw InputError("regress: fewer than 10 usable rows");

  const std::vector<std::string> predictor_order{
      "in_degree", "out_degree", "pagerank", "twitterrank",
      "betweenness", "community", "activity", "ubm"};
  DesignMatrix X;
  X.response = y;
  for (const auto& name : predictor_order) {
    if (!table.has(name)) continue;
    const auto& full = table.values(name);
    std::vector<double> col(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) col[i] = full[rows[i]];
    X.names.push_back(name);
    X.columns.push_back(std::move(col));
  }

  VifResult screen = vif_screen(X, opt.vif_threshold);
  auto kept = [&](const std::vector<std::string>& wanted) {
    std::vector<std::string> out;
    for (const auto& name : wanted)
      if (std::find(screen.kept.begin(), screen.kept.end(), name) != screen.kept.end())
        out.push_back(name);
    return out;
  };
  std::vector<std::vector<std::string>> stages;
  auto structural = kept({"in_degree", "out_degree", "pagerank", "twitterrank",
                          "betweenness", "community"});
  auto act = kept({"activity"});
  auto ubm_stage = kept({"ubm"});
  if (structural.empty() || act.empty() || ubm_stage.empty())
    throw InputError("regress: VIF screening emptied a regression stage");
  stages = {structural, act, ubm_stage};

  auto results = hierarchical_regression(X, stages);
  auto out = open_out(opt.out_dir + "/regress_report.json");
  write_regress_report_json(out, results, stages, screen);
  std::cout << "regress: n=" << rows.size() << ", final R2 "
            << csv::format_double(results.back().R2) << ", delta R2 (ubm stage) "
            << csv::format_double(results.back().delta_R2) << "\n";
  return 0;
}

int cmd_pipeline(const Options& opt) {
  int rc = cmd_build_cascades(opt);
  if (rc == 0) rc = cmd_score(opt);
  if (rc == 0) rc = cmd_evaluate(opt);
  if (rc == 0) rc = cmd_swb(opt);
  if (rc == 0) rc = cmd_regress(opt);
  if (rc == 0) std::cout << "pipeline: all stages complete in " << opt.out_dir << "\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diffusion cascade, bridging and well-being analytics"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config")->configurable(false);
  app.fallthrough();

  Options opt;
  app.add_option("--out", opt.out_dir, "Output directory (also default input location)");
  app.add_option("--edges", opt.edges, "edges.csv path");
  app.add_option("--events", opt.events, "events.csv path");
  app.add_option("--posts", opt.posts, "posts.csv path");
  app.add_option("--seed", opt.seed, "Top-level RNG seed");
  app.add_option("--train_fraction", opt.train_fraction)->check(CLI::Range(1e-9, 1.0 - 1e-9));
  app.add_option("--top_fraction", opt.top_fraction)->check(CLI::Range(1e-9, 1.0));
  app.add_option("--min_posts", opt.min_posts, "Posts required per period (exclusive)");
  std::int64_t boundary_value = 0;
  auto* boundary_opt = app.add_option("--boundary", boundary_value,
                                      "Period boundary (UNIX seconds)");
  app.add_option("--damping", opt.damping)->check(CLI::Range(1e-9, 1.0 - 1e-9));
  app.add_option("--tol", opt.tol);
  app.add_option("--max_iter", opt.max_iter);
  app.add_option("--vif_threshold", opt.vif_threshold);
  app.add_option("--threads", opt.threads, "Worker cap for parallel stages");
  app.add_option("--metrics", opt.metrics, "Comma-separated metric list for `score`");
  app.add_option("--topic_sim", opt.topic_sim, "Optional topic_sim.csv for twitterrank");
  app.add_option("--response", opt.response, "Regression response: swb_during|swb_change");

  app.add_option("--n_users", opt.n_users);
  app.add_option("--graph_model", opt.graph_model);
  app.add_option("--edge_param", opt.edge_param);
  app.add_option("--n_messages", opt.n_messages);
  app.add_option("--base_activation_prob", opt.base_activation_prob);
  app.add_option("--bridge_users", opt.bridge_users);
  app.add_option("--bridge_boost", opt.bridge_boost);
  app.add_option("--swb_effect", opt.swb_effect);

  app.require_subcommand(1);
  auto* simulate = app.add_subcommand("simulate", "Generate synthetic inputs");
  auto* build = app.add_subcommand("build-cascades", "Reconstruct cascade trees");
  auto* score = app.add_subcommand("score", "Compute UBM and baseline metrics");
  auto* evaluate_ = app.add_subcommand("evaluate", "Realized-diffusion evaluation");
  auto* swb = app.add_subcommand("swb", "Per-user SWB and group comparison");
  auto* regress = app.add_subcommand("regress", "Hierarchical multiple regression");
  auto* pipeline = app.add_subcommand("pipeline", "Run all stages in order");

  CLI11_PARSE(app, argc, argv);
  if (boundary_opt->count() > 0) opt.boundary = boundary_value;

  try {
    if (simulate->parsed()) return cmd_simulate(opt);
    if (build->parsed()) return cmd_build_cascades(opt);
    if (score->parsed()) return cmd_score(opt);
    if (evaluate_->parsed()) return cmd_evaluate(opt);
    if (swb->parsed()) return cmd_swb(opt);
    if (regress->parsed()) return cmd_regress(opt);
    if (pipeline->parsed()) return cmd_pipeline(opt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
