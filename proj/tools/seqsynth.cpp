// seqsynth: command-line front end for the clickstream synthesis toolkit.
//
//   seqsynth stats    --corpus C --out PREFIX [--mode per_stream|per_occurrence]
//   seqsynth filter   --matrix M --k K --out F
//   seqsynth generate --ds D --cvs V [--vocab L] --out F [generator flags]
//   seqsynth fidelity --real M (--syn-corpus C --vocab L | --syn-matrix M) [--z 100] --out F
//   seqsynth utility  --corpus C --out F [--folds 10] [generator and knn flags]
//   seqsynth split    --corpus C --out PREFIX [--horizontal F] [--vertical F] [--folds K]
//
// Every run writes <output>.manifest (key=value). Any subcommand accepts
// --config FILE with the same keys; flags given on the command line win.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "seqsynth/seqsynth.hpp"

namespace {

using namespace seqsynth;
namespace fs = std::filesystem;
using cli::Manifest;
using cli::OutputGuard;

std::size_t default_workers() {
  if (const char* env = std::getenv("SEQSYNTH_WORKERS")) {
    const auto v = detail::parse_number<std::size_t>(env);
    if (v && *v >= 1) return *v;
    std::cerr << "seqsynth: ignoring SEQSYNTH_WORKERS='" << env << "'\n";
  }
  return 1;
}


std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    out += argv[i];
  }
  return out;
}

struct Common {
  std::string command_line;
  std::size_t workers = 1;
  std::string config;  // consumed before parsing; kept so CLI11 accepts the flag
};

void add_common(CLI::App* sub, Common& common, bool with_workers) {
  sub->add_option("--config", common.config, "key=value file presetting flags (flags win)");
  if (with_workers) {
    sub->add_option("--workers", common.workers, "parallel workers (default: SEQSYNTH_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
  }
}

// ---------------------------------------------------------------------------

struct StatsArgs {
  std::string corpus;
  std::string out;
  std::string mode = "per_stream";
};

void run_stats(const StatsArgs& a, const Common& c) {
  const auto mode = parse_counting_mode(a.mode);
  const auto set = load_clickstreams(a.corpus);
  const auto ds = build_ds(set, mode);
  const auto cvs = build_cvs(set, mode);

  OutputGuard guard;
  save_matrix(ds, guard.add(a.out + ".ds.tsv"));
  save_matrix(cvs, guard.add(a.out + ".cvs.tsv"));
  save_vocabulary(set.vocab(), guard.add(a.out + ".vocab.txt"));

  Manifest m("stats");
  m.set("command_line", c.command_line);
  m.set("corpus", a.corpus);
  m.set("out", a.out);
  m.set("mode", a.mode);
  m.digest("corpus", a.corpus);
  m.set("counting_mode", std::string(to_string(mode)));
  m.set("items", set.item_count());
  m.set("streams", set.size());
  m.set("ds_nnz", ds.counts().nnz());
  m.set("cvs_nnz", cvs.counts().nnz());
  m.save(guard.add(a.out + ".manifest"));
  guard.commit();
  std::cout << "items=" << set.item_count() << " streams=" << set.size() << " ds_nnz=" << ds.counts().nnz()
            << " cvs_nnz=" << cvs.counts().nnz() << '\n';
}

// ---------------------------------------------------------------------------

struct FilterArgs {
  std::string matrix;
  std::string out;
  Count k = 1;
};

void run_filter(const FilterArgs& a, const Common& c) {
  detail::require(a.k >= 1, "--k must be >= 1");
  const auto file = load_matrix(a.matrix);
  const auto filtered = k_anonymity_filter(file.counts, a.k);

  OutputGuard guard;
  const auto& out_path = guard.add(a.out);
  {
    auto out = detail::open_output(out_path);
    write_matrix(filtered, file.kind, file.mode, out);
    detail::finish_output(out, out_path);
  }
  Manifest m("filter");
  m.set("command_line", c.command_line);
  m.set("matrix", a.matrix);
  m.set("k", a.k);
  m.set("out", a.out);
  m.digest("matrix", a.matrix);
  m.set("counting_mode", std::string(to_string(file.mode)));
  m.set("kind", std::string(to_string(file.kind)));
  m.set("nnz_before", file.counts.nnz());
  m.set("nnz_after", filtered.nnz());
  m.save(guard.add(a.out + ".manifest"));
  guard.commit();
  std::cout << "kept " << filtered.nnz() << " of " << file.counts.nnz() << " entries\n";
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string ds;
  std::string cvs;
  std::string vocab;
  std::string corpus;
  std::string out;
  std::string preset;
  std::string memory = "gaussian:3,2";
  std::string length;  // default: empirical with --corpus, else the library default
  double epsilon = 1e-4;
  std::size_t count = 1000;
  std::string start;  // default: empirical with --corpus, else uniform
  std::uint64_t seed = 0;
};

StartDistribution parse_start(const std::string& spec, const ClickstreamSet* corpus, const Vocabulary& vocab) {
  if (spec == "uniform") return StartDistribution::uniform();
  if (spec == "empirical") {
    detail::require(corpus != nullptr, "--start empirical needs --corpus");
    return empirical_start_distribution(*corpus);
  }
  if (spec.rfind("item:", 0) == 0) {
    const auto id = vocab.find(spec.substr(5));
    detail::require(id.has_value(), "--start: unknown item '" + spec.substr(5) + "'");
    return StartDistribution::point(*id, vocab.size());
  }
  throw InvalidArgument("--start must be uniform, empirical or item:LABEL, got '" + spec + "'");
}

void run_generate(GenerateArgs a, const Common& c, const CLI::App& sub) {
  if (!a.preset.empty()) {
    detail::require(a.preset == "videolectures", "unknown preset '" + a.preset + "'");
    if (sub.get_option("--memory")->count() == 0) a.memory = "constant:5";
    if (sub.get_option("--length")->count() == 0) a.length = "geometric:0.1";
    if (sub.get_option("--count")->count() == 0) a.count = 20000;
  }
  const auto ds = load_ds(a.ds);
  const auto cvs = load_cvs(a.cvs);
  detail::require(ds.n() == cvs.n(), "DS and CVS dimensions differ");
  detail::require(ds.mode() == cvs.mode(), "DS and CVS counting modes differ");
  const auto vocab = a.vocab.empty() ? std::make_shared<const Vocabulary>(Vocabulary::numbered(ds.n()))
                                     : std::make_shared<const Vocabulary>(load_vocabulary(a.vocab));
  detail::require(vocab->size() == ds.n(), "vocabulary size does not match the matrices");
  std::unique_ptr<ClickstreamSet> corpus;
  if (!a.corpus.empty()) corpus = std::make_unique<ClickstreamSet>(load_clickstreams(a.corpus, vocab));

  if (a.length.empty()) a.length = corpus ? "empirical" : MbrwConfig{}.length.describe();
  if (a.start.empty()) a.start = corpus ? "empirical" : "uniform";

  MbrwConfig config;
  config.memory = MemoryDistribution::parse(a.memory);
  if (a.length == "empirical") {
    detail::require(corpus != nullptr, "--length empirical needs --corpus");
    config.length = empirical_length_distribution(*corpus);
  } else {
    config.length = LengthDistribution::parse(a.length);
  }
  config.epsilon = a.epsilon;
  config.stream_count = a.count;
  config.start = parse_start(a.start, corpus.get(), *vocab);
  config.seed = a.seed;
  config.validate(ds.n());

  GenerationStats stats;
  const auto set = generate_set(ds, cvs, config, vocab, c.workers, &stats);

  OutputGuard guard;
  save_clickstreams(set, guard.add(a.out));
  Manifest m("generate");
  m.set("command_line", c.command_line);
  m.set("ds", a.ds);
  m.set("cvs", a.cvs);
  if (!a.vocab.empty()) m.set("vocab", a.vocab);
  if (!a.corpus.empty()) m.set("corpus", a.corpus);
  m.set("out", a.out);
  if (!a.preset.empty()) m.set("preset", a.preset);
  m.set("memory", a.memory);
  m.set("length", a.length);
  m.set("epsilon", a.epsilon);
  m.set("count", a.count);
  m.set("start", a.start);
  m.set("seed", a.seed);
  m.set("workers", c.workers);
  m.digest("ds", a.ds);
  m.digest("cvs", a.cvs);
  m.digest("vocab", a.vocab);
  m.digest("corpus", a.corpus);
  m.set("counting_mode", std::string(to_string(ds.mode())));
  m.set("hops", stats.hops);
  m.set("epsilon_jumps", stats.epsilon_jumps);
  m.set("dead_end_fallbacks", stats.dead_end_fallbacks);
  m.set("zero_memory_walks", stats.zero_memory_walks);
  m.save(guard.add(a.out + ".manifest"));
  guard.commit();
  std::cout << "streams=" << set.size() << " items=" << set.total_items()
            << " dead_end_fallbacks=" << stats.dead_end_fallbacks << " zero_memory_walks=" << stats.zero_memory_walks
            << '\n';
}

// ---------------------------------------------------------------------------

struct FidelityArgs {
  std::string real;
  std::string syn_corpus;
  std::string syn_matrix;
  std::string vocab;
  std::string out;
  std::size_t z = 100;
};

void run_fidelity(const FidelityArgs& a, const Common& c) {
  detail::require(a.syn_corpus.empty() != a.syn_matrix.empty(), "give exactly one of --syn-corpus or --syn-matrix");
  const auto real = load_matrix(a.real);
  SparseCountMatrix syn;
  if (!a.syn_matrix.empty()) {
    auto file = load_matrix(a.syn_matrix);
    detail::require(file.kind == real.kind, "real and synthetic matrices are of different kinds");
    syn = std::move(file.counts);
  } else {
    detail::require(!a.vocab.empty(), "--syn-corpus needs --vocab to align item ids with the real matrix");
    const auto vocab = std::make_shared<const Vocabulary>(load_vocabulary(a.vocab));
    detail::require(vocab->size() == real.counts.n(), "vocabulary size does not match the real matrix");
    const auto set = load_clickstreams(a.syn_corpus, vocab);
    syn = real.kind == MatrixKind::ds ? build_ds(set, real.mode).counts() : build_cvs(set, real.mode).counts();
  }
  const auto report = matrix_fidelity(real.counts, syn, a.z);

  OutputGuard guard;
  save_fidelity_report(report, guard.add(a.out));
  Manifest m("fidelity");
  m.set("command_line", c.command_line);
  m.set("real", a.real);
  if (!a.syn_corpus.empty()) m.set("syn-corpus", a.syn_corpus);
  if (!a.syn_matrix.empty()) m.set("syn-matrix", a.syn_matrix);
  if (!a.vocab.empty()) m.set("vocab", a.vocab);
  m.set("out", a.out);
  m.set("z", a.z);
  m.digest("real", a.real);
  m.digest("syn-corpus", a.syn_corpus);
  m.digest("syn-matrix", a.syn_matrix);
  m.digest("vocab", a.vocab);
  m.set("kind", std::string(to_string(real.kind)));
  m.set("counting_mode", std::string(to_string(real.mode)));
  m.set("avg", detail::format_sig6(report.avg));
  m.set("std", detail::format_sig6(report.stddev));
  m.set("skipped", report.skipped_count);
  m.save(guard.add(a.out + ".manifest"));
  guard.commit();
  std::cout << to_string(real.kind) << " avg=" << detail::format_sig6(report.avg)
            << " std=" << detail::format_sig6(report.stddev) << " rows=" << report.evaluated_count()
            << " skipped=" << report.skipped_count << '\n';
}

// ---------------------------------------------------------------------------

struct UtilityArgs {
  std::string corpus;
  std::string out;
  std::size_t folds = 10;
  std::string memory = "gaussian:3,2";
  std::string length = "empirical";
  std::string start = "empirical";
  double epsilon = 1e-4;
  double random_epsilon = 1.0;
  std::string mode = "per_stream";
  std::size_t knn_k = 15;
  double prefix = 0.5;
  std::size_t list_length = 10;
  std::uint64_t seed = 0;
};

void run_utility(const UtilityArgs& a, const Common& c) {
  const auto corpus = load_clickstreams(a.corpus);
  UtilityConfig config;
  config.folds = a.folds;
  config.generator.memory = MemoryDistribution::parse(a.memory);
  config.generator.epsilon = a.epsilon;
  config.generator.seed = a.seed;
  config.empirical_lengths = a.length == "empirical";
  if (!config.empirical_lengths) config.generator.length = LengthDistribution::parse(a.length);
  config.empirical_start = a.start == "empirical";
  if (!config.empirical_start) config.generator.start = parse_start(a.start, nullptr, corpus.vocab());
  config.random_epsilon = a.random_epsilon;
  config.mode = parse_counting_mode(a.mode);
  config.knn_k = a.knn_k;
  config.prefix_fraction = a.prefix;
  config.list_length = a.list_length;
  config.workers = c.workers;

  const auto report = run_utility_experiment(corpus, config);

  OutputGuard guard;
  save_utility_report(report, guard.add(a.out));
  Manifest m("utility");
  m.set("command_line", c.command_line);
  m.set("corpus", a.corpus);
  m.set("out", a.out);
  m.set("folds", a.folds);
  m.set("memory", a.memory);
  m.set("length", a.length);
  m.set("start", a.start);
  m.set("epsilon", a.epsilon);
  m.set("random-epsilon", a.random_epsilon);
  m.set("mode", a.mode);
  m.set("knn-k", a.knn_k);
  m.set("prefix", a.prefix);
  m.set("list-length", a.list_length);
  m.set("seed", a.seed);
  m.set("workers", c.workers);
  m.digest("corpus", a.corpus);
  m.set("counting_mode", std::string(to_string(config.mode)));
  GenerationStats syn;
  GenerationStats rnd;
  for (const auto& f : report.folds) {
    syn += f.syn_stats;
    rnd += f.rnd_stats;
  }
  m.set("dead_end_fallbacks", syn.dead_end_fallbacks);
  m.set("zero_memory_walks", syn.zero_memory_walks);
  m.set("excluded_streams", report.excluded_streams);
  m.set("conventions", report.conventions);
  m.save(guard.add(a.out + ".manifest"));
  guard.commit();

  for (ModelSource s : kModelSources) {
    const auto& mean = report.mean_of(s);
    const auto& sd = report.stddev_of(s);
    std::cout << to_string(s) << "\tmap=" << detail::format_sig6(mean.map) << "+-" << detail::format_sig6(sd.map)
              << "\tndcg=" << detail::format_sig6(mean.ndcg) << "+-" << detail::format_sig6(sd.ndcg)
              << "\tp10=" << detail::format_sig6(mean.precision) << "+-" << detail::format_sig6(sd.precision) << '\n';
  }
  std::size_t map_wins = 0;
  std::size_t ndcg_wins = 0;
  for (const auto& f : report.folds) {
    map_wins += f[ModelSource::syn].map > f[ModelSource::rnd].map;
    ndcg_wins += f[ModelSource::syn].ndcg > f[ModelSource::rnd].ndcg;
  }
  std::cout << "syn>rnd map: " << map_wins << "/" << report.folds.size() << " folds\n";
  std::cout << "syn>rnd ndcg: " << ndcg_wins << "/" << report.folds.size() << " folds\n";
  if (report.excluded_streams > 0) std::cout << "excluded short test streams: " << report.excluded_streams << '\n';
}

// ---------------------------------------------------------------------------

struct SplitArgs {
  std::string corpus;
  std::string out;
  double horizontal = 0.0;
  double vertical = 0.0;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
};

void run_split(const SplitArgs& a, const Common& c, const CLI::App& sub) {
  const bool h = sub.get_option("--horizontal")->count() > 0;
  const bool v = sub.get_option("--vertical")->count() > 0;
  const bool f = sub.get_option("--folds")->count() > 0;
  detail::require(h || v || f, "give at least one of --horizontal, --vertical, --folds");
  const auto corpus = load_clickstreams(a.corpus);

  OutputGuard guard;
  Manifest m("split");
  m.set("command_line", c.command_line);
  m.set("corpus", a.corpus);
  m.set("out", a.out);
  if (h) m.set("horizontal", a.horizontal);
  if (v) m.set("vertical", a.vertical);
  if (f) m.set("folds", a.folds);
  m.set("seed", a.seed);
  m.digest("corpus", a.corpus);

  if (h) {
    const auto split = horizontal_split(corpus, a.horizontal, a.seed);
    save_clickstreams(split.train, guard.add(a.out + ".train.txt"));
    if (v) {
      const auto vs = vertical_split(split.test, a.vertical);
      save_clickstreams(vs.query, guard.add(a.out + ".query.txt"));
      save_clickstreams(vs.holdout, guard.add(a.out + ".holdout.txt"));
    } else {
      save_clickstreams(split.test, guard.add(a.out + ".test.txt"));
    }
    m.set("train_streams", split.train.size());
    m.set("test_streams", split.test.size());
  } else if (v) {
    const auto vs = vertical_split(corpus, a.vertical);
    save_clickstreams(vs.query, guard.add(a.out + ".query.txt"));
    save_clickstreams(vs.holdout, guard.add(a.out + ".holdout.txt"));
  }
  if (f) save_fold_plan(make_folds(corpus, a.folds, a.seed), guard.add(a.out + ".folds.tsv"));
  m.save(guard.add(a.out + ".manifest"));
  guard.commit();
}

// ---------------------------------------------------------------------------

/// Turns `--config FILE` into `--key=value` arguments placed before the
/// user's own flags, so that under take-last semantics the command line wins.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  if (args.size() < 2 || args[1].empty() || args[1][0] == '-') return args;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  const std::vector<std::string> rest(args.begin() + 2, args.end());
  const auto config = cli::find_config_arg(rest);
  if (config.empty()) return args;
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  for (const auto& [key, value] : cli::read_key_values(config)) {
    if (key == "config" || value.empty()) continue;
    if (sub->get_option_no_throw("--" + key) == nullptr) continue;
    out.push_back("--" + key + "=" + value);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic clickstream generation and evaluation"};
  app.set_version_flag("--version", std::string(SEQSYNTH_VERSION));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  common.workers = default_workers();
  common.command_line = join_args(argc, argv);

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "build DS and CVS count matrices from a corpus");
  stats_cmd->add_option("--corpus", stats.corpus, "clickstream file")->required();
  stats_cmd->add_option("--out", stats.out, "output prefix")->required();
  stats_cmd->add_option("--mode", stats.mode, "per_stream or per_occurrence")->capture_default_str();
  add_common(stats_cmd, common, false);

  FilterArgs filter;
  auto* filter_cmd = app.add_subcommand("filter", "drop matrix counts below k");
  filter_cmd->add_option("--matrix", filter.matrix, "triplet file")->required();
  filter_cmd->add_option("--k", filter.k, "minimum count kept")->required();
  filter_cmd->add_option("--out", filter.out, "output triplet file")->required();
  add_common(filter_cmd, common, false);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "sample synthetic clickstreams");
  gen_cmd->add_option("--ds", gen.ds, "DS triplet file")->required();
  gen_cmd->add_option("--cvs", gen.cvs, "CVS triplet file")->required();
  gen_cmd->add_option("--vocab", gen.vocab, "vocabulary file (default: numeric labels)");
  gen_cmd->add_option("--corpus", gen.corpus, "real corpus for empirical length and start");
  gen_cmd->add_option("--out", gen.out, "output clickstream file")->required();
  gen_cmd->add_option("--preset", gen.preset, "videolectures: m=5, geometric:0.1, 20000 streams");
  gen_cmd->add_option("--memory", gen.memory, "constant:m or gaussian:mean,std")->capture_default_str();
  gen_cmd->add_option("--length", gen.length, "empirical or constant:L|geometric:p|poisson:l|negbin:r,p|gaussian:m,s");
  gen_cmd->add_option("--epsilon", gen.epsilon, "random jump probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--count", gen.count, "number of streams")->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--start", gen.start, "uniform, empirical or item:LABEL");
  gen_cmd->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  add_common(gen_cmd, common, true);

  FidelityArgs fid;
  auto* fid_cmd = app.add_subcommand("fidelity", "top-z rank correlation between real and synthetic matrices");
  fid_cmd->add_option("--real", fid.real, "real DS or CVS triplet file")->required();
  fid_cmd->add_option("--syn-corpus", fid.syn_corpus, "synthetic clickstream file");
  fid_cmd->add_option("--syn-matrix", fid.syn_matrix, "synthetic triplet file");
  fid_cmd->add_option("--vocab", fid.vocab, "vocabulary of the real matrix (with --syn-corpus)");
  fid_cmd->add_option("--z", fid.z, "columns per row")->capture_default_str();
  fid_cmd->add_option("--out", fid.out, "report file")->required();
  add_common(fid_cmd, common, false);

  UtilityArgs util;
  auto* util_cmd = app.add_subcommand("utility", "k-fold Real/Syn/Rnd recommender comparison");
  util_cmd->add_option("--corpus", util.corpus, "clickstream file")->required();
  util_cmd->add_option("--out", util.out, "report file")->required();
  util_cmd->add_option("--folds", util.folds, "number of folds")->capture_default_str()->check(CLI::Range(2, 1000000));
  util_cmd->add_option("--memory", util.memory, "constant:m or gaussian:mean,std")->capture_default_str();
  util_cmd->add_option("--length", util.length, "empirical or a length distribution")->capture_default_str();
  util_cmd->add_option("--start", util.start, "empirical, uniform or item:LABEL")->capture_default_str();
  util_cmd->add_option("--epsilon", util.epsilon, "Syn random jump probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  util_cmd->add_option("--random-epsilon", util.random_epsilon, "Rnd random jump probability")->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  util_cmd->add_option("--mode", util.mode, "per_stream or per_occurrence")->capture_default_str();
  util_cmd->add_option("--knn-k", util.knn_k, "Item-KNN neighbors")->capture_default_str()->check(CLI::PositiveNumber);
  util_cmd->add_option("--prefix", util.prefix, "query prefix fraction")->capture_default_str();
  util_cmd->add_option("--list-length", util.list_length, "recommendations per user")->capture_default_str()
      ->check(CLI::PositiveNumber);
  util_cmd->add_option("--seed", util.seed, "random seed")->capture_default_str();
  add_common(util_cmd, common, true);

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "horizontal, vertical and k-fold splits");
  split_cmd->add_option("--corpus", split.corpus, "clickstream file")->required();
  split_cmd->add_option("--out", split.out, "output prefix")->required();
  split_cmd->add_option("--horizontal", split.horizontal, "test fraction");
  split_cmd->add_option("--vertical", split.vertical, "query prefix fraction");
  split_cmd->add_option("--folds", split.folds, "write a k-fold assignment")->check(CLI::Range(2, 1000000));
  split_cmd->add_option("--seed", split.seed, "random seed")->capture_default_str();
  add_common(split_cmd, common, false);

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(app, std::move(args));
    std::vector<char*> cargs;
    for (auto& s : args) cargs.push_back(s.data());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "seqsynth: error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*stats_cmd) run_stats(stats, common);
    if (*filter_cmd) run_filter(filter, common);
    if (*gen_cmd) run_generate(gen, common, *gen_cmd);
    if (*fid_cmd) run_fidelity(fid, common);
    if (*util_cmd) run_utility(util, common);
    if (*split_cmd) run_split(split, common, *split_cmd);
  } catch (const std::exception& e) {
    std::cerr << "seqsynth: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
