#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "framemap/coherence.hpp"
#include "framemap/corpus.hpp"
#include "framemap/dot.hpp"
#include "framemap/embeddings.hpp"
#include "framemap/error.hpp"
#include "framemap/evaluation.hpp"
#include "framemap/extraction.hpp"
#include "framemap/jsonio.hpp"
#include "framemap/topicspace.hpp"

namespace fm = framemap;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fm::fail(fm::ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fm::fail(fm::ErrorKind::Io, "cannot read " + path);
  return ss.str();
}

// Buffers every planned output so a failing run leaves no files behind.
class FileSet {
 public:
  void add(std::string path, std::string content) {
    files_.emplace_back(std::move(path), std::move(content));
  }

  void commit() {
    std::vector<std::string> written;
    for (const auto& [path, content] : files_) {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
      if (!out) {
        std::error_code ec;
        for (const auto& p : written) std::filesystem::remove(p, ec);
        std::filesystem::remove(path, ec);
        fm::fail(fm::ErrorKind::Io, "cannot write " + path);
      }
      written.push_back(path);
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

// JSON config file; fills in values for flags the command line left unset.
class Config {
 public:
  void load(const std::string& path) {
    try {
      data_ = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
      fm::fail(fm::ErrorKind::Format, "config " + path + ": " + e.what());
    }
    if (!data_.is_object())
      fm::fail(fm::ErrorKind::Format, "config " + path + " must hold a JSON object");
  }

  bool has(const char* key) const { return data_.contains(key); }

  template <typename T>
  void fill(const CLI::Option* opt, const char* key, T& value) const {
    if (opt->count() > 0 || !data_.contains(key)) return;
    try {
      value = data_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fm::fail(fm::ErrorKind::Format, std::string("config key \"") + key +
                                          "\" has the wrong type");
    }
  }

  uint64_t get_u64(const char* key) const {
    try {
      return data_.at(key).get<uint64_t>();
    } catch (const nlohmann::json::exception&) {
      fm::fail(fm::ErrorKind::Format, std::string("config key \"") + key +
                                          "\" has the wrong type");
    }
  }

 private:
  nlohmann::json data_ = nlohmann::json::object();
};

uint64_t parse_env_seed(const char* text) {
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(text, &end, 10);
  if (errno != 0 || end == text || *end != '\0')
    fm::fail(fm::ErrorKind::Argument,
             "FRAMEMAP_SEED must be an unsigned integer, got \"" + std::string(text) + "\"");
  return v;
}

// Precedence: flag, then config key, then FRAMEMAP_SEED, then 42.
uint64_t resolve_seed(const CLI::Option* opt, uint64_t flag_value, const Config& cfg) {
  if (opt->count() > 0) return flag_value;
  if (cfg.has("seed")) return cfg.get_u64("seed");
  if (const char* env = std::getenv("FRAMEMAP_SEED")) return parse_env_seed(env);
  return 42;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

fm::CorpusFormat corpus_format(const std::string& path, const std::string& override_) {
  if (override_ == "csv") return fm::CorpusFormat::Csv;
  if (override_ == "json") return fm::CorpusFormat::Json;
  if (!override_.empty())
    fm::fail(fm::ErrorKind::Argument, "unknown corpus format \"" + override_ + "\" (use csv or json)");
  if (ends_with(path, ".csv")) return fm::CorpusFormat::Csv;
  if (ends_with(path, ".json")) return fm::CorpusFormat::Json;
  fm::fail(fm::ErrorKind::Argument, "cannot infer corpus format of " + path + "; pass --format csv|json");
}

fm::EmbeddingFormat embedding_format(const std::string& path, const std::string& override_) {
  if (override_ == "jsonl") return fm::EmbeddingFormat::Jsonl;
  if (override_ == "binary") return fm::EmbeddingFormat::Binary;
  if (!override_.empty())
    fm::fail(fm::ErrorKind::Argument,
             "unknown embedding format \"" + override_ + "\" (use jsonl or binary)");
  if (ends_with(path, ".jsonl")) return fm::EmbeddingFormat::Jsonl;
  if (ends_with(path, ".bin") || ends_with(path, ".fmeb")) return fm::EmbeddingFormat::Binary;
  fm::fail(fm::ErrorKind::Argument,
           "cannot infer embedding format of " + path + "; pass --embeddings-format jsonl|binary");
}

fm::CoherenceCombiner parse_combiner(const std::string& s) {
  if (s == "geometric") return fm::CoherenceCombiner::GeometricMean;
  if (s == "product") return fm::CoherenceCombiner::Product;
  fm::fail(fm::ErrorKind::Argument, "unknown combiner \"" + s + "\" (use geometric or product)");
}

void require(bool ok, const std::string& message) {
  if (!ok) fm::fail(fm::ErrorKind::Argument, message);
}

fm::Corpus load_corpus(const std::string& path, const std::string& format, bool group) {
  fm::Corpus corpus = fm::parse_corpus(read_file(path), corpus_format(path, format));
  if (group) corpus = fm::apply_frame_grouping(corpus);
  return corpus;
}

fm::EmbeddingStore fallback_store(const fm::Corpus& corpus, size_t dim, uint64_t seed) {
  fm::EmbeddingStore store(dim);
  for (const auto& d : corpus.docs())
    if (!store.contains(d.embedding_key()))
      store.insert(d.embedding_key(), fm::fallback_encode(d.headline, dim, seed));
  return store;
}

// Shared corpus/embeddings/topics plumbing for extract and grid.
struct PipelineArgs {
  std::string corpus_path, format, embeddings_path, embeddings_fmt, topics_path;
  size_t fallback_dim = 0;
  bool group = false;
  int min_pts = 3;
  double eps_percentile = 0.85;
  double alpha = 0.01;
  int k = 6;
  double coverage = 0.5;
  double epsilon = 1e-3;
  double lambda = 1e-3;
  double tolerance = 1e-6;
  uint64_t seed = 42;
  std::string config_path;

  CLI::Option* o_corpus = nullptr;
  CLI::Option* o_format = nullptr;
  CLI::Option* o_embeddings = nullptr;
  CLI::Option* o_embeddings_fmt = nullptr;
  CLI::Option* o_topics = nullptr;
  CLI::Option* o_fallback = nullptr;
  CLI::Option* o_group = nullptr;
  CLI::Option* o_min_pts = nullptr;
  CLI::Option* o_eps_pct = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_k = nullptr;
  CLI::Option* o_coverage = nullptr;
  CLI::Option* o_epsilon = nullptr;
  CLI::Option* o_lambda = nullptr;
  CLI::Option* o_tolerance = nullptr;
  CLI::Option* o_seed = nullptr;

  void wire(CLI::App* cmd) {
    o_corpus = cmd->add_option("--corpus", corpus_path, "corpus file (csv or json)");
    o_format = cmd->add_option("--format", format, "corpus format: csv or json");
    o_embeddings = cmd->add_option("--embeddings", embeddings_path, "embedding file (jsonl or binary)");
    o_embeddings_fmt =
        cmd->add_option("--embeddings-format", embeddings_fmt, "embedding format: jsonl or binary");
    o_topics = cmd->add_option("--topics", topics_path, "precomputed topic sidecar (jsonl)");
    o_fallback = cmd->add_option("--fallback-dim", fallback_dim,
                                 "encode headlines with the built-in hash encoder at this dimension");
    o_group = cmd->add_flag("--group", group, "map raw frames to the grouped scheme after loading");
    o_min_pts = cmd->add_option("--min-pts", min_pts, "clustering density threshold");
    o_eps_pct = cmd->add_option("--eps-percentile", eps_percentile,
                                "percentile of neighbor distances used as the clustering radius");
    o_alpha = cmd->add_option("--alpha", alpha, "topic membership smoothing");
    o_k = cmd->add_option("-k,--k", k, "storyline length in events");
    o_coverage = cmd->add_option("--coverage", coverage, "fraction of topics a map must touch");
    o_epsilon = cmd->add_option("--epsilon", epsilon, "smallest flow kept when decoding");
    o_lambda = cmd->add_option("--lambda", lambda, "tie-break weight on total coherence");
    o_tolerance = cmd->add_option("--tolerance", tolerance, "solution validation tolerance");
    o_seed = cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--config", config_path, "JSON config supplying unset flags");
  }

  Config merge() {
    Config cfg;
    if (!config_path.empty()) cfg.load(config_path);
    cfg.fill(o_corpus, "corpus", corpus_path);
    cfg.fill(o_format, "format", format);
    cfg.fill(o_embeddings, "embeddings", embeddings_path);
    cfg.fill(o_embeddings_fmt, "embeddings_format", embeddings_fmt);
    cfg.fill(o_topics, "topics", topics_path);
    cfg.fill(o_fallback, "fallback_dim", fallback_dim);
    cfg.fill(o_group, "group", group);
    cfg.fill(o_min_pts, "min_pts", min_pts);
    cfg.fill(o_eps_pct, "eps_percentile", eps_percentile);
    cfg.fill(o_alpha, "alpha", alpha);
    cfg.fill(o_k, "k", k);
    cfg.fill(o_coverage, "coverage", coverage);
    cfg.fill(o_epsilon, "epsilon", epsilon);
    cfg.fill(o_lambda, "lambda", lambda);
    cfg.fill(o_tolerance, "tolerance", tolerance);
    seed = resolve_seed(o_seed, seed, cfg);
    return cfg;
  }

  fm::ExtractionParams params() const {
    fm::ExtractionParams p;
    p.k = k;
    p.coverage_threshold = coverage;
    p.edge_keep_epsilon = epsilon;
    p.tie_break_lambda = lambda;
    p.solver_tolerance = tolerance;
    return p;
  }

  struct Loaded {
    fm::Corpus corpus;
    fm::EmbeddingStore store;
    fm::TopicModel topics;
  };

  Loaded load(const char* verb) const {
    require(!corpus_path.empty(), std::string(verb) + " needs --corpus");
    require(!embeddings_path.empty() || fallback_dim > 0,
            std::string(verb) + " needs --embeddings or --fallback-dim");
    require(embeddings_path.empty() || fallback_dim == 0,
            "--embeddings and --fallback-dim are mutually exclusive");

    fm::Corpus corpus = load_corpus(corpus_path, format, group);
    fm::EmbeddingStore store =
        embeddings_path.empty()
            ? fallback_store(corpus, fallback_dim, seed)
            : fm::load_embeddings(read_file(embeddings_path),
                                  embedding_format(embeddings_path, embeddings_fmt));

    fm::TopicSidecar sidecar;
    const bool precomputed = !topics_path.empty();
    if (precomputed) sidecar = fm::parse_topic_sidecar(read_file(topics_path));
    fm::TopicOptions topt;
    topt.method = precomputed ? fm::ProjectionMethod::Precomputed : fm::ProjectionMethod::Pca;
    topt.min_pts = min_pts;
    topt.eps_percentile = eps_percentile;
    topt.alpha = alpha;
    topt.seed = seed;
    fm::TopicModel topics =
        fm::build_topic_model(store, topt, precomputed ? &sidecar : nullptr);
    return {std::move(corpus), std::move(store), std::move(topics)};
  }
};

void setup_ingest(CLI::App& app) {
  struct Args {
    std::string corpus_path, format, out, out_format, config_path;
    bool group = false;
    CLI::Option *o_corpus = nullptr, *o_format = nullptr, *o_out = nullptr,
                *o_out_format = nullptr, *o_group = nullptr;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("ingest", "validate a corpus and rewrite it canonically");
  a->o_corpus = cmd->add_option("--corpus", a->corpus_path, "corpus file (csv or json)");
  a->o_format = cmd->add_option("--format", a->format, "corpus format: csv or json");
  a->o_out = cmd->add_option("--out", a->out, "output corpus path (optional; format by extension)");
  a->o_out_format = cmd->add_option("--output-format", a->out_format, "output format: csv or json");
  a->o_group = cmd->add_flag("--group", a->group, "map raw frames to the grouped scheme");
  cmd->add_option("--config", a->config_path, "JSON config supplying unset flags");

  cmd->callback([a] {
    Config cfg;
    if (!a->config_path.empty()) cfg.load(a->config_path);
    cfg.fill(a->o_corpus, "corpus", a->corpus_path);
    cfg.fill(a->o_format, "format", a->format);
    cfg.fill(a->o_out, "out", a->out);
    cfg.fill(a->o_out_format, "output_format", a->out_format);
    cfg.fill(a->o_group, "group", a->group);
    require(!a->corpus_path.empty(), "ingest needs --corpus");

    fm::Corpus corpus = load_corpus(a->corpus_path, a->format, a->group);

    FileSet files;
    if (!a->out.empty())
      files.add(a->out, fm::export_corpus(corpus, corpus_format(a->out, a->out_format)));
    files.commit();

    const auto& tax = corpus.taxonomy();
    std::cout << corpus.size() << " documents, "
              << (corpus.grouped() ? "grouped" : "raw") << " frames\n";
    const auto& frames = corpus.grouped() ? tax.grouped_frames() : tax.raw_frames();
    for (const auto& f : frames)
      std::cout << "  frame " << f.id << " (" << f.name
                << "): " << corpus.indices_with_frame(f.id).size() << "\n";
    if (!a->out.empty()) std::cout << "wrote " << a->out << "\n";
  });
}

void setup_sample(CLI::App& app) {
  struct Args {
    std::string corpus_path, format, out, out_format, config_path;
    size_t n = 0;
    uint64_t seed = 42;
    CLI::Option *o_corpus = nullptr, *o_format = nullptr, *o_out = nullptr,
                *o_out_format = nullptr, *o_n = nullptr, *o_seed = nullptr;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("sample", "proportional stratified sample by frame");
  a->o_corpus = cmd->add_option("--corpus", a->corpus_path, "corpus file (csv or json)");
  a->o_format = cmd->add_option("--format", a->format, "corpus format: csv or json");
  a->o_n = cmd->add_option("-n,--n", a->n, "sample size");
  a->o_seed = cmd->add_option("--seed", a->seed, "random seed");
  a->o_out = cmd->add_option("--out", a->out, "output corpus path (format by extension)");
  a->o_out_format = cmd->add_option("--output-format", a->out_format, "output format: csv or json");
  cmd->add_option("--config", a->config_path, "JSON config supplying unset flags");

  cmd->callback([a] {
    Config cfg;
    if (!a->config_path.empty()) cfg.load(a->config_path);
    cfg.fill(a->o_corpus, "corpus", a->corpus_path);
    cfg.fill(a->o_format, "format", a->format);
    cfg.fill(a->o_n, "n", a->n);
    cfg.fill(a->o_out, "out", a->out);
    cfg.fill(a->o_out_format, "output_format", a->out_format);
    a->seed = resolve_seed(a->o_seed, a->seed, cfg);
    require(!a->corpus_path.empty(), "sample needs --corpus");
    require(a->n > 0, "sample needs --n");
    require(!a->out.empty(), "sample needs --out");

    fm::Corpus corpus = load_corpus(a->corpus_path, a->format, false);
    fm::Corpus sampled = fm::stratified_sample(corpus, a->n, a->seed);

    FileSet files;
    files.add(a->out, fm::export_corpus(sampled, corpus_format(a->out, a->out_format)));
    files.commit();
    std::cout << "wrote " << a->out << ": " << sampled.size() << " of " << corpus.size()
              << " documents\n";
  });
}

void setup_extract(CLI::App& app) {
  struct Args {
    PipelineArgs pipe;
    std::string start, end, out, dot, coherence_csv, topics_out, combiner = "geometric";
    CLI::Option *o_start = nullptr, *o_end = nullptr, *o_out = nullptr, *o_dot = nullptr,
                *o_coh = nullptr, *o_topics_out = nullptr, *o_combiner = nullptr;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("extract", "extract one narrative map between two endpoints");
  a->pipe.wire(cmd);
  a->o_start = cmd->add_option("--start", a->start, "start endpoint, frame:<n> or id:<docid>");
  a->o_end = cmd->add_option("--end", a->end, "end endpoint, frame:<n> or id:<docid>");
  a->o_combiner = cmd->add_option("--combiner", a->combiner, "coherence combiner: geometric or product");
  a->o_out = cmd->add_option("--out", a->out, "map JSON output path");
  a->o_dot = cmd->add_option("--dot", a->dot, "DOT output path (default: --out with .dot)");
  a->o_coh = cmd->add_option("--coherence-csv", a->coherence_csv, "write the pair score table here");
  a->o_topics_out = cmd->add_option("--topics-out", a->topics_out, "write the topic sidecar here");

  cmd->callback([a] {
    Config cfg = a->pipe.merge();
    cfg.fill(a->o_start, "start", a->start);
    cfg.fill(a->o_end, "end", a->end);
    cfg.fill(a->o_combiner, "combiner", a->combiner);
    cfg.fill(a->o_out, "out", a->out);
    cfg.fill(a->o_dot, "dot", a->dot);
    cfg.fill(a->o_coh, "coherence_csv", a->coherence_csv);
    cfg.fill(a->o_topics_out, "topics_out", a->topics_out);
    require(!a->start.empty(), "extract needs --start");
    require(!a->end.empty(), "extract needs --end");
    require(!a->out.empty(), "extract needs --out");

    fm::ExtractionParams params = a->pipe.params();
    params.validate();
    auto loaded = a->pipe.load("extract");

    fm::CoherenceOptions copt;
    copt.combiner = parse_combiner(a->combiner);
    fm::CoherenceMatrix matrix =
        fm::build_coherence(loaded.corpus, loaded.store, loaded.topics, copt);
    fm::NarrativeMap map =
        fm::extract_map(loaded.corpus, matrix, loaded.topics, fm::EndpointSpec::parse(a->start),
                        fm::EndpointSpec::parse(a->end), params);

    std::string dot_path = a->dot;
    if (dot_path.empty())
      dot_path = std::filesystem::path(a->out).replace_extension(".dot").string();

    FileSet files;
    files.add(a->out, fm::map_to_json(map));
    files.add(dot_path, fm::export_dot(map, loaded.corpus.taxonomy()));
    if (!a->coherence_csv.empty()) files.add(a->coherence_csv, matrix.to_csv());
    if (!a->topics_out.empty()) files.add(a->topics_out, fm::save_topic_sidecar(loaded.topics));
    files.commit();

    std::cout << "wrote " << a->out << " and " << dot_path << "\n";
    std::cout << "  nodes " << map.nodes.size() << ", edges " << map.edges.size()
              << ", storyline " << map.main_storyline.size() << ", bottleneck "
              << fm::jsonio::real_fixed(map.objective) << "\n";
  });
}

void setup_grid(CLI::App& app) {
  struct Args {
    PipelineArgs pipe;
    std::string out;
    CLI::Option* o_out = nullptr;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand(
      "grid", "extract and evaluate a map for every start/end frame pair");
  a->pipe.wire(cmd);
  a->o_out = cmd->add_option("--out", a->out, "report JSON output path");

  cmd->callback([a] {
    Config cfg = a->pipe.merge();
    cfg.fill(a->o_out, "out", a->out);
    require(!a->out.empty(), "grid needs --out");

    fm::ExtractionParams params = a->pipe.params();
    params.validate();
    auto loaded = a->pipe.load("grid");

    fm::FramingReport report = fm::run_grid(loaded.corpus, loaded.store, loaded.topics, params);

    FileSet files;
    files.add(a->out, fm::report_to_json(report));
    files.commit();

    size_t ok = 0;
    for (const auto& cell : report.cells)
      if (cell.ok) ++ok;
    std::cout << "wrote " << a->out << ": " << ok << " of " << report.cells.size()
              << " cells extracted\n";
  });
}

void setup_evaluate(CLI::App& app) {
  struct Args {
    std::string map_path, corpus_path, format, out, config_path;
    bool group = false;
    CLI::Option *o_map = nullptr, *o_corpus = nullptr, *o_format = nullptr, *o_out = nullptr,
                *o_group = nullptr;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("evaluate", "score a stored map's framing against a corpus");
  a->o_map = cmd->add_option("--map", a->map_path, "map JSON file");
  a->o_corpus = cmd->add_option("--corpus", a->corpus_path, "corpus file (csv or json)");
  a->o_format = cmd->add_option("--format", a->format, "corpus format: csv or json");
  a->o_group = cmd->add_flag("--group", a->group, "map raw frames to the grouped scheme");
  a->o_out = cmd->add_option("--out", a->out, "output path (stdout when absent)");
  cmd->add_option("--config", a->config_path, "JSON config supplying unset flags");

  cmd->callback([a] {
    Config cfg;
    if (!a->config_path.empty()) cfg.load(a->config_path);
    cfg.fill(a->o_map, "map", a->map_path);
    cfg.fill(a->o_corpus, "corpus", a->corpus_path);
    cfg.fill(a->o_format, "format", a->format);
    cfg.fill(a->o_group, "group", a->group);
    cfg.fill(a->o_out, "out", a->out);
    require(!a->map_path.empty(), "evaluate needs --map");
    require(!a->corpus_path.empty(), "evaluate needs --corpus");

    fm::NarrativeMap map = fm::map_from_json(read_file(a->map_path));
    fm::Corpus corpus = load_corpus(a->corpus_path, a->format, a->group);
    std::string json = fm::evaluate_map_to_json(map, corpus);

    if (a->out.empty()) {
      std::cout << json;
    } else {
      FileSet files;
      files.add(a->out, std::move(json));
      files.commit();
      std::cout << "wrote " << a->out << "\n";
    }
  });
}

void setup_export(CLI::App& app) {
  struct Args {
    std::string map_path, out, config_path;
    CLI::Option *o_map = nullptr, *o_out = nullptr;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("export", "render a stored map as Graphviz DOT");
  a->o_map = cmd->add_option("--map", a->map_path, "map JSON file");
  a->o_out = cmd->add_option("--out", a->out, "output path (stdout when absent)");
  cmd->add_option("--config", a->config_path, "JSON config supplying unset flags");

  cmd->callback([a] {
    Config cfg;
    if (!a->config_path.empty()) cfg.load(a->config_path);
    cfg.fill(a->o_map, "map", a->map_path);
    cfg.fill(a->o_out, "out", a->out);
    require(!a->map_path.empty(), "export needs --map");

    fm::NarrativeMap map = fm::map_from_json(read_file(a->map_path));
    std::string dot = fm::export_dot(map, fm::FrameTaxonomy::gvfc());

    if (a->out.empty()) {
      std::cout << dot;
    } else {
      FileSet files;
      files.add(a->out, std::move(dot));
      files.commit();
      std::cout << "wrote " << a->out << "\n";
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"narrative maps from frame-labeled news corpora"};
  app.require_subcommand(1);
  setup_ingest(app);
  setup_sample(app);
  setup_extract(app);
  setup_grid(app);
  setup_evaluate(app);
  setup_export(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const fm::Error& e) {
    std::cerr << "framemap: " << e.what() << "\n";
    return e.kind() == fm::ErrorKind::Infeasible ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "framemap: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
