#include "framemap/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "framemap/error.hpp"
#include "framemap/jsonio.hpp"

namespace framemap {

namespace {

constexpr double kDistTol = 1e-6;

// Grouped frame ids of a map's nodes, mapping raw frames through the
// taxonomy when necessary.
std::vector<int> grouped_frames_of(const NarrativeMap& map, const FrameTaxonomy& tax) {
  std::vector<int> out;
  out.reserve(map.nodes.size());
  for (const auto& n : map.nodes)
    out.push_back(map.grouped_frames ? n.doc.frame : tax.group_of(n.doc.frame));
  return out;
}

int frame_of(const NarrativeMap& map, const std::string& id) {
  for (const auto& n : map.nodes)
    if (n.doc.id == id) return n.doc.frame;
  fail(ErrorKind::Argument, "map does not hold node " + id);
}

}  // namespace

std::vector<double> framing_distribution(const std::vector<int>& frames, int num_frames) {
  if (frames.empty())
    fail(ErrorKind::Argument, "framing distribution of an empty label set");
  if (num_frames < 1)
    fail(ErrorKind::Argument, "framing distribution needs at least one frame");
  std::vector<double> out(num_frames, 0.0);
  for (int f : frames) {
    if (f < 1 || f > num_frames)
      fail(ErrorKind::Domain, "frame id " + std::to_string(f) + " outside 1.." +
                                  std::to_string(num_frames));
    out[f - 1] += 1.0;
  }
  for (double& v : out) v /= static_cast<double>(frames.size());
  return out;
}

double js_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size() || p.empty())
    fail(ErrorKind::Argument, "js divergence needs equal-length distributions");
  auto check = [](const std::vector<double>& d) {
    double sum = 0.0;
    for (double v : d) {
      if (!(v >= 0.0)) fail(ErrorKind::Argument, "js divergence: negative probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kDistTol)
      fail(ErrorKind::Argument, "js divergence: distribution does not sum to one");
  };
  check(p);
  check(q);

  auto term = [](double v, double m) {
    if (v == 0.0 || m == 0.0) return 0.0;
    return v * std::log2(v / m);
  };
  double d = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    d += 0.5 * term(p[i], m) + 0.5 * term(q[i], m);
  }
  return std::min(std::max(d, 0.0), 1.0);
}

ConsistencyMetrics frame_consistency(const NarrativeMap& map) {
  if (map.nodes.empty() || map.edges.empty())
    fail(ErrorKind::Argument, "frame consistency of an empty map");

  ConsistencyMetrics m;
  size_t agree = 0;
  for (const auto& e : map.edges)
    if (frame_of(map, e.from) == frame_of(map, e.to)) ++agree;
  m.edge_agreement = static_cast<double>(agree) / static_cast<double>(map.edges.size());

  const int start_frame = frame_of(map, map.source_id);
  const int end_frame = frame_of(map, map.sink_id);
  size_t in_start = 0, in_end = 0;
  for (const auto& n : map.nodes) {
    if (n.doc.frame == start_frame) ++in_start;
    if (n.doc.frame == end_frame) ++in_end;
  }
  m.endpoint_match_start = static_cast<double>(in_start) / static_cast<double>(map.nodes.size());
  m.endpoint_match_end = static_cast<double>(in_end) / static_cast<double>(map.nodes.size());
  if (start_frame == end_frame) m.endpoint_match = m.endpoint_match_start;

  int transitions = 0;
  for (size_t i = 0; i + 1 < map.main_storyline.size(); ++i)
    if (frame_of(map, map.main_storyline[i]) != frame_of(map, map.main_storyline[i + 1]))
      ++transitions;
  m.storyline_transitions = transitions;
  return m;
}

SummaryStats summary_stats(std::vector<double> values) {
  if (values.empty()) fail(ErrorKind::Argument, "summary stats of an empty sample");
  SummaryStats s;
  const size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);

  std::sort(values.begin(), values.end());
  s.median = (n % 2 == 1) ? values[n / 2]
                          : 0.5 * (values[n / 2 - 1] + values[n / 2]);

  if (n >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

FramingReport run_grid(const Corpus& corpus, const EmbeddingStore& store,
                       const TopicModel& topics, const ExtractionParams& params) {
  params.validate();
  if (!corpus.grouped())
    fail(ErrorKind::State, "grid evaluation expects grouped frames; group the corpus first");

  const auto& tax = corpus.taxonomy();
  const int nf = static_cast<int>(tax.grouped_frames().size());

  FramingReport report;
  report.params = params;
  report.corpus_documents = corpus.size();
  {
    std::vector<int> frames;
    for (const auto& d : corpus.docs()) frames.push_back(d.frame);
    report.corpus_distribution = framing_distribution(frames, nf);
  }

  CoherenceMatrix matrix = build_coherence(corpus, store, topics);

  for (int s = 1; s <= nf; ++s)
    for (int e = 1; e <= nf; ++e) {
      GridCell cell;
      cell.start_frame = s;
      cell.end_frame = e;
      try {
        NarrativeMap map = extract_map(corpus, matrix, topics, EndpointSpec::by_frame(s),
                                       EndpointSpec::by_frame(e), params);
        cell.ok = true;
        cell.source_id = map.source_id;
        cell.sink_id = map.sink_id;
        cell.size = map.nodes.size();
        cell.distribution = framing_distribution(grouped_frames_of(map, tax), nf);
        cell.jsd = js_divergence(cell.distribution, report.corpus_distribution);
        cell.consistency = frame_consistency(map);
        cell.map = std::move(map);
      } catch (const Error& err) {
        cell.ok = false;
        cell.error = err.what();
      }
      report.cells.push_back(std::move(cell));
    }
  return report;
}

namespace {

void write_distribution(jsonio::Writer& w, const std::vector<double>& d) {
  w.begin_array();
  for (double v : d) w.real(v);
  w.end_array();
}

void write_consistency(jsonio::Writer& w, const ConsistencyMetrics& m) {
  w.key("edge_agreement").real(m.edge_agreement);
  w.key("endpoint_match_start").real(m.endpoint_match_start);
  w.key("endpoint_match_end").real(m.endpoint_match_end);
  if (m.endpoint_match) w.key("endpoint_match").real(*m.endpoint_match);
  else w.key("endpoint_match").null();
  w.key("storyline_transitions").integer(m.storyline_transitions);
}

void write_params(jsonio::Writer& w, const ExtractionParams& p) {
  w.begin_object();
  w.key("k").integer(p.k);
  w.key("coverage_threshold").real(p.coverage_threshold);
  w.key("edge_keep_epsilon").real(p.edge_keep_epsilon);
  w.key("tie_break_lambda").real(p.tie_break_lambda);
  w.key("solver_tolerance").real(p.solver_tolerance);
  w.end_object();
}

// Per-cell values arranged as a table with row/column averages over the
// cells that produced a map.
struct Table {
  int n = 0;
  std::vector<std::optional<double>> cells;

  std::optional<double> average(std::vector<std::optional<double>> vals) const {
    double sum = 0.0;
    int cnt = 0;
    for (const auto& v : vals)
      if (v) {
        sum += *v;
        ++cnt;
      }
    if (cnt == 0) return std::nullopt;
    return sum / cnt;
  }
  std::optional<double> row_avg(int r) const {
    std::vector<std::optional<double>> v(cells.begin() + r * n, cells.begin() + (r + 1) * n);
    return average(v);
  }
  std::optional<double> col_avg(int c) const {
    std::vector<std::optional<double>> v;
    for (int r = 0; r < n; ++r) v.push_back(cells[r * n + c]);
    return average(v);
  }
  std::vector<double> present() const {
    std::vector<double> out;
    for (const auto& v : cells)
      if (v) out.push_back(*v);
    return out;
  }
};

void write_table(jsonio::Writer& w, const Table& t) {
  w.key("table").begin_array();
  for (int r = 0; r < t.n; ++r) {
    w.begin_array();
    for (int c = 0; c < t.n; ++c) {
      const auto& v = t.cells[r * t.n + c];
      if (v) w.real(*v);
      else w.null();
    }
    w.end_array();
  }
  w.end_array();
  w.key("row_averages").begin_array();
  for (int r = 0; r < t.n; ++r) {
    auto v = t.row_avg(r);
    if (v) w.real(*v);
    else w.null();
  }
  w.end_array();
  w.key("column_averages").begin_array();
  for (int c = 0; c < t.n; ++c) {
    auto v = t.col_avg(c);
    if (v) w.real(*v);
    else w.null();
  }
  w.end_array();
}

}  // namespace

std::string report_to_json(const FramingReport& report) {
  const int nf = static_cast<int>(report.corpus_distribution.size());
  jsonio::Writer w;
  w.begin_object();
  w.key("corpus").begin_object();
  w.key("documents").integer(static_cast<int64_t>(report.corpus_documents));
  w.key("distribution");
  write_distribution(w, report.corpus_distribution);
  w.end_object();
  w.key("params");
  write_params(w, report.params);

  w.key("cells").begin_array();
  for (const auto& cell : report.cells) {
    w.begin_object();
    w.key("start_frame").integer(cell.start_frame);
    w.key("end_frame").integer(cell.end_frame);
    if (!cell.ok) {
      w.key("status").string(cell.error);
      w.end_object();
      continue;
    }
    w.key("status").string("ok");
    w.key("source").string(cell.source_id);
    w.key("sink").string(cell.sink_id);
    w.key("size").integer(static_cast<int64_t>(cell.size));
    w.key("distribution");
    write_distribution(w, cell.distribution);
    w.key("jsd").real(cell.jsd);
    write_consistency(w, cell.consistency);
    w.end_object();
  }
  w.end_array();

  Table sizes, jsd;
  sizes.n = nf;
  jsd.n = nf;
  for (const auto& cell : report.cells) {
    sizes.cells.push_back(cell.ok ? std::optional<double>(static_cast<double>(cell.size))
                                  : std::nullopt);
    jsd.cells.push_back(cell.ok ? std::optional<double>(cell.jsd) : std::nullopt);
  }

  w.key("sizes").begin_object();
  write_table(w, sizes);
  {
    auto vals = sizes.present();
    if (vals.empty()) {
      w.key("mean").null();
      w.key("median").null();
      w.key("stddev").null();
    } else {
      SummaryStats s = summary_stats(vals);
      w.key("mean").real(s.mean);
      w.key("median").real(s.median);
      if (s.stddev) w.key("stddev").real(*s.stddev);
      else w.key("stddev").null();
    }
  }
  w.end_object();

  w.key("jsd").begin_object();
  write_table(w, jsd);
  {
    auto avg = jsd.average(jsd.cells);
    if (avg) w.key("global_average").real(*avg);
    else w.key("global_average").null();
  }
  w.end_object();

  w.end_object();
  return w.take();
}

std::string evaluate_map_to_json(const NarrativeMap& map, const Corpus& corpus) {
  const auto& tax = corpus.taxonomy();
  const int nf = static_cast<int>(tax.grouped_frames().size());

  std::vector<int> corpus_frames;
  for (const auto& d : corpus.docs())
    corpus_frames.push_back(corpus.grouped() ? d.frame : tax.group_of(d.frame));
  const std::vector<double> corpus_dist = framing_distribution(corpus_frames, nf);
  const std::vector<double> map_dist =
      framing_distribution(grouped_frames_of(map, tax), nf);
  const double jsd = js_divergence(map_dist, corpus_dist);
  const ConsistencyMetrics m = frame_consistency(map);

  jsonio::Writer w;
  w.begin_object();
  w.key("map").begin_object();
  w.key("source").string(map.source_id);
  w.key("sink").string(map.sink_id);
  w.key("size").integer(static_cast<int64_t>(map.nodes.size()));
  w.key("objective").real(map.objective);
  w.end_object();
  w.key("corpus").begin_object();
  w.key("documents").integer(static_cast<int64_t>(corpus.size()));
  w.key("distribution");
  write_distribution(w, corpus_dist);
  w.end_object();
  w.key("distribution");
  write_distribution(w, map_dist);
  w.key("jsd").real(jsd);
  write_consistency(w, m);
  w.end_object();
  return w.take();
}

}  // namespace framemap
