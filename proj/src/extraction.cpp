#include "framemap/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <json.hpp>

#include "framemap/error.hpp"
#include "framemap/jsonio.hpp"

namespace framemap {

namespace {

std::string status_name(lp::Status s) {
  switch (s) {
    case lp::Status::Optimal: return "optimal";
    case lp::Status::Infeasible: return "infeasible";
    case lp::Status::Unbounded: return "unbounded";
    case lp::Status::IterationLimit: return "iteration limit";
  }
  return "unknown";
}

void validate_map(const NarrativeMap& map) {
  if (map.nodes.empty()) fail(ErrorKind::Decode, "narrative map has no nodes");
  if (map.edges.empty()) fail(ErrorKind::Decode, "narrative map has no edges");
  std::map<std::string, size_t> pos;
  for (size_t i = 0; i < map.nodes.size(); ++i) {
    auto [it, ok] = pos.emplace(map.nodes[i].doc.id, i);
    if (!ok) fail(ErrorKind::Decode, "narrative map repeats node " + map.nodes[i].doc.id);
  }
  if (!pos.count(map.source_id) || !pos.count(map.sink_id))
    fail(ErrorKind::Decode, "narrative map endpoints missing from nodes");
  std::map<std::string, int> in_deg, out_deg;
  for (const auto& e : map.edges) {
    if (!pos.count(e.from) || !pos.count(e.to))
      fail(ErrorKind::Decode, "narrative map edge references unknown node");
    if (pos[e.from] >= pos[e.to])
      fail(ErrorKind::Decode, "narrative map edge violates chronological order");
    in_deg[e.to]++;
    out_deg[e.from]++;
  }
  for (const auto& n : map.nodes) {
    const std::string& id = n.doc.id;
    if (id != map.source_id && in_deg[id] == 0)
      fail(ErrorKind::Decode, "narrative map node " + id + " has no incoming edge");
    if (id != map.sink_id && out_deg[id] == 0)
      fail(ErrorKind::Decode, "narrative map node " + id + " has no outgoing edge");
  }
  if (in_deg[map.source_id] != 0 || out_deg[map.sink_id] != 0)
    fail(ErrorKind::Decode, "narrative map endpoints are not source/sink");
  if (map.main_storyline.size() < 2 || map.main_storyline.front() != map.source_id ||
      map.main_storyline.back() != map.sink_id)
    fail(ErrorKind::Decode, "main storyline must run from source to sink");
  std::set<std::pair<std::string, std::string>> edge_set;
  for (const auto& e : map.edges) edge_set.emplace(e.from, e.to);
  for (size_t i = 0; i + 1 < map.main_storyline.size(); ++i)
    if (!edge_set.count({map.main_storyline[i], map.main_storyline[i + 1]}))
      fail(ErrorKind::Decode, "main storyline uses an edge the map does not hold");
}

}  // namespace

void ExtractionParams::validate() const {
  if (k < 2) fail(ErrorKind::Argument, "k must be at least 2");
  if (!(coverage_threshold > 0.0 && coverage_threshold <= 1.0))
    fail(ErrorKind::Argument, "coverage threshold must lie in (0, 1]");
  if (!(edge_keep_epsilon >= 0.0 && edge_keep_epsilon < 1.0))
    fail(ErrorKind::Argument, "edge keep epsilon must lie in [0, 1)");
  if (tie_break_lambda < 0.0)
    fail(ErrorKind::Argument, "tie-break lambda must be nonnegative");
  if (!(solver_tolerance > 0.0))
    fail(ErrorKind::Argument, "solver tolerance must be positive");
}

EndpointSpec EndpointSpec::by_frame(int frame) {
  EndpointSpec s;
  s.kind = Kind::Frame;
  s.frame = frame;
  return s;
}

EndpointSpec EndpointSpec::by_id(std::string id) {
  EndpointSpec s;
  s.kind = Kind::Id;
  s.id = std::move(id);
  return s;
}

EndpointSpec EndpointSpec::parse(std::string_view text) {
  if (text.rfind("frame:", 0) == 0) {
    std::string rest(text.substr(6));
    size_t used = 0;
    int frame = 0;
    try {
      frame = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size())
      fail(ErrorKind::Argument, "endpoint spec: bad frame number in \"" + std::string(text) + "\"");
    return by_frame(frame);
  }
  if (text.rfind("id:", 0) == 0) {
    std::string rest(text.substr(3));
    if (rest.empty())
      fail(ErrorKind::Argument, "endpoint spec: empty id in \"" + std::string(text) + "\"");
    return by_id(std::move(rest));
  }
  fail(ErrorKind::Argument,
       "endpoint spec must look like frame:<n> or id:<docid>, got \"" + std::string(text) + "\"");
}

std::pair<std::string, std::string> select_endpoints(const Corpus& corpus,
                                                     const EndpointSpec& start,
                                                     const EndpointSpec& end) {
  if (corpus.empty()) fail(ErrorKind::Argument, "cannot select endpoints of an empty corpus");
  const auto& tax = corpus.taxonomy();

  auto check_frame = [&](int f) {
    bool ok = corpus.grouped() ? tax.is_grouped_frame(f) : tax.is_raw_frame(f);
    if (!ok)
      fail(ErrorKind::Domain, "frame " + std::to_string(f) +
                                  (corpus.grouped() ? " is not a grouped frame id"
                                                    : " is not a raw frame id"));
  };

  auto resolve = [&](const EndpointSpec& spec, bool earliest) -> size_t {
    if (spec.kind == EndpointSpec::Kind::Id) {
      auto idx = corpus.index_of(spec.id);
      if (!idx) fail(ErrorKind::Resolution, "no document with id " + spec.id);
      return *idx;
    }
    check_frame(spec.frame);
    auto members = corpus.indices_with_frame(spec.frame);
    if (members.empty())
      fail(ErrorKind::Resolution,
           "no document carries frame " + std::to_string(spec.frame));
    return earliest ? members.front() : members.back();
  };

  size_t s = resolve(start, true);
  size_t e = resolve(end, false);
  if (s >= e)
    fail(ErrorKind::Order, "start endpoint " + corpus.doc(s).id +
                               " does not precede end endpoint " + corpus.doc(e).id);
  return {corpus.doc(s).id, corpus.doc(e).id};
}

LpModel build_lp(const CoherenceMatrix& matrix, const TopicModel& topics,
                 const std::string& source_id, const std::string& sink_id,
                 const ExtractionParams& params) {
  params.validate();
  auto src = matrix.index_of(source_id);
  auto snk = matrix.index_of(sink_id);
  if (!src) fail(ErrorKind::Argument, "source id not in coherence matrix: " + source_id);
  if (!snk) fail(ErrorKind::Argument, "sink id not in coherence matrix: " + sink_id);
  if (*src >= *snk)
    fail(ErrorKind::Order, "source must precede sink chronologically");

  LpModel model;
  model.source = *src;
  model.sink = *snk;
  model.topic_count = topics.topic_count();

  // Candidates: every document inside the endpoint time window.
  const int64_t t0 = matrix.timestamp(*src);
  const int64_t t1 = matrix.timestamp(*snk);
  for (size_t i = 0; i < matrix.size(); ++i)
    if (matrix.timestamp(i) >= t0 && matrix.timestamp(i) <= t1)
      model.candidates.push_back(i);

  for (size_t c : model.candidates)
    if (!topics.contains(matrix.embedding_key(c)))
      fail(ErrorKind::Completeness, "no topic membership for document " + matrix.id(c));

  // Edges between candidates, forward in corpus order, none into the source
  // and none out of the sink.
  for (size_t a = 0; a < model.candidates.size(); ++a)
    for (size_t b = a + 1; b < model.candidates.size(); ++b) {
      size_t i = model.candidates[a];
      size_t j = model.candidates[b];
      if (j == model.source || i == model.sink) continue;
      model.edges.push_back({i, j, matrix.coherence(i, j)});
    }
  const size_t p = model.edges.size();
  if (p == 0) fail(ErrorKind::State, "no candidate edges between source and sink");

  model.lambda_scaled = params.tie_break_lambda / static_cast<double>(std::max<size_t>(1, p));
  model.coverage_required =
      static_cast<int>(std::ceil(params.coverage_threshold * model.topic_count - 1e-9));
  if (model.coverage_required < 1) model.coverage_required = 1;

  // Longest source-to-sink chain, in edges.
  {
    std::map<size_t, int64_t> len;
    len[model.source] = 0;
    for (size_t c : model.candidates)
      if (c != model.source) len[c] = -1;
    for (const auto& e : model.edges) {
      if (len[e.from] < 0) continue;
      len[e.to] = std::max(len[e.to], len[e.from] + 1);
    }
    model.longest_path = static_cast<size_t>(std::max<int64_t>(len[model.sink], 0));
  }

  lp::Problem& lp = model.problem;
  for (const auto& e : model.edges)
    lp.add_variable(0.0, 1.0, model.lambda_scaled * e.coherence);
  for (int t = 0; t < model.topic_count; ++t) lp.add_variable(0.0, 1.0, 0.0);
  const int mu = lp.add_variable(0.0, 1.0, 1.0);

  // (a) bottleneck: mu <= 1 - x_e (1 - coh_e) for every edge
  for (size_t e = 0; e < p; ++e) {
    int row = lp.add_constraint(lp::Rel::Le, 1.0);
    lp.add_coefficient(row, mu, 1.0);
    lp.add_coefficient(row, model.edge_var(e), 1.0 - model.edges[e].coherence);
  }
  // (b) unit flow out of the source
  {
    int row = lp.add_constraint(lp::Rel::Eq, 1.0);
    for (size_t e = 0; e < p; ++e)
      if (model.edges[e].from == model.source)
        lp.add_coefficient(row, model.edge_var(e), 1.0);
  }
  // (c) unit flow into the sink
  {
    int row = lp.add_constraint(lp::Rel::Eq, 1.0);
    for (size_t e = 0; e < p; ++e)
      if (model.edges[e].to == model.sink)
        lp.add_coefficient(row, model.edge_var(e), 1.0);
  }
  // (d) conservation at intermediates that touch any edge
  {
    std::map<size_t, std::vector<std::pair<size_t, int>>> incident;  // node -> (edge, +in/-out)
    for (size_t e = 0; e < p; ++e) {
      if (model.edges[e].to != model.sink) incident[model.edges[e].to].emplace_back(e, +1);
      if (model.edges[e].from != model.source)
        incident[model.edges[e].from].emplace_back(e, -1);
    }
    for (const auto& [node, terms] : incident) {
      if (node == model.source || node == model.sink) continue;
      int row = lp.add_constraint(lp::Rel::Eq, 0.0);
      for (const auto& [e, sign] : terms)
        lp.add_coefficient(row, model.edge_var(e), static_cast<double>(sign));
    }
  }
  // (e) total flow fixes the expected storyline length
  {
    int row = lp.add_constraint(lp::Rel::Eq, static_cast<double>(params.k - 1));
    for (size_t e = 0; e < p; ++e) lp.add_coefficient(row, model.edge_var(e), 1.0);
  }
  // (f) a topic counts as covered up to the activation flowing through it
  for (int t = 0; t < model.topic_count; ++t) {
    int row = lp.add_constraint(lp::Rel::Le, 0.0);
    lp.add_coefficient(row, model.coverage_var(t), 1.0);
    for (size_t e = 0; e < p; ++e) {
      const auto& edge = model.edges[e];
      double m = topics.membership(matrix.embedding_key(edge.to))[t];
      if (edge.from == model.source)
        m += topics.membership(matrix.embedding_key(edge.from))[t];
      lp.add_coefficient(row, model.edge_var(e), -m);
    }
  }
  // (g) enough topics covered
  {
    int row = lp.add_constraint(lp::Rel::Ge, static_cast<double>(model.coverage_required));
    for (int t = 0; t < model.topic_count; ++t)
      lp.add_coefficient(row, model.coverage_var(t), 1.0);
  }

  return model;
}

LpSolution solve_lp(const LpModel& model, const ExtractionParams& params) {
  params.validate();
  lp::Options opt;
  lp::Solution sol = lp::solve(model.problem, opt);

  if (sol.status == lp::Status::Infeasible) {
    const size_t need = static_cast<size_t>(params.k - 1);
    if (need > model.longest_path)
      fail(ErrorKind::Infeasible,
           "no narrative map with k=" + std::to_string(params.k) +
               ": the longest source-to-sink chain has " +
               std::to_string(model.longest_path) +
               " edges but k-1=" + std::to_string(need) +
               " are required; reduce k or widen the endpoints");
    fail(ErrorKind::Infeasible,
         "coverage requirement is unreachable: " + std::to_string(model.coverage_required) +
             " of " + std::to_string(model.topic_count) +
             " topics demanded; lower the coverage threshold");
  }
  if (sol.status != lp::Status::Optimal)
    fail(ErrorKind::State, "lp solver stopped without an optimum (" +
                               status_name(sol.status) + ")");

  LpSolution out;
  out.iterations = sol.iterations;
  out.objective = sol.objective;
  const size_t p = model.edges.size();
  out.edge_flow.assign(sol.x.begin(), sol.x.begin() + p);
  out.coverage.assign(sol.x.begin() + p, sol.x.begin() + p + model.topic_count);
  out.bottleneck = sol.x[model.bottleneck_var()];

  // Cross-check the reported optimum against the flow constraints before
  // anything downstream trusts it.
  const double tol = params.solver_tolerance;
  auto check = [&](double value, double want, const char* what) {
    if (std::abs(value - want) > tol)
      fail(ErrorKind::State, std::string("lp solution violates ") + what);
  };
  double src_out = 0.0, snk_in = 0.0, total = 0.0;
  std::map<size_t, double> net;
  for (size_t e = 0; e < p; ++e) {
    const double x = out.edge_flow[e];
    if (x < -tol || x > 1.0 + tol)
      fail(ErrorKind::State, "lp solution violates edge flow bounds");
    if (out.bottleneck + (1.0 - model.edges[e].coherence) * x > 1.0 + tol)
      fail(ErrorKind::State, "lp solution violates the bottleneck bound");
    if (model.edges[e].from == model.source) src_out += x;
    if (model.edges[e].to == model.sink) snk_in += x;
    total += x;
    net[model.edges[e].to] += x;
    net[model.edges[e].from] -= x;
  }
  check(src_out, 1.0, "unit flow out of the source");
  check(snk_in, 1.0, "unit flow into the sink");
  check(total, static_cast<double>(params.k - 1), "the total flow budget");
  for (const auto& [node, flow] : net)
    if (node != model.source && node != model.sink)
      check(flow, 0.0, "flow conservation");
  double covered = 0.0;
  for (double c : out.coverage) covered += c;
  if (covered < model.coverage_required - tol)
    fail(ErrorKind::State, "lp solution violates topic coverage");
  return out;
}

NarrativeMap decode_map(const LpSolution& solution, const LpModel& model,
                        const CoherenceMatrix& matrix, const Corpus& corpus,
                        const ExtractionParams& params) {
  params.validate();
  if (solution.edge_flow.size() != model.edges.size())
    fail(ErrorKind::Argument, "solution does not match the model");

  // Keep edges whose flow clears epsilon.
  struct Kept {
    size_t from, to;
    double flow, coherence;
  };
  std::vector<Kept> kept;
  for (size_t e = 0; e < model.edges.size(); ++e)
    if (solution.edge_flow[e] >= params.edge_keep_epsilon)
      kept.push_back({model.edges[e].from, model.edges[e].to, solution.edge_flow[e],
                      model.edges[e].coherence});

  auto no_path = [&]() {
    fail(ErrorKind::Decode,
         "no source-to-sink path survives edge_keep_epsilon=" +
             jsonio::real_fixed(params.edge_keep_epsilon) +
             "; decrease edge_keep_epsilon");
  };

  std::set<size_t> nodes;
  for (const auto& e : kept) {
    nodes.insert(e.from);
    nodes.insert(e.to);
  }
  if (!nodes.count(model.source) || !nodes.count(model.sink)) no_path();

  // Prune branches that cannot lie on any source-to-sink walk.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<size_t, int> in_deg, out_deg;
    for (const auto& e : kept) {
      in_deg[e.to]++;
      out_deg[e.from]++;
    }
    for (auto it = nodes.begin(); it != nodes.end();) {
      size_t v = *it;
      if (v != model.source && v != model.sink && (in_deg[v] == 0 || out_deg[v] == 0)) {
        it = nodes.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
    if (changed) {
      std::vector<Kept> filtered;
      for (const auto& e : kept)
        if (nodes.count(e.from) && nodes.count(e.to)) filtered.push_back(e);
      kept.swap(filtered);
    }
  }
  if (!nodes.count(model.source) || !nodes.count(model.sink) || kept.empty()) no_path();

  // Widest path, then total coherence, then the smallest id sequence.
  struct Best {
    double width = -1.0;
    double coh = 0.0;
    std::vector<size_t> path;
  };
  std::map<size_t, Best> best;
  best[model.source] = {std::numeric_limits<double>::infinity(), 0.0, {model.source}};
  for (size_t v : nodes) {
    if (v == model.source) continue;
    Best b;
    for (const auto& e : kept) {
      if (e.to != v) continue;
      auto it = best.find(e.from);
      if (it == best.end() || it->second.width < 0) continue;
      Best cand;
      cand.width = std::min(it->second.width, e.flow);
      cand.coh = it->second.coh + e.coherence;
      cand.path = it->second.path;
      cand.path.push_back(v);
      bool take = false;
      if (cand.width > b.width) take = true;
      else if (cand.width == b.width && cand.coh > b.coh) take = true;
      else if (cand.width == b.width && cand.coh == b.coh && b.width >= 0) {
        auto ids_of = [&](const std::vector<size_t>& p) {
          std::vector<std::string> out;
          for (size_t x : p) out.push_back(matrix.id(x));
          return out;
        };
        take = ids_of(cand.path) < ids_of(b.path);
      }
      if (take) b = cand;
    }
    if (b.width >= 0) best[v] = std::move(b);
  }
  auto snk_it = best.find(model.sink);
  if (snk_it == best.end() || snk_it->second.width < 0) no_path();

  NarrativeMap map;
  map.params = params;
  map.objective = solution.bottleneck;
  map.source_id = matrix.id(model.source);
  map.sink_id = matrix.id(model.sink);
  map.grouped_frames = corpus.grouped();

  std::set<size_t> on_main(snk_it->second.path.begin(), snk_it->second.path.end());
  for (size_t v : nodes) {
    auto idx = corpus.index_of(matrix.id(v));
    if (!idx) fail(ErrorKind::Argument, "corpus does not hold document " + matrix.id(v));
    map.nodes.push_back({corpus.doc(*idx), on_main.count(v) > 0});
  }
  for (const auto& e : kept)
    map.edges.push_back({matrix.id(e.from), matrix.id(e.to), e.flow, e.coherence});
  for (size_t v : snk_it->second.path) map.main_storyline.push_back(matrix.id(v));

  validate_map(map);
  return map;
}

NarrativeMap extract_map(const Corpus& corpus, const CoherenceMatrix& matrix,
                         const TopicModel& topics, const EndpointSpec& start,
                         const EndpointSpec& end, const ExtractionParams& params) {
  auto [source_id, sink_id] = select_endpoints(corpus, start, end);
  LpModel model = build_lp(matrix, topics, source_id, sink_id, params);
  LpSolution solution = solve_lp(model, params);
  return decode_map(solution, model, matrix, corpus, params);
}

std::string map_to_json(const NarrativeMap& map) {
  jsonio::Writer w;
  w.begin_object();
  w.key("params").begin_object();
  w.key("k").integer(map.params.k);
  w.key("coverage_threshold").real(map.params.coverage_threshold);
  w.key("edge_keep_epsilon").real(map.params.edge_keep_epsilon);
  w.key("tie_break_lambda").real(map.params.tie_break_lambda);
  w.key("solver_tolerance").real(map.params.solver_tolerance);
  w.end_object();
  w.key("source").string(map.source_id);
  w.key("sink").string(map.sink_id);
  w.key("objective").real(map.objective);
  w.key("nodes").begin_array();
  for (const auto& n : map.nodes) {
    w.begin_object();
    w.key("id").string(n.doc.id);
    w.key("headline").string(n.doc.headline);
    w.key("date").string(format_iso8601(n.doc.timestamp));
    w.key("source").string(n.doc.source);
    w.key("frame").integer(n.doc.frame);
    w.key("on_main").boolean(n.on_main);
    w.end_object();
  }
  w.end_array();
  w.key("edges").begin_array();
  for (const auto& e : map.edges) {
    w.begin_object();
    w.key("from").string(e.from);
    w.key("to").string(e.to);
    w.key("flow").real(e.flow);
    w.key("coherence").real(e.coherence);
    w.end_object();
  }
  w.end_array();
  w.key("main_storyline").begin_array();
  for (const auto& id : map.main_storyline) w.string(id);
  w.end_array();
  w.end_object();
  return w.take();
}

NarrativeMap map_from_json(std::string_view raw) {
  nlohmann::json j = nlohmann::json::parse(raw, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::Parse, "map json: not valid JSON");
  if (!j.is_object()) fail(ErrorKind::Parse, "map json: not an object");
  for (const char* k : {"params", "source", "sink", "objective", "nodes", "edges",
                        "main_storyline"})
    if (!j.contains(k)) fail(ErrorKind::Parse, std::string("map json: missing key \"") + k + "\"");

  NarrativeMap map;
  const auto& pj = j["params"];
  if (!pj.is_object()) fail(ErrorKind::Parse, "map json: params must be an object");
  for (const char* k :
       {"k", "coverage_threshold", "edge_keep_epsilon", "tie_break_lambda", "solver_tolerance"})
    if (!pj.contains(k) || !pj[k].is_number())
      fail(ErrorKind::Parse, std::string("map json: bad params key \"") + k + "\"");
  map.params.k = pj["k"].get<int>();
  map.params.coverage_threshold = pj["coverage_threshold"].get<double>();
  map.params.edge_keep_epsilon = pj["edge_keep_epsilon"].get<double>();
  map.params.tie_break_lambda = pj["tie_break_lambda"].get<double>();
  map.params.solver_tolerance = pj["solver_tolerance"].get<double>();
  map.params.validate();

  if (!j["source"].is_string() || !j["sink"].is_string())
    fail(ErrorKind::Parse, "map json: source/sink must be strings");
  map.source_id = j["source"].get<std::string>();
  map.sink_id = j["sink"].get<std::string>();
  if (!j["objective"].is_number())
    fail(ErrorKind::Parse, "map json: objective must be a number");
  map.objective = j["objective"].get<double>();

  if (!j["nodes"].is_array() || !j["edges"].is_array() || !j["main_storyline"].is_array())
    fail(ErrorKind::Parse, "map json: nodes/edges/main_storyline must be arrays");

  bool any_raw_frame = false;
  for (const auto& nj : j["nodes"]) {
    if (!nj.is_object()) fail(ErrorKind::Parse, "map json: node entries must be objects");
    for (const char* k : {"id", "headline", "date", "source"})
      if (!nj.contains(k) || !nj[k].is_string())
        fail(ErrorKind::Parse, std::string("map json: node needs string \"") + k + "\"");
    if (!nj.contains("frame") || !nj["frame"].is_number_integer())
      fail(ErrorKind::Parse, "map json: node needs integer \"frame\"");
    if (!nj.contains("on_main") || !nj["on_main"].is_boolean())
      fail(ErrorKind::Parse, "map json: node needs boolean \"on_main\"");
    MapNode n;
    n.doc.id = nj["id"].get<std::string>();
    n.doc.headline = nj["headline"].get<std::string>();
    n.doc.timestamp = parse_iso8601(nj["date"].get<std::string>());
    n.doc.source = nj["source"].get<std::string>();
    n.doc.frame = nj["frame"].get<int>();
    n.on_main = nj["on_main"].get<bool>();
    if (n.doc.frame > 3) any_raw_frame = true;
    map.nodes.push_back(std::move(n));
  }
  for (const auto& ej : j["edges"]) {
    if (!ej.is_object()) fail(ErrorKind::Parse, "map json: edge entries must be objects");
    for (const char* k : {"from", "to"})
      if (!ej.contains(k) || !ej[k].is_string())
        fail(ErrorKind::Parse, std::string("map json: edge needs string \"") + k + "\"");
    for (const char* k : {"flow", "coherence"})
      if (!ej.contains(k) || !ej[k].is_number())
        fail(ErrorKind::Parse, std::string("map json: edge needs number \"") + k + "\"");
    map.edges.push_back({ej["from"].get<std::string>(), ej["to"].get<std::string>(),
                         ej["flow"].get<double>(), ej["coherence"].get<double>()});
  }
  for (const auto& sj : j["main_storyline"]) {
    if (!sj.is_string()) fail(ErrorKind::Parse, "map json: storyline entries must be strings");
    map.main_storyline.push_back(sj.get<std::string>());
  }
  map.grouped_frames = !any_raw_frame;
  validate_map(map);
  return map;
}

}  // namespace framemap
