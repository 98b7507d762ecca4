#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framemap/coherence.hpp"
#include "framemap/corpus.hpp"
#include "framemap/lp.hpp"
#include "framemap/topicspace.hpp"

namespace framemap {

struct ExtractionParams {
  int k = 6;                        // storyline length in events
  double coverage_threshold = 0.5;  // fraction of topics a map must touch
  double edge_keep_epsilon = 1e-3;  // smallest flow kept when decoding
  double tie_break_lambda = 1e-3;   // weight of the total-coherence tie-break
  double solver_tolerance = 1e-6;   // tolerance for validating solutions

  void validate() const;  // Argument error on out-of-range values
};

// How a map endpoint is named: by frame (earliest/latest document carrying
// it) or by explicit document id.
struct EndpointSpec {
  enum class Kind { Frame, Id };
  Kind kind = Kind::Frame;
  int frame = 0;
  std::string id;

  static EndpointSpec by_frame(int frame);
  static EndpointSpec by_id(std::string id);
  static EndpointSpec parse(std::string_view text);  // "frame:<n>" or "id:<docid>"
};

// Resolves (start, end) to concrete document ids. The start resolves to the
// earliest matching document, the end to the latest; the start must precede
// the end in corpus order.
std::pair<std::string, std::string> select_endpoints(const Corpus& corpus,
                                                     const EndpointSpec& start,
                                                     const EndpointSpec& end);

struct LpEdge {
  size_t from;       // matrix index
  size_t to;         // matrix index
  double coherence;
};

// The assembled program plus everything needed to interpret its solution.
// Variables are laid out as [edges][coverage per topic][bottleneck].
struct LpModel {
  lp::Problem problem;
  std::vector<LpEdge> edges;
  std::vector<size_t> candidates;  // matrix indices inside the time window
  size_t source = 0;
  size_t sink = 0;
  int topic_count = 0;
  int coverage_required = 0;   // ceil(threshold * topic_count)
  size_t longest_path = 0;     // edges on the longest source-to-sink chain
  double lambda_scaled = 0.0;  // tie-break weight after dividing by |edges|

  int edge_var(size_t e) const { return static_cast<int>(e); }
  int coverage_var(int t) const { return static_cast<int>(edges.size()) + t; }
  int bottleneck_var() const { return static_cast<int>(edges.size()) + topic_count; }
};

// Builds the coherence-maximizing flow program between two documents:
// unit flow out of the source and into the sink, conservation elsewhere,
// exactly k-1 edges, topic coverage, and a bottleneck objective that pushes
// the weakest selected edge as high as possible (a small lambda times total
// coherence breaks ties among equal bottlenecks).
LpModel build_lp(const CoherenceMatrix& matrix, const TopicModel& topics,
                 const std::string& source_id, const std::string& sink_id,
                 const ExtractionParams& params);

struct LpSolution {
  std::vector<double> edge_flow;  // aligned with LpModel::edges
  std::vector<double> coverage;   // per topic
  double bottleneck = 0.0;        // optimal mu
  double objective = 0.0;         // mu plus the scaled tie-break term
  int iterations = 0;
};

// Solves the program. Infeasible error carries a diagnosis: length when k-1
// exceeds the longest chain, coverage otherwise.
LpSolution solve_lp(const LpModel& model, const ExtractionParams& params);

struct MapNode {
  Document doc;
  bool on_main = false;
};

struct MapEdge {
  std::string from;
  std::string to;
  double flow = 0.0;
  double coherence = 0.0;
};

// A narrative map: a DAG over a subset of documents with one source, one
// sink, and a designated main storyline.
struct NarrativeMap {
  std::vector<MapNode> nodes;  // chronological order
  std::vector<MapEdge> edges;  // ordered by (from, to) position
  std::string source_id;
  std::string sink_id;
  std::vector<std::string> main_storyline;  // node ids, source to sink
  ExtractionParams params;
  double objective = 0.0;  // optimal bottleneck coherence
  bool grouped_frames = true;
};

// Thresholds flows at edge_keep_epsilon, prunes dangling branches, and picks
// the widest source-to-sink path (ties: higher total coherence, then the
// lexicographically smallest id sequence) as the main storyline.
NarrativeMap decode_map(const LpSolution& solution, const LpModel& model,
                        const CoherenceMatrix& matrix, const Corpus& corpus,
                        const ExtractionParams& params);

// Endpoint resolution, LP build, solve, and decode in one call.
NarrativeMap extract_map(const Corpus& corpus, const CoherenceMatrix& matrix,
                         const TopicModel& topics, const EndpointSpec& start,
                         const EndpointSpec& end, const ExtractionParams& params);

// Canonical JSON round-trip for maps.
std::string map_to_json(const NarrativeMap& map);
NarrativeMap map_from_json(std::string_view raw);

}  // namespace framemap
