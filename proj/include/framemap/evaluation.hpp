#pragma once

#include <optional>
#include <string>
#include <vector>

#include "framemap/extraction.hpp"

namespace framemap {

// Normalized frame histogram. `frames` holds frame ids in 1..num_frames.
std::vector<double> framing_distribution(const std::vector<int>& frames, int num_frames);

// Jensen-Shannon divergence, base 2, bounded by [0, 1]. Inputs must be
// distributions of equal length.
double js_divergence(const std::vector<double>& p, const std::vector<double>& q);

struct ConsistencyMetrics {
  double edge_agreement = 0.0;        // edges whose endpoints share a frame
  double endpoint_match_start = 0.0;  // nodes in the source's frame
  double endpoint_match_end = 0.0;    // nodes in the sink's frame
  std::optional<double> endpoint_match;  // set when source and sink share a frame
  int storyline_transitions = 0;      // frame changes along the main storyline
};
ConsistencyMetrics frame_consistency(const NarrativeMap& map);

struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  std::optional<double> stddev;  // sample standard deviation; needs >= 2 values
};
SummaryStats summary_stats(std::vector<double> values);

struct GridCell {
  int start_frame = 0;
  int end_frame = 0;
  bool ok = false;
  std::string error;  // failure reason when !ok
  std::string source_id;
  std::string sink_id;
  size_t size = 0;
  std::vector<double> distribution;
  double jsd = 0.0;
  ConsistencyMetrics consistency;
  std::optional<NarrativeMap> map;
};

struct FramingReport {
  size_t corpus_documents = 0;
  std::vector<double> corpus_distribution;
  ExtractionParams params;
  std::vector<GridCell> cells;  // 3x3 row-major by (start_frame, end_frame)
};

// Extracts one map per (start frame, end frame) pair over the grouped frames
// and evaluates its framing against the corpus. Failed cells record their
// error and stay in the grid.
FramingReport run_grid(const Corpus& corpus, const EmbeddingStore& store,
                       const TopicModel& topics, const ExtractionParams& params);

// Canonical report JSON with per-cell metrics, size statistics, and the
// divergence table with row, column, and global averages.
std::string report_to_json(const FramingReport& report);

// Evaluation of a single stored map against a corpus.
std::string evaluate_map_to_json(const NarrativeMap& map, const Corpus& corpus);

}  // namespace framemap
