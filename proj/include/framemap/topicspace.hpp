#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framemap/embeddings.hpp"

namespace framemap {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

using PointMap = std::map<std::string, Point2D>;

enum class ProjectionMethod { Pca, Precomputed };

struct TopicOptions {
  ProjectionMethod method = ProjectionMethod::Pca;
  int min_pts = 3;
  double eps_percentile = 0.85;
  double alpha = 0.01;
  uint64_t seed = 42;  // reserved for stochastic projection backends
};

// Per-point distance to its k-th nearest other point (+inf when there are
// fewer than k other points). The parallel variant is bit-identical to the
// serial one: each slot is written by exactly one iteration.
std::vector<double> kth_neighbor_distances(const std::vector<Point2D>& pts, int k);
std::vector<double> kth_neighbor_distances_serial(const std::vector<Point2D>& pts, int k);

// Density clustering with a data-derived radius: eps is the nearest-rank
// percentile of the k-th-neighbor distances (k = min_pts - 1). A point is
// core when at least min_pts points, itself included, lie within eps.
// Border points join their nearest core's cluster; leftovers are noise (-1).
// Clusters are renumbered 0..T-1 by their smallest member id. When nothing
// is dense enough to form a core, every point lands in one catch-all topic.
struct Clustering {
  std::map<std::string, int> label;
  int topic_count = 0;
};
Clustering cluster_points(const PointMap& points, int min_pts, double eps_percentile);

// 2D coordinates for every stored embedding. Pca projects onto the top two
// principal axes with a deterministic sign convention; Precomputed takes
// coordinates from a sidecar (Completeness error when an id is missing).
PointMap project_2d(const EmbeddingStore& store, ProjectionMethod method, uint64_t seed,
                    const PointMap* precomputed = nullptr);

// Topic assignments plus smoothed memberships. Row for a clustered point is
// smoothed one-hot, for a noise point uniform; rows sum to one.
class TopicModel {
 public:
  TopicModel(PointMap points, std::map<std::string, int> labels, int topic_count,
             double alpha);

  int topic_count() const { return topic_count_; }
  double alpha() const { return alpha_; }
  const std::vector<std::string>& ids() const { return ids_; }
  bool contains(const std::string& id) const;
  const Point2D& point(const std::string& id) const;
  int label(const std::string& id) const;
  const std::vector<double>& membership(const std::string& id) const;

 private:
  PointMap points_;
  std::map<std::string, int> labels_;
  int topic_count_;
  double alpha_;
  std::vector<std::string> ids_;
  std::map<std::string, std::vector<double>> membership_;
};

// Cosine similarity of membership rows, clamped to [0, 1].
double topic_similarity(const TopicModel& model, const std::string& a, const std::string& b);

// Sidecar JSONL: one {"id", "x", "y"} per line, optionally with "cluster".
// Either every entry carries "cluster" or none does.
struct TopicSidecar {
  PointMap points;
  bool has_labels = false;
  std::map<std::string, int> labels;
};
TopicSidecar parse_topic_sidecar(std::string_view raw);
std::string save_topic_sidecar(const TopicModel& model);

TopicModel build_topic_model(const EmbeddingStore& store, const TopicOptions& opts,
                             const TopicSidecar* sidecar = nullptr);

}  // namespace framemap
