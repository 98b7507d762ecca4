#include "framemap/topicspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>
#include <json.hpp>

#include "framemap/error.hpp"
#include "framemap/jsonio.hpp"

namespace framemap {

namespace {

double dist(const Point2D& a, const Point2D& b) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double kth_for_point(const std::vector<Point2D>& pts, size_t i, int k) {
  const size_t n = pts.size();
  if (n - 1 < static_cast<size_t>(k)) return std::numeric_limits<double>::infinity();
  std::vector<double> d;
  d.reserve(n - 1);
  for (size_t j = 0; j < n; ++j)
    if (j != i) d.push_back(dist(pts[i], pts[j]));
  std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
  return d[k - 1];
}

// Canonical cluster numbering: 0..T-1 in order of each cluster's smallest
// member, noise stays -1. All-noise collapses to one catch-all topic.
void renumber_labels(std::vector<int>& labels, int& topic_count) {
  const int n = static_cast<int>(labels.size());
  std::map<int, int> first_member;
  for (int i = 0; i < n; ++i)
    if (labels[i] >= 0 && !first_member.count(labels[i])) first_member[labels[i]] = i;
  if (first_member.empty()) {
    std::fill(labels.begin(), labels.end(), 0);
    topic_count = 1;
    return;
  }
  std::vector<std::pair<int, int>> order;  // (first member index, old label)
  for (const auto& [old_label, first] : first_member) order.emplace_back(first, old_label);
  std::sort(order.begin(), order.end());
  std::map<int, int> renumber;
  for (size_t t = 0; t < order.size(); ++t) renumber[order[t].second] = static_cast<int>(t);
  for (int& l : labels)
    if (l >= 0) l = renumber[l];
  topic_count = static_cast<int>(order.size());
}

}  // namespace

std::vector<double> kth_neighbor_distances_serial(const std::vector<Point2D>& pts, int k) {
  if (k < 1) fail(ErrorKind::Argument, "kth_neighbor_distances: k must be positive");
  std::vector<double> out(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) out[i] = kth_for_point(pts, i, k);
  return out;
}

std::vector<double> kth_neighbor_distances(const std::vector<Point2D>& pts, int k) {
  if (k < 1) fail(ErrorKind::Argument, "kth_neighbor_distances: k must be positive");
  std::vector<double> out(pts.size());
  const int64_t n = static_cast<int64_t>(pts.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i) out[i] = kth_for_point(pts, i, k);
  return out;
}

Clustering cluster_points(const PointMap& points, int min_pts, double eps_percentile) {
  if (points.empty()) fail(ErrorKind::Argument, "cluster_points: no points");
  if (min_pts < 2) fail(ErrorKind::Argument, "cluster_points: min_pts must be at least 2");
  if (!(eps_percentile > 0.0 && eps_percentile <= 1.0))
    fail(ErrorKind::Argument, "cluster_points: eps percentile must lie in (0, 1]");

  std::vector<std::string> ids;
  std::vector<Point2D> pts;
  ids.reserve(points.size());
  for (const auto& [id, p] : points) {
    ids.push_back(id);
    pts.push_back(p);
  }
  const int n = static_cast<int>(pts.size());

  // Radius: nearest-rank percentile of k-th neighbor distances.
  std::vector<double> kdist = kth_neighbor_distances(pts, min_pts - 1);
  std::vector<double> sorted = kdist;
  std::sort(sorted.begin(), sorted.end());
  size_t rank = static_cast<size_t>(std::ceil(eps_percentile * n));
  if (rank == 0) rank = 1;
  if (rank > static_cast<size_t>(n)) rank = n;
  const double eps = sorted[rank - 1];

  auto within = [&](int i, int j) { return dist(pts[i], pts[j]) <= eps; };

  std::vector<int> neighbor_count(n, 1);  // the point itself counts
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (within(i, j)) {
        neighbor_count[i]++;
        neighbor_count[j]++;
      }

  std::vector<bool> core(n);
  bool any_core = false;
  for (int i = 0; i < n; ++i) {
    core[i] = neighbor_count[i] >= min_pts;
    any_core = any_core || core[i];
  }

  std::vector<int> labels(n, -1);
  int topic_count = 0;
  if (any_core) {
    // Connected components over core points.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < n; ++i) {
      if (!core[i]) continue;
      for (int j = i + 1; j < n; ++j)
        if (core[j] && within(i, j)) {
          int a = find(i), b = find(j);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    for (int i = 0; i < n; ++i)
      if (core[i]) labels[i] = find(i);
    // Border points join the nearest core within eps; ties take the
    // lexicographically smaller core id (== smaller index here).
    for (int i = 0; i < n; ++i) {
      if (core[i]) continue;
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        if (!core[j] || j == i) continue;
        double d = dist(pts[i], pts[j]);
        if (d <= eps && d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (best >= 0) labels[i] = find(best);
    }
  }
  renumber_labels(labels, topic_count);

  Clustering out;
  out.topic_count = topic_count;
  for (int i = 0; i < n; ++i) out.label[ids[i]] = labels[i];
  return out;
}

PointMap project_2d(const EmbeddingStore& store, ProjectionMethod method, uint64_t seed,
                    const PointMap* precomputed) {
  (void)seed;
  if (store.size() == 0) fail(ErrorKind::Argument, "project_2d: no embeddings");

  if (method == ProjectionMethod::Precomputed) {
    if (precomputed == nullptr)
      fail(ErrorKind::Argument, "project_2d: precomputed coordinates required");
    PointMap out;
    for (const auto& [id, v] : store.vectors()) {
      auto it = precomputed->find(id);
      if (it == precomputed->end())
        fail(ErrorKind::Completeness, "no precomputed coordinates for id " + id);
      out[id] = it->second;
    }
    return out;
  }

  const size_t n = store.size();
  const size_t d = store.dimension();
  if (n < 3)
    fail(ErrorKind::Domain,
         "projection needs at least 3 documents; supply precomputed coordinates instead");

  Eigen::MatrixXd x(n, d);
  std::vector<std::string> ids;
  ids.reserve(n);
  size_t r = 0;
  for (const auto& [id, v] : store.vectors()) {
    ids.push_back(id);
    for (size_t c = 0; c < d; ++c) x(r, c) = v[c];
    ++r;
  }
  Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  Eigen::VectorXd c0 = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd c1 = Eigen::VectorXd::Zero(d);
  if (d == 1) {
    c0(0) = 1.0;
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
    const Eigen::MatrixXd& v = svd.matrixV();
    c0 = v.col(0);
    if (v.cols() > 1) c1 = v.col(1);
    // Sign convention: the first entry of largest magnitude is positive.
    for (Eigen::VectorXd* comp : {&c0, &c1}) {
      int arg = 0;
      double best = -1.0;
      for (int i = 0; i < comp->size(); ++i)
        if (std::abs((*comp)(i)) > best) {
          best = std::abs((*comp)(i));
          arg = i;
        }
      if ((*comp)(arg) < 0.0) *comp = -*comp;
    }
  }

  PointMap out;
  for (size_t i = 0; i < n; ++i)
    out[ids[i]] = Point2D{x.row(i).dot(c0), x.row(i).dot(c1)};
  return out;
}

TopicModel::TopicModel(PointMap points, std::map<std::string, int> labels, int topic_count,
                       double alpha)
    : points_(std::move(points)),
      labels_(std::move(labels)),
      topic_count_(topic_count),
      alpha_(alpha) {
  if (topic_count_ < 1) fail(ErrorKind::Argument, "topic model needs at least one topic");
  if (alpha_ < 0.0) fail(ErrorKind::Argument, "membership smoothing alpha must be >= 0");
  if (points_.size() != labels_.size())
    fail(ErrorKind::Argument, "topic model: points and labels disagree");
  std::vector<int> seen(topic_count_, 0);
  for (const auto& [id, l] : labels_) {
    if (!points_.count(id))
      fail(ErrorKind::Argument, "topic model: label for unknown point " + id);
    if (l < -1 || l >= topic_count_)
      fail(ErrorKind::Argument, "topic model: label " + std::to_string(l) +
                                    " for " + id + " out of range");
    if (l >= 0) seen[l] = 1;
  }
  for (int t = 0; t < topic_count_; ++t)
    if (!seen[t] && !(topic_count_ == 1))
      fail(ErrorKind::Argument, "topic model: topic " + std::to_string(t) + " has no members");

  const double denom = 1.0 + topic_count_ * alpha_;
  for (const auto& [id, l] : labels_) {
    std::vector<double> row(topic_count_);
    for (int t = 0; t < topic_count_; ++t) {
      double base = (l < 0) ? 1.0 / topic_count_ : (t == l ? 1.0 : 0.0);
      row[t] = (base + alpha_) / denom;
    }
    membership_[id] = std::move(row);
    ids_.push_back(id);
  }
}

bool TopicModel::contains(const std::string& id) const { return points_.count(id) > 0; }

const Point2D& TopicModel::point(const std::string& id) const {
  auto it = points_.find(id);
  if (it == points_.end()) fail(ErrorKind::Argument, "topic model: unknown id " + id);
  return it->second;
}

int TopicModel::label(const std::string& id) const {
  auto it = labels_.find(id);
  if (it == labels_.end()) fail(ErrorKind::Argument, "topic model: unknown id " + id);
  return it->second;
}

const std::vector<double>& TopicModel::membership(const std::string& id) const {
  auto it = membership_.find(id);
  if (it == membership_.end()) fail(ErrorKind::Argument, "topic model: unknown id " + id);
  return it->second;
}

double topic_similarity(const TopicModel& model, const std::string& a, const std::string& b) {
  double s = cosine_similarity(model.membership(a), model.membership(b));
  return std::clamp(s, 0.0, 1.0);
}

TopicSidecar parse_topic_sidecar(std::string_view raw) {
  TopicSidecar out;
  size_t with_labels = 0;
  size_t entries = 0;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos <= raw.size()) {
    size_t nl = raw.find('\n', pos);
    std::string_view line = raw.substr(pos, nl == std::string_view::npos ? raw.size() - pos
                                                                         : nl - pos);
    pos = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty()) continue;
    std::string where = "topics line " + std::to_string(line_no);
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::Parse, where + ": not valid JSON");
    if (!j.is_object() || !j.contains("id") || !j.contains("x") || !j.contains("y"))
      fail(ErrorKind::Parse, where + ": expected {\"id\", \"x\", \"y\"[, \"cluster\"]}");
    if (!j["id"].is_string()) fail(ErrorKind::Parse, where + ": \"id\" must be a string");
    if (!j["x"].is_number() || !j["y"].is_number())
      fail(ErrorKind::Parse, where + ": coordinates must be numbers");
    std::string id = j["id"].get<std::string>();
    Point2D p{j["x"].get<double>(), j["y"].get<double>()};
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      fail(ErrorKind::Format, where + ": non-finite coordinate for id " + id);
    if (out.points.count(id))
      fail(ErrorKind::Uniqueness, "duplicate sidecar id: " + id);
    out.points[id] = p;
    ++entries;
    if (j.contains("cluster") && !j["cluster"].is_null()) {
      if (!j["cluster"].is_number_integer())
        fail(ErrorKind::Parse, where + ": \"cluster\" must be an integer");
      int c = j["cluster"].get<int>();
      if (c < -1) fail(ErrorKind::Format, where + ": cluster below -1");
      out.labels[id] = c;
      ++with_labels;
    }
  }
  if (entries == 0) fail(ErrorKind::Format, "topics sidecar holds no entries");
  if (with_labels != 0 && with_labels != entries)
    fail(ErrorKind::Format, "topics sidecar mixes entries with and without \"cluster\"");
  out.has_labels = with_labels == entries;
  return out;
}

std::string save_topic_sidecar(const TopicModel& model) {
  std::string out;
  for (const auto& id : model.ids()) {
    const Point2D& p = model.point(id);
    out += "{\"id\":\"";
    out += jsonio::escape(id);
    out += "\",\"x\":";
    out += jsonio::real_exact(p.x);
    out += ",\"y\":";
    out += jsonio::real_exact(p.y);
    out += ",\"cluster\":";
    out += std::to_string(model.label(id));
    out += "}\n";
  }
  return out;
}

TopicModel build_topic_model(const EmbeddingStore& store, const TopicOptions& opts,
                             const TopicSidecar* sidecar) {
  PointMap points;
  if (opts.method == ProjectionMethod::Precomputed) {
    if (sidecar == nullptr)
      fail(ErrorKind::Argument, "precomputed projection requires a topics sidecar");
    points = project_2d(store, ProjectionMethod::Precomputed, opts.seed, &sidecar->points);
  } else {
    points = project_2d(store, ProjectionMethod::Pca, opts.seed);
  }

  if (opts.method == ProjectionMethod::Precomputed && sidecar->has_labels) {
    // Trust the supplied assignment but renumber it canonically.
    std::vector<std::string> ids;
    std::vector<int> labels;
    for (const auto& [id, p] : points) {
      auto it = sidecar->labels.find(id);
      if (it == sidecar->labels.end())
        fail(ErrorKind::Completeness, "no cluster label for id " + id);
      ids.push_back(id);
      labels.push_back(it->second);
    }
    int topic_count = 0;
    renumber_labels(labels, topic_count);
    std::map<std::string, int> label_map;
    for (size_t i = 0; i < ids.size(); ++i) label_map[ids[i]] = labels[i];
    return TopicModel(std::move(points), std::move(label_map), topic_count, opts.alpha);
  }

  Clustering c = cluster_points(points, opts.min_pts, opts.eps_percentile);
  return TopicModel(std::move(points), std::move(c.label), c.topic_count, opts.alpha);
}

}  // namespace framemap
