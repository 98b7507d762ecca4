#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "framemap/rng.hpp"
#include "framemap/topicspace.hpp"

using namespace framemap;
using fixtures::kind_of;

namespace {

PointMap blob_pair() {
  const double xs[] = {0, 1, 0, 1, 0.5, 0.2, 0.8, 0.3, 0.7, 0.5};
  const double ys[] = {0, 0, 1, 1, 0.5, 0.8, 0.2, 0.3, 0.7, 0.0};
  PointMap pts;
  for (int i = 0; i < 10; ++i) {
    pts["a" + std::to_string(i)] = {xs[i], ys[i]};
    pts["b" + std::to_string(i)] = {xs[i] + 100.0, ys[i] + 100.0};
  }
  return pts;
}

double dist(const Point2D& p, const Point2D& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

}  // namespace

TEST_CASE("kth neighbor distances match the serial reference") {
  Rng rng(11);
  std::vector<Point2D> pts;
  for (int i = 0; i < 400; ++i)
    pts.push_back({rng.next_double() * 50.0, rng.next_double() * 50.0});
  for (int k : {1, 2, 5}) {
    const auto par = kth_neighbor_distances(pts, k);
    const auto ser = kth_neighbor_distances_serial(pts, k);
    REQUIRE(par.size() == pts.size());
    CHECK(par == ser);
  }
  const std::vector<Point2D> two = {{0, 0}, {3, 4}};
  CHECK(kth_neighbor_distances(two, 1) == std::vector<double>{5.0, 5.0});
  const auto inf = kth_neighbor_distances(two, 2);
  CHECK(std::isinf(inf[0]));
  CHECK(kind_of([&] { kth_neighbor_distances(two, 0); }) == ErrorKind::Argument);
}

TEST_CASE("clustering separates two blobs without noise") {
  const auto pts = blob_pair();
  const auto c = cluster_points(pts, 3, 0.85);
  REQUIRE(c.topic_count == 2);
  CHECK(c.label.at("a0") == 0);
  CHECK(c.label.at("b0") == 1);
  for (int i = 0; i < 10; ++i) {
    CHECK(c.label.at("a" + std::to_string(i)) == 0);
    CHECK(c.label.at("b" + std::to_string(i)) == 1);
  }
}

TEST_CASE("clustering joins a uniform line into one cluster") {
  PointMap pts;
  for (int i = 0; i < 20; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "p%02d", i);
    pts[id] = {static_cast<double>(i), 0.0};
  }
  const auto c = cluster_points(pts, 3, 0.85);
  REQUIRE(c.topic_count == 1);
  for (const auto& [id, label] : c.label) CHECK(label == 0);
}

TEST_CASE("clustering degenerates to a catch-all topic") {
  PointMap single = {{"only", {1.0, 2.0}}};
  const auto c1 = cluster_points(single, 3, 0.85);
  CHECK(c1.topic_count == 1);
  CHECK(c1.label.at("only") == 0);

  PointMap sparse = {{"a", {0, 0}}, {"b", {50, 0}}, {"c", {0, 50}}, {"d", {50, 50}}};
  const auto c2 = cluster_points(sparse, 3, 0.85);
  CHECK(c2.topic_count == 1);
  for (const auto& [id, label] : c2.label) CHECK(label == 0);

  CHECK(kind_of([&] { cluster_points({}, 3, 0.85); }) == ErrorKind::Argument);
  CHECK(kind_of([&] { cluster_points(single, 1, 0.85); }) == ErrorKind::Argument);
  CHECK(kind_of([&] { cluster_points(single, 3, 0.0); }) == ErrorKind::Argument);
}

TEST_CASE("pca projection preserves 2d geometry") {
  EmbeddingStore store(2);
  store.insert("a", {1.0, 0.0});
  store.insert("b", {0.6, 0.8});
  store.insert("c", {0.0, 1.0});
  store.insert("d", {-0.6, 0.8});
  const auto pts = project_2d(store, ProjectionMethod::Pca, 42);
  REQUIRE(pts.size() == 4);
  const std::vector<std::string> ids = {"a", "b", "c", "d"};
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      const double orig = std::hypot(store.vec(ids[i])[0] - store.vec(ids[j])[0],
                                     store.vec(ids[i])[1] - store.vec(ids[j])[1]);
      CHECK(dist(pts.at(ids[i]), pts.at(ids[j])) == doctest::Approx(orig).epsilon(1e-6));
    }
  }
}

TEST_CASE("pca handles degenerate inputs") {
  EmbeddingStore same(3);
  same.insert("a", {1, 0, 0});
  same.insert("b", {1, 0, 0});
  same.insert("c", {1, 0, 0});
  const auto pts = project_2d(same, ProjectionMethod::Pca, 42);
  for (const auto& [id, p] : pts) {
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(0.0));
  }

  EmbeddingStore line(5);
  line.insert("a", {1, 1, 1, 1, 1});
  line.insert("b", {2, 2, 2, 2, 2});
  line.insert("c", {4, 4, 4, 4, 4});
  const auto lp = project_2d(line, ProjectionMethod::Pca, 42);
  CHECK(lp.at("a").y == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lp.at("b").y == doctest::Approx(0.0).epsilon(1e-9));
  const double ab = dist(lp.at("a"), lp.at("b"));
  const double bc = dist(lp.at("b"), lp.at("c"));
  CHECK(bc / ab == doctest::Approx(2.0).epsilon(1e-6));

  EmbeddingStore tiny(3);
  tiny.insert("a", {1, 0, 0});
  tiny.insert("b", {0, 1, 0});
  CHECK(kind_of([&] { project_2d(tiny, ProjectionMethod::Pca, 42); }) == ErrorKind::Domain);
}

TEST_CASE("pca projection is deterministic") {
  const auto fx = fixtures::random_corpus(3, 25, 8);
  const auto p1 = project_2d(fx.store, ProjectionMethod::Pca, 42);
  const auto p2 = project_2d(fx.store, ProjectionMethod::Pca, 42);
  REQUIRE(p1.size() == 25);
  for (const auto& [id, p] : p1) {
    CHECK(p.x == p2.at(id).x);
    CHECK(p.y == p2.at(id).y);
  }
}

TEST_CASE("memberships are smoothed rows summing to one") {
  PointMap pts = {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {10, 10}}, {"n", {50, 50}}};
  std::map<std::string, int> labels = {{"a", 0}, {"b", 0}, {"c", 1}, {"n", -1}};

  const TopicModel plain(pts, labels, 2, 0.0);
  CHECK(plain.membership("a") == std::vector<double>{1.0, 0.0});
  CHECK(plain.membership("n") == std::vector<double>{0.5, 0.5});
  CHECK(plain.label("n") == -1);

  const TopicModel smoothed(pts, labels, 2, 0.01);
  CHECK(smoothed.membership("a")[0] == doctest::Approx(0.9902).epsilon(1e-3));
  CHECK(smoothed.membership("a")[1] == doctest::Approx(0.0098).epsilon(1e-2));
  for (const auto& id : smoothed.ids()) {
    double sum = 0.0;
    for (double m : smoothed.membership(id)) sum += m;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(kind_of([&] { smoothed.membership("zz"); }) == ErrorKind::Argument);
  CHECK(kind_of([&] { TopicModel(pts, labels, 2, -0.1); }) == ErrorKind::Argument);
  CHECK(kind_of([&] { TopicModel(pts, labels, 3, 0.01); }) == ErrorKind::Argument);
}

TEST_CASE("topic similarity follows membership cosines") {
  PointMap pts = {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {10, 10}}, {"n", {50, 50}}};
  std::map<std::string, int> labels = {{"a", 0}, {"b", 0}, {"c", 1}, {"n", -1}};

  const TopicModel plain(pts, labels, 2, 0.0);
  CHECK(topic_similarity(plain, "a", "b") == doctest::Approx(1.0));
  CHECK(topic_similarity(plain, "a", "c") == doctest::Approx(0.0));
  CHECK(topic_similarity(plain, "n", "a") == doctest::Approx(0.70711).epsilon(1e-5));

  const TopicModel smoothed(pts, labels, 2, 0.01);
  CHECK(topic_similarity(smoothed, "a", "c") == doctest::Approx(0.0198).epsilon(1e-3));
  CHECK(topic_similarity(smoothed, "a", "c") == topic_similarity(smoothed, "c", "a"));
  CHECK(topic_similarity(smoothed, "a", "a") == doctest::Approx(1.0));
  CHECK(topic_similarity(smoothed, "a", "c") > topic_similarity(plain, "a", "c"));
  CHECK(kind_of([&] { topic_similarity(plain, "a", "zz"); }) == ErrorKind::Argument);
}

TEST_CASE("topic sidecar parses, saves, and feeds the model") {
  const std::string raw =
      "{\"id\": \"a\", \"x\": 0.0, \"y\": 0.0, \"cluster\": 0}\n"
      "{\"id\": \"b\", \"x\": 1.0, \"y\": 0.0, \"cluster\": 0}\n"
      "{\"id\": \"c\", \"x\": 9.0, \"y\": 9.0, \"cluster\": -1}\n";
  const auto sidecar = parse_topic_sidecar(raw);
  CHECK(sidecar.has_labels);
  CHECK(sidecar.points.size() == 3);
  CHECK(sidecar.labels.at("c") == -1);

  EmbeddingStore store(8);
  for (const auto& id : {"a", "b", "c"})
    store.insert(id, fallback_encode(id, 8, 1));
  TopicOptions opts;
  opts.method = ProjectionMethod::Precomputed;
  const auto model = build_topic_model(store, opts, &sidecar);
  CHECK(model.topic_count() == 1);
  CHECK(model.label("a") == 0);
  CHECK(model.label("c") == -1);
  CHECK(model.point("b").x == doctest::Approx(1.0));

  const auto resaved = parse_topic_sidecar(save_topic_sidecar(model));
  CHECK(resaved.has_labels);
  CHECK(resaved.labels == sidecar.labels);

  const std::string unlabeled =
      "{\"id\": \"a\", \"x\": 0.0, \"y\": 0.0}\n"
      "{\"id\": \"b\", \"x\": 1.0, \"y\": 0.0}\n"
      "{\"id\": \"c\", \"x\": 9.0, \"y\": 9.0}\n";
  const auto bare = parse_topic_sidecar(unlabeled);
  CHECK_FALSE(bare.has_labels);
  const auto clustered = build_topic_model(store, opts, &bare);
  CHECK(clustered.topic_count() >= 1);

  CHECK(kind_of([] { parse_topic_sidecar(""); }) == ErrorKind::Format);
  CHECK(kind_of([&] { parse_topic_sidecar(raw + unlabeled); }) == ErrorKind::Uniqueness);
  const std::string mixed = raw + "{\"id\": \"d\", \"x\": 2.0, \"y\": 2.0}\n";
  CHECK(kind_of([&] { parse_topic_sidecar(mixed); }) == ErrorKind::Format);
  CHECK(kind_of([&] { build_topic_model(store, opts, nullptr); }) == ErrorKind::Argument);

  EmbeddingStore wider(8);
  for (const auto& id : {"a", "b", "c", "d"})
    wider.insert(id, fallback_encode(id, 8, 1));
  CHECK(kind_of([&] { build_topic_model(wider, opts, &sidecar); }) == ErrorKind::Completeness);
}

TEST_CASE("topic model construction from embeddings is deterministic") {
  const auto fx = fixtures::planted_corpus(42);
  TopicOptions opts;
  const auto m1 = build_topic_model(fx.store, opts);
  const auto m2 = build_topic_model(fx.store, opts);
  CHECK(m1.topic_count() == m2.topic_count());
  CHECK(m1.topic_count() >= 2);
  for (const auto& id : m1.ids()) {
    CHECK(m1.label(id) == m2.label(id));
    CHECK(m1.membership(id) == m2.membership(id));
  }
}
