#include "fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <utility>

#include "framemap/rng.hpp"

namespace fixtures {

namespace {

using framemap::Corpus;
using framemap::Document;
using framemap::EmbeddingStore;
using framemap::FrameTaxonomy;
using framemap::Rng;

double gaussian(Rng& rng) {
  const double u1 = 1.0 - rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string numbered_id(const char* prefix, size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i);
  return buf;
}

std::string with_city(const std::string& phrase, const std::string& city) {
  std::string out = phrase;
  const auto pos = out.find("CITY");
  if (pos != std::string::npos) out.replace(pos, 4, city);
  return out;
}

}  // namespace

SyntheticCorpus planted_corpus(uint64_t seed) {
  constexpr size_t kDim = 16;
  const size_t sizes[] = {21, 21, 21, 20, 24, 24};
  const int frames[] = {1, 1, 1, 2, 3, 3};
  const std::string phrases[] = {
      "Senate debates assault weapon ban after CITY rally",
      "Court weighs concealed carry permits in CITY",
      "Governor signs background check bill in CITY",
      "Schools in CITY add safety drills and counselors",
      "CITY vigil honors shooting victims",
      "Poll shows CITY voters split on gun laws",
  };
  const std::string cities[] = {"Denver",   "Austin",  "Portland", "Columbus",
                                "Atlanta",  "Phoenix", "Omaha",    "Raleigh"};
  const std::string outlets[] = {"AP", "Reuters", "CNN", "Fox", "NPR", "WSJ"};

  std::vector<int> subtopic;
  for (size_t s = 0; s < std::size(sizes); ++s)
    subtopic.insert(subtopic.end(), sizes[s], static_cast<int>(s));

  Rng rng(seed);
  for (size_t i = subtopic.size(); i > 1; --i)
    std::swap(subtopic[i - 1], subtopic[rng.next_below(i)]);

  const int64_t t0 = framemap::parse_iso8601("2018-01-01");
  EmbeddingStore store(kDim);
  std::vector<Document> docs;
  for (size_t i = 0; i < subtopic.size(); ++i) {
    const int s = subtopic[i];
    Document d;
    d.id = numbered_id("d", i);
    d.headline = with_city(phrases[s], cities[i % std::size(cities)]);
    d.timestamp = t0 + static_cast<int64_t>(i) * 2 * 86400;
    d.source = outlets[i % std::size(outlets)];
    d.frame = frames[s];
    docs.push_back(d);

    const double angle = s * (std::numbers::pi / 3.0);
    std::vector<double> v(kDim, 0.0);
    v[0] = 10.0 * std::cos(angle) + 0.5 * gaussian(rng);
    v[1] = 10.0 * std::sin(angle) + 0.5 * gaussian(rng);
    for (size_t k = 2; k < kDim; ++k) v[k] = 0.15 * gaussian(rng);
    framemap::l2_normalize(v);
    store.insert(d.id, std::move(v));
  }
  Corpus corpus(std::move(docs), FrameTaxonomy::gvfc(), true);
  return {std::move(corpus), std::move(store)};
}

SyntheticCorpus random_corpus(uint64_t seed, size_t n, size_t dim) {
  Rng rng(seed);
  EmbeddingStore store(dim);
  std::vector<Document> docs;
  int64_t ts = framemap::parse_iso8601("2020-01-01");
  for (size_t i = 0; i < n; ++i) {
    ts += 3600 + static_cast<int64_t>(rng.next_below(7 * 86400));
    Document d;
    d.id = numbered_id("r", i);
    d.headline = "event " + d.id;
    d.timestamp = ts;
    d.source = "wire";
    d.frame = 1 + static_cast<int>(rng.next_below(3));
    docs.push_back(d);

    std::vector<double> v(dim);
    double norm = 0.0;
    for (auto& x : v) {
      x = gaussian(rng);
      norm += x * x;
    }
    if (norm < 1e-12) v[0] = 1.0;
    framemap::l2_normalize(v);
    store.insert(d.id, std::move(v));
  }
  Corpus corpus(std::move(docs), FrameTaxonomy::gvfc(), true);
  return {std::move(corpus), std::move(store)};
}

framemap::NarrativeMap chain_map(size_t total, size_t matching) {
  const int64_t t0 = framemap::parse_iso8601("2019-06-01");
  framemap::NarrativeMap map;
  map.grouped_frames = true;
  for (size_t i = 0; i < total; ++i) {
    framemap::MapNode node;
    node.doc.id = numbered_id("c", i);
    node.doc.headline = "chain event " + node.doc.id;
    node.doc.timestamp = t0 + static_cast<int64_t>(i) * 86400;
    node.doc.source = "wire";
    const bool endpoint = i == 0 || i + 1 == total;
    node.doc.frame = endpoint || i <= matching - 2 ? 1 : 2;
    node.on_main = true;
    map.nodes.push_back(std::move(node));
  }
  for (size_t i = 0; i + 1 < total; ++i) {
    framemap::MapEdge edge;
    edge.from = map.nodes[i].doc.id;
    edge.to = map.nodes[i + 1].doc.id;
    edge.flow = 1.0;
    edge.coherence = 0.8;
    map.edges.push_back(std::move(edge));
    map.main_storyline.push_back(map.nodes[i].doc.id);
  }
  map.main_storyline.push_back(map.nodes.back().doc.id);
  map.source_id = map.nodes.front().doc.id;
  map.sink_id = map.nodes.back().doc.id;
  map.objective = 0.8;
  return map;
}

framemap::Corpus gvfc_marginal_corpus() {
  const size_t counts[] = {38, 215, 373, 65, 137, 114, 237, 41, 80};
  const int64_t t0 = framemap::parse_iso8601("2018-01-01");
  std::vector<Document> docs;
  size_t i = 0;
  for (size_t f = 0; f < std::size(counts); ++f) {
    for (size_t c = 0; c < counts[f]; ++c, ++i) {
      char idbuf[16];
      std::snprintf(idbuf, sizeof idbuf, "g%04zu", i);
      Document d;
      d.id = idbuf;
      d.headline = "article " + d.id;
      d.timestamp = t0 + static_cast<int64_t>(i) * 3600;
      d.source = "wire";
      d.frame = static_cast<int>(f) + 1;
      docs.push_back(std::move(d));
    }
  }
  return Corpus(std::move(docs), FrameTaxonomy::gvfc(), false);
}

HandChain hand_chain() {
  std::vector<Document> docs(3);
  const char* ids[] = {"s", "m", "e"};
  for (int i = 0; i < 3; ++i) {
    docs[i].id = ids[i];
    docs[i].headline = std::string("event ") + ids[i];
    docs[i].timestamp = 1000 * (i + 1);
    docs[i].source = "wire";
    docs[i].frame = 1 + i;
  }
  framemap::Corpus corpus(std::move(docs), FrameTaxonomy::gvfc(), true);

  framemap::EmbeddingStore store(3);
  const double mx = 0.28, my = std::sqrt(1.0 - 0.28 * 0.28);
  const double ex = -0.82, ey = (-0.28 - mx * ex) / my;
  const double ez = std::sqrt(1.0 - ex * ex - ey * ey);
  store.insert("s", {1.0, 0.0, 0.0});
  store.insert("m", {mx, my, 0.0});
  store.insert("e", {ex, ey, ez});

  framemap::PointMap pts = {{"s", {0, 0}}, {"m", {1, 0}}, {"e", {2, 0}}};
  std::map<std::string, int> labels = {{"s", 0}, {"m", 0}, {"e", 0}};
  framemap::TopicModel topics(pts, labels, 1, 0.01);
  auto matrix = framemap::build_coherence(corpus, store, topics);
  return {std::move(corpus), std::move(store), std::move(topics), std::move(matrix)};
}

std::string data_dir() { return FRAMEMAP_DATA_DIR; }

}  // namespace fixtures
