#include "framemap/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "framemap/error.hpp"
#include "framemap/jsonio.hpp"

namespace framemap {

namespace {

constexpr double kSlop = 1e-9;

size_t pair_slot(size_t i, size_t j, size_t n) {
  // Flattened upper triangle, row-major: (0,1), (0,2), ..., (n-2,n-1).
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

PairScore score_pair(const std::vector<double>& u, const std::vector<double>& v,
                     const TopicModel& topics, const std::string& a, const std::string& b,
                     CoherenceCombiner combiner) {
  double text = cosine_similarity(u, v);
  double topic = topic_similarity(topics, a, b);
  PairScore s;
  s.text_sim = (text + 1.0) / 2.0;
  s.topic_sim = topic;
  s.coherence = edge_coherence(text, topic, combiner);
  return s;
}

CoherenceMatrix build_impl(const Corpus& corpus, const EmbeddingStore& store,
                           const TopicModel& topics, const CoherenceOptions& options,
                           bool parallel) {
  const size_t n = corpus.size();
  std::vector<std::string> ids(n);
  std::vector<std::string> keys(n);
  std::vector<int64_t> stamps(n);
  std::vector<const std::vector<double>*> vecs(n);
  for (size_t i = 0; i < n; ++i) {
    const Document& d = corpus.doc(i);
    ids[i] = d.id;
    keys[i] = d.embedding_key();
    stamps[i] = d.timestamp;
    if (!store.contains(keys[i]))
      fail(ErrorKind::Completeness, "no embedding for document " + d.id);
    if (!topics.contains(keys[i]))
      fail(ErrorKind::Completeness, "no topic membership for document " + d.id);
    vecs[i] = &store.vec(keys[i]);
  }

  const size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  std::vector<PairScore> scores(pairs);

  // Map a flat pair index back to (i, j) so both loop shapes fill the same
  // slots in the same way.
  std::vector<std::pair<uint32_t, uint32_t>> coords(pairs);
  {
    size_t t = 0;
    for (size_t i = 0; i + 1 < n; ++i)
      for (size_t j = i + 1; j < n; ++j) coords[t++] = {static_cast<uint32_t>(i),
                                                        static_cast<uint32_t>(j)};
  }

  if (parallel) {
    const int64_t total = static_cast<int64_t>(pairs);
#pragma omp parallel for schedule(static)
    for (int64_t t = 0; t < total; ++t) {
      auto [i, j] = coords[t];
      scores[t] = score_pair(*vecs[i], *vecs[j], topics, keys[i], keys[j], options.combiner);
    }
  } else {
    for (size_t t = 0; t < pairs; ++t) {
      auto [i, j] = coords[t];
      scores[t] = score_pair(*vecs[i], *vecs[j], topics, keys[i], keys[j], options.combiner);
    }
  }

  return CoherenceMatrix(std::move(ids), std::move(keys), std::move(stamps),
                         std::move(scores));
}

}  // namespace

double edge_coherence(double text_sim, double topic_sim, CoherenceCombiner combiner) {
  if (text_sim < -1.0 - kSlop || text_sim > 1.0 + kSlop)
    fail(ErrorKind::Argument, "edge_coherence: text similarity outside [-1, 1]");
  if (topic_sim < -kSlop || topic_sim > 1.0 + kSlop)
    fail(ErrorKind::Argument, "edge_coherence: topic similarity outside [0, 1]");
  double s = (std::min(std::max(text_sim, -1.0), 1.0) + 1.0) / 2.0;
  double t = std::min(std::max(topic_sim, 0.0), 1.0);
  double value = combiner == CoherenceCombiner::GeometricMean ? std::sqrt(s * t) : s * t;
  return std::min(std::max(value, 0.0), 1.0);
}

CoherenceMatrix::CoherenceMatrix(std::vector<std::string> ids,
                                 std::vector<int64_t> timestamps,
                                 std::vector<PairScore> scores)
    : CoherenceMatrix(ids, ids, std::move(timestamps), std::move(scores)) {}

CoherenceMatrix::CoherenceMatrix(std::vector<std::string> ids,
                                 std::vector<std::string> embedding_keys,
                                 std::vector<int64_t> timestamps,
                                 std::vector<PairScore> scores)
    : ids_(std::move(ids)),
      keys_(std::move(embedding_keys)),
      timestamps_(std::move(timestamps)),
      scores_(std::move(scores)) {
  if (keys_.size() != ids_.size())
    fail(ErrorKind::Argument, "coherence matrix: ids and embedding keys disagree");
  const size_t n = ids_.size();
  if (timestamps_.size() != n)
    fail(ErrorKind::Argument, "coherence matrix: ids and timestamps disagree");
  const size_t expected = n < 2 ? 0 : n * (n - 1) / 2;
  if (scores_.size() != expected)
    fail(ErrorKind::Argument, "coherence matrix: wrong number of pair scores");
  for (size_t i = 0; i + 1 < n; ++i)
    if (timestamps_[i] > timestamps_[i + 1] ||
        (timestamps_[i] == timestamps_[i + 1] && !(ids_[i] < ids_[i + 1])))
      fail(ErrorKind::Order, "coherence matrix: documents out of chronological order");
  for (size_t i = 0; i < n; ++i) {
    auto [it, inserted] = index_.emplace(ids_[i], i);
    if (!inserted) fail(ErrorKind::Uniqueness, "coherence matrix: duplicate id " + ids_[i]);
  }
}

std::optional<size_t> CoherenceMatrix::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const PairScore& CoherenceMatrix::pair(size_t i, size_t j) const {
  if (!(i < j && j < ids_.size()))
    fail(ErrorKind::Argument, "coherence matrix: pair requires i < j < n");
  return scores_[pair_slot(i, j, ids_.size())];
}

std::string CoherenceMatrix::to_csv() const {
  auto quoted = [](const std::string& f) {
    if (f.find_first_of(",\"\n\r") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += "\"\"";
      else q += c;
    }
    q += '"';
    return q;
  };
  std::string out = "i,j,text_sim,topic_sim,coherence\n";
  const size_t n = ids_.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const PairScore& s = pair(i, j);
      out += quoted(ids_[i]);
      out += ',';
      out += quoted(ids_[j]);
      out += ',';
      out += jsonio::real_fixed(s.text_sim);
      out += ',';
      out += jsonio::real_fixed(s.topic_sim);
      out += ',';
      out += jsonio::real_fixed(s.coherence);
      out += '\n';
    }
  return out;
}

CoherenceMatrix build_coherence(const Corpus& corpus, const EmbeddingStore& store,
                                const TopicModel& topics, const CoherenceOptions& options) {
  return build_impl(corpus, store, topics, options, true);
}

CoherenceMatrix build_coherence_serial(const Corpus& corpus, const EmbeddingStore& store,
                                       const TopicModel& topics,
                                       const CoherenceOptions& options) {
  return build_impl(corpus, store, topics, options, false);
}

}  // namespace framemap
