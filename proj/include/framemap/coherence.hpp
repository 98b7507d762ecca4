#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framemap/corpus.hpp"
#include "framemap/embeddings.hpp"
#include "framemap/topicspace.hpp"

namespace framemap {

enum class CoherenceCombiner { GeometricMean, Product };

// Combines a text cosine (rescaled from [-1,1] to [0,1]) with a topic
// similarity into one edge score in [0,1].
double edge_coherence(double text_sim, double topic_sim,
                      CoherenceCombiner combiner = CoherenceCombiner::GeometricMean);

struct PairScore {
  double text_sim;   // rescaled to [0, 1]
  double topic_sim;  // in [0, 1]
  double coherence;  // combine(text_sim, topic_sim)
};

// Scores for every chronologically ordered document pair (i < j in corpus
// order). Components are kept so a stored score can always be re-derived.
class CoherenceMatrix {
 public:
  CoherenceMatrix(std::vector<std::string> ids, std::vector<int64_t> timestamps,
                  std::vector<PairScore> scores);
  CoherenceMatrix(std::vector<std::string> ids, std::vector<std::string> embedding_keys,
                  std::vector<int64_t> timestamps, std::vector<PairScore> scores);

  size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(size_t i) const { return ids_.at(i); }
  const std::string& embedding_key(size_t i) const { return keys_.at(i); }
  int64_t timestamp(size_t i) const { return timestamps_.at(i); }
  std::optional<size_t> index_of(const std::string& id) const;

  const PairScore& pair(size_t i, size_t j) const;  // requires i < j
  double coherence(size_t i, size_t j) const { return pair(i, j).coherence; }

  // Audit dump, one row per pair: i,j,text_sim,topic_sim,coherence.
  std::string to_csv() const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> keys_;
  std::vector<int64_t> timestamps_;
  std::vector<PairScore> scores_;  // flattened upper triangle
  std::map<std::string, size_t> index_;
};

struct CoherenceOptions {
  CoherenceCombiner combiner = CoherenceCombiner::GeometricMean;
};

// Scores all pairs of the corpus. Every document needs an embedding and a
// topic membership (Completeness error otherwise). The default entry point
// runs the pair loop with OpenMP; the serial variant is the reference and
// must produce bit-identical scores.
CoherenceMatrix build_coherence(const Corpus& corpus, const EmbeddingStore& store,
                                const TopicModel& topics,
                                const CoherenceOptions& options = {});
CoherenceMatrix build_coherence_serial(const Corpus& corpus, const EmbeddingStore& store,
                                       const TopicModel& topics,
                                       const CoherenceOptions& options = {});

}  // namespace framemap
