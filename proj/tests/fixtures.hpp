#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "framemap/corpus.hpp"
#include "framemap/embeddings.hpp"
#include "framemap/error.hpp"
#include "framemap/extraction.hpp"

namespace fixtures {

// Runs f and reports the ErrorKind it failed with, or nullopt when it did
// not throw a framemap::Error.
template <typename F>
std::optional<framemap::ErrorKind> kind_of(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const framemap::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

struct SyntheticCorpus {
  framemap::Corpus corpus;
  framemap::EmbeddingStore store;
};

// 131 grouped-frame documents over six planted subtopics whose embeddings
// cluster around hexagon corners in the first two dimensions. Frame counts
// are (63, 20, 48), the closest integer split of the grouped GVFC shares.
SyntheticCorpus planted_corpus(uint64_t seed);

// n documents with random unit embeddings, strictly increasing timestamps,
// and random grouped frames.
SyntheticCorpus random_corpus(uint64_t seed, size_t n, size_t dim);

// A grouped corpus shaped like a narrative map: `total` nodes in a chain,
// `matching` of them carrying the endpoints' frame.
framemap::NarrativeMap chain_map(size_t total, size_t matching);

// Raw-frame corpus with the full GVFC label marginals (1300 documents).
framemap::Corpus gvfc_marginal_corpus();

// Three documents s, m, e whose pairwise coherences are pinned to
// (0.8, 0.6, 0.3) by construction: with everything in one topic the
// coherence reduces to sqrt((cos+1)/2), so the embedding cosines must be
// (0.28, -0.28, -0.82). A Gram factorization gives unit vectors realizing
// them.
struct HandChain {
  framemap::Corpus corpus;
  framemap::EmbeddingStore store;
  framemap::TopicModel topics;
  framemap::CoherenceMatrix matrix;
};
HandChain hand_chain();

std::string data_dir();

}  // namespace fixtures
