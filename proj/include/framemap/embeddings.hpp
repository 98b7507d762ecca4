#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace framemap {

// Fixed-dimension vector store keyed by document id. Vectors are validated
// on insert (dimension match, finite, not all-zero); loaders additionally
// L2-normalize so cosine similarity degenerates to a dot product downstream.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(size_t dimension);

  size_t dimension() const { return dimension_; }
  size_t size() const { return vectors_.size(); }
  bool contains(const std::string& id) const;
  const std::vector<double>& vec(const std::string& id) const;  // Argument error if absent
  const std::map<std::string, std::vector<double>>& vectors() const { return vectors_; }

  void insert(const std::string& id, std::vector<double> v);

 private:
  size_t dimension_;
  std::map<std::string, std::vector<double>> vectors_;
};

enum class EmbeddingFormat { Jsonl, Binary };

// JSONL: one {"id": ..., "vector": [...]} object per line.
// Binary: magic "FMEB", u32 LE dimension, then records of
//   u16 LE id length, id bytes (UTF-8), dimension * f32 LE.
// Both loaders normalize every vector to unit L2 norm.
EmbeddingStore load_embeddings(std::string_view raw, EmbeddingFormat format);
std::string save_embeddings(const EmbeddingStore& store, EmbeddingFormat format);

// Deterministic hashed character-trigram encoder used when no real encoder
// output is available. Unit-norm output; dimension must be at least 8.
std::vector<double> fallback_encode(std::string_view text, size_t dimension, uint64_t seed);

// Cosine similarity in [-1, 1]. Domain error on a zero-norm input.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

// Scales v to unit L2 norm. Domain error if the norm is zero.
void l2_normalize(std::vector<double>& v);

}  // namespace framemap
