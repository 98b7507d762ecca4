#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace framemap {

// One news article. `timestamp` is seconds since the Unix epoch, UTC.
// `frame` is a frame id under the corpus's current taxonomy state: the raw
// nine-frame scheme, or the grouped three-frame scheme after grouping.
struct Document {
  std::string id;
  std::string headline;
  int64_t timestamp = 0;
  std::string source;
  int frame = 0;
  std::optional<std::string> embedding_ref;

  const std::string& embedding_key() const {
    return embedding_ref ? *embedding_ref : id;
  }
};

struct FrameInfo {
  int id;
  std::string name;
};

// The nine-frame gun-violence coding scheme and its three-way grouping.
class FrameTaxonomy {
 public:
  static FrameTaxonomy gvfc();

  const std::vector<FrameInfo>& raw_frames() const { return raw_; }
  const std::vector<FrameInfo>& grouped_frames() const { return grouped_; }

  bool is_raw_frame(int id) const;
  bool is_grouped_frame(int id) const;
  int group_of(int raw_id) const;  // Domain error on unknown id
  const std::string& raw_name(int id) const;
  const std::string& grouped_name(int id) const;

 private:
  std::vector<FrameInfo> raw_;
  std::vector<FrameInfo> grouped_;
  std::map<int, int> mapping_;
};

// Immutable document collection, sorted by (timestamp, id). Construction
// validates: ids nonempty and unique, frames legal under the declared
// taxonomy state.
class Corpus {
 public:
  Corpus(std::vector<Document> docs, FrameTaxonomy taxonomy, bool grouped);

  size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const Document& doc(size_t i) const { return docs_.at(i); }
  const std::vector<Document>& docs() const { return docs_; }
  const FrameTaxonomy& taxonomy() const { return taxonomy_; }
  bool grouped() const { return grouped_; }
  std::optional<size_t> index_of(const std::string& id) const;

  // Documents carrying the given frame id, in corpus order.
  std::vector<size_t> indices_with_frame(int frame) const;

 private:
  std::vector<Document> docs_;
  FrameTaxonomy taxonomy_;
  bool grouped_;
  std::map<std::string, size_t> by_id_;
};

enum class CorpusFormat { Csv, Json };

// CSV header is exactly: id,headline,date,source,frame
// JSON is an array of objects with those five keys.
// A corpus whose frames all lie in the grouped range parses as grouped.
Corpus parse_corpus(std::string_view raw, CorpusFormat format);
std::string export_corpus(const Corpus& corpus, CorpusFormat format);

// Maps every raw frame to its group. State error if already grouped.
Corpus apply_frame_grouping(const Corpus& corpus);

// Proportional stratified sample of size n: largest-remainder quotas per
// frame (ties to the lower frame id), uniform within strata, single seeded
// generator consumed in ascending frame order.
Corpus stratified_sample(const Corpus& corpus, size_t n, uint64_t seed);

// ISO-8601 UTC timestamps. Accepts YYYY-MM-DD or YYYY-MM-DDThh:mm:ss with
// optional Z or +hh:mm / -hh:mm offset; offsets are normalized to UTC.
int64_t parse_iso8601(std::string_view text);
std::string format_iso8601(int64_t seconds);

}  // namespace framemap
