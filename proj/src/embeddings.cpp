#include "framemap/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <json.hpp>

#include "framemap/error.hpp"
#include "framemap/jsonio.hpp"
#include "framemap/rng.hpp"

namespace framemap {

namespace {

constexpr char kMagic[4] = {'F', 'M', 'E', 'B'};

void put_u16_le(std::string& out, uint16_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>((v >> 8) & 0xFF);
}

void put_u32_le(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

void put_f32_le(std::string& out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32_le(out, bits);
}

uint16_t get_u16_le(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t get_u32_le(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

float get_f32_le(const unsigned char* p) {
  uint32_t bits = get_u32_le(p);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

void check_vector(const std::string& id, const std::vector<double>& v, size_t dim) {
  if (v.size() != dim)
    fail(ErrorKind::Format, "embedding " + id + ": dimension " +
                                std::to_string(v.size()) + " does not match store dimension " +
                                std::to_string(dim));
  double norm2 = 0.0;
  for (double x : v) {
    if (!std::isfinite(x))
      fail(ErrorKind::Format, "embedding " + id + ": non-finite component");
    norm2 += x * x;
  }
  if (norm2 == 0.0)
    fail(ErrorKind::Format, "embedding " + id + ": all-zero vector");
}

}  // namespace

EmbeddingStore::EmbeddingStore(size_t dimension) : dimension_(dimension) {
  if (dimension == 0)
    fail(ErrorKind::Argument, "embedding dimension must be positive");
}

bool EmbeddingStore::contains(const std::string& id) const {
  return vectors_.count(id) > 0;
}

const std::vector<double>& EmbeddingStore::vec(const std::string& id) const {
  auto it = vectors_.find(id);
  if (it == vectors_.end())
    fail(ErrorKind::Argument, "no embedding stored for id " + id);
  return it->second;
}

void EmbeddingStore::insert(const std::string& id, std::vector<double> v) {
  if (id.empty()) fail(ErrorKind::Argument, "embedding id must be nonempty");
  check_vector(id, v, dimension_);
  auto [it, inserted] = vectors_.emplace(id, std::move(v));
  if (!inserted) fail(ErrorKind::Uniqueness, "duplicate embedding id: " + id);
}

void l2_normalize(std::vector<double>& v) {
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (norm2 == 0.0) fail(ErrorKind::Domain, "cannot normalize a zero vector");
  double inv = 1.0 / std::sqrt(norm2);
  for (double& x : v) x *= inv;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    fail(ErrorKind::Argument, "cosine: dimension mismatch " + std::to_string(u.size()) +
                                  " vs " + std::to_string(v.size()));
  if (u.empty()) fail(ErrorKind::Argument, "cosine: empty vectors");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0)
    fail(ErrorKind::Domain, "cosine: zero-norm vector");
  double s = dot / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(s, -1.0, 1.0);
}

EmbeddingStore load_embeddings(std::string_view raw, EmbeddingFormat format) {
  if (format == EmbeddingFormat::Jsonl) {
    std::vector<std::pair<std::string, std::vector<double>>> rows;
    size_t dim = 0;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= raw.size()) {
      size_t nl = raw.find('\n', pos);
      std::string_view line = raw.substr(pos, nl == std::string_view::npos ? raw.size() - pos
                                                                           : nl - pos);
      pos = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
      ++line_no;
      if (line.empty()) continue;
      std::string where = "embeddings line " + std::to_string(line_no);
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded()) fail(ErrorKind::Parse, where + ": not valid JSON");
      if (!j.is_object() || !j.contains("id") || !j.contains("vector"))
        fail(ErrorKind::Parse, where + ": expected {\"id\", \"vector\"}");
      if (!j["id"].is_string())
        fail(ErrorKind::Parse, where + ": \"id\" must be a string");
      if (!j["vector"].is_array())
        fail(ErrorKind::Parse, where + ": \"vector\" must be an array");
      std::vector<double> v;
      for (const auto& x : j["vector"]) {
        if (!x.is_number()) fail(ErrorKind::Parse, where + ": non-numeric component");
        v.push_back(x.get<double>());
      }
      std::string id = j["id"].get<std::string>();
      if (v.empty()) fail(ErrorKind::Format, where + ": empty vector for id " + id);
      if (dim == 0) dim = v.size();
      rows.emplace_back(std::move(id), std::move(v));
    }
    if (rows.empty()) fail(ErrorKind::Format, "embeddings input holds no vectors");
    EmbeddingStore store(dim);
    for (auto& [id, v] : rows) {
      check_vector(id, v, dim);
      l2_normalize(v);
      store.insert(id, std::move(v));
    }
    return store;
  }

  const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
  size_t n = raw.size();
  if (n < 8 || std::memcmp(p, kMagic, 4) != 0)
    fail(ErrorKind::Format, "binary embeddings: bad magic (expected FMEB)");
  uint32_t dim = get_u32_le(p + 4);
  if (dim == 0) fail(ErrorKind::Format, "binary embeddings: zero dimension");
  EmbeddingStore store(dim);
  size_t off = 8;
  size_t record = 0;
  while (off < n) {
    ++record;
    std::string where = "binary embeddings record " + std::to_string(record);
    if (off + 2 > n) fail(ErrorKind::Format, where + ": truncated id length");
    uint16_t id_len = get_u16_le(p + off);
    off += 2;
    if (id_len == 0) fail(ErrorKind::Format, where + ": empty id");
    if (off + id_len > n) fail(ErrorKind::Format, where + ": truncated id");
    std::string id(raw.substr(off, id_len));
    off += id_len;
    if (off + 4ull * dim > n)
      fail(ErrorKind::Format, where + ": truncated vector for id " + id);
    std::vector<double> v(dim);
    for (uint32_t i = 0; i < dim; ++i) v[i] = get_f32_le(p + off + 4ull * i);
    off += 4ull * dim;
    check_vector(id, v, dim);
    l2_normalize(v);
    store.insert(id, std::move(v));
  }
  if (store.size() == 0) fail(ErrorKind::Format, "embeddings input holds no vectors");
  return store;
}

std::string save_embeddings(const EmbeddingStore& store, EmbeddingFormat format) {
  if (format == EmbeddingFormat::Jsonl) {
    std::string out;
    for (const auto& [id, v] : store.vectors()) {
      out += "{\"id\":\"";
      out += jsonio::escape(id);
      out += "\",\"vector\":[";
      for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += jsonio::real_exact(v[i]);
      }
      out += "]}\n";
    }
    return out;
  }
  std::string out(kMagic, 4);
  put_u32_le(out, static_cast<uint32_t>(store.dimension()));
  for (const auto& [id, v] : store.vectors()) {
    if (id.size() > 0xFFFF)
      fail(ErrorKind::Format, "binary embeddings: id longer than 65535 bytes: " + id);
    put_u16_le(out, static_cast<uint16_t>(id.size()));
    out += id;
    for (double x : v) put_f32_le(out, static_cast<float>(x));
  }
  return out;
}

std::vector<double> fallback_encode(std::string_view text, size_t dimension, uint64_t seed) {
  if (dimension < 8)
    fail(ErrorKind::Argument, "fallback encoder needs dimension >= 8");
  if (text.empty())
    fail(ErrorKind::Argument, "fallback encoder: empty text");

  std::string lowered(text);
  for (char& c : lowered)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');

  const uint64_t salt = splitmix64_once(seed);
  auto hash_gram = [&](std::string_view g) {
    uint64_t h = 0xcbf29ce484222325ull ^ salt;
    for (unsigned char c : g) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return splitmix64_once(h);
  };

  std::vector<double> v(dimension, 0.0);
  auto add_gram = [&](std::string_view g) {
    uint64_t h = hash_gram(g);
    size_t bucket = h % dimension;
    v[bucket] += (h >> 63) ? -1.0 : 1.0;
  };
  if (lowered.size() < 3) {
    add_gram(lowered);
  } else {
    for (size_t i = 0; i + 3 <= lowered.size(); ++i)
      add_gram(std::string_view(lowered).substr(i, 3));
  }

  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (norm2 == 0.0) {
    // Signs cancelled everywhere; fall back to a deterministic basis vector.
    v[hash_gram(lowered) % dimension] = 1.0;
    return v;
  }
  l2_normalize(v);
  return v;
}

}  // namespace framemap
