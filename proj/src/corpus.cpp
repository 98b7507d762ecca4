#include "framemap/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include <json.hpp>

#include "framemap/error.hpp"
#include "framemap/jsonio.hpp"
#include "framemap/rng.hpp"

namespace framemap {

namespace {

// ---- civil calendar <-> epoch days (Howard Hinnant's algorithms) ----

int64_t days_from_civil(int64_t y, int m, int d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int yoe = static_cast<int>(y - era * 400);
  const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

void civil_from_days(int64_t z, int64_t& y, int& m, int& d) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const int doe = static_cast<int>(z - era * 146097);
  const int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t yr = yoe + era * 400;
  const int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const int mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = yr + (m <= 2);
}

bool is_leap(int64_t y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int64_t y, int m) {
  static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return lengths[m - 1];
}

bool read_digits(std::string_view s, size_t pos, size_t count, int64_t& out) {
  if (pos + count > s.size()) return false;
  int64_t v = 0;
  for (size_t i = 0; i < count; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

[[noreturn]] void bad_date(std::string_view text) {
  fail(ErrorKind::Parse, "invalid ISO-8601 date: \"" + std::string(text) + "\"");
}

// ---- RFC-4180 CSV ----

std::vector<std::vector<std::string>> parse_csv(std::string_view raw) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  size_t i = 0;
  const size_t n = raw.size();
  bool in_quotes = false;
  bool field_started = false;
  bool record_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    record_started = false;
  };

  while (i < n) {
    char c = raw[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && raw[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        field += c;
        ++i;
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_started) {
      in_quotes = true;
      field_started = true;
      record_started = true;
      ++i;
    } else if (c == ',') {
      end_field();
      record_started = true;
      ++i;
    } else if (c == '\r' && i + 1 < n && raw[i + 1] == '\n') {
      end_record();
      i += 2;
    } else if (c == '\n') {
      end_record();
      ++i;
    } else {
      field += c;
      field_started = true;
      record_started = true;
      ++i;
    }
  }
  if (in_quotes)
    fail(ErrorKind::Parse, "csv row " + std::to_string(records.size() + 1) +
                               ": unterminated quoted field");
  if (record_started || field_started || !record.empty()) end_record();
  return records;
}

bool csv_needs_quoting(std::string_view field) {
  return field.find_first_of(",\"\n\r") != std::string_view::npos;
}

void csv_append_field(std::string& out, std::string_view field) {
  if (!csv_needs_quoting(field)) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
}

int parse_frame_field(std::string_view text, const std::string& where) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    fail(ErrorKind::Parse, where + ": frame is not an integer: \"" + std::string(text) + "\"");
  return value;
}

bool frames_all_grouped(const std::vector<Document>& docs, const FrameTaxonomy& tax) {
  for (const auto& d : docs)
    if (!tax.is_grouped_frame(d.frame)) return false;
  return true;
}

void check_frame_range(int frame, const FrameTaxonomy& tax, const std::string& where) {
  if (!tax.is_raw_frame(frame) && !tax.is_grouped_frame(frame))
    fail(ErrorKind::Domain,
         where + ": frame " + std::to_string(frame) + " outside the taxonomy");
}

}  // namespace

int64_t parse_iso8601(std::string_view text) {
  int64_t y, mo, d;
  if (!read_digits(text, 0, 4, y)) bad_date(text);
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') bad_date(text);
  if (!read_digits(text, 5, 2, mo) || !read_digits(text, 8, 2, d)) bad_date(text);
  if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, static_cast<int>(mo)))
    bad_date(text);

  int64_t hh = 0, mi = 0, ss = 0, offset = 0;
  size_t pos = 10;
  if (pos < text.size() && text[pos] == 'T') {
    if (!read_digits(text, 11, 2, hh)) bad_date(text);
    if (text.size() < 19 || text[13] != ':' || text[16] != ':') bad_date(text);
    if (!read_digits(text, 14, 2, mi) || !read_digits(text, 17, 2, ss)) bad_date(text);
    if (hh > 23 || mi > 59 || ss > 59) bad_date(text);
    pos = 19;
    if (pos < text.size()) {
      char c = text[pos];
      if (c == 'Z') {
        pos += 1;
      } else if (c == '+' || c == '-') {
        int64_t oh, om;
        if (!read_digits(text, pos + 1, 2, oh)) bad_date(text);
        if (pos + 6 > text.size() || text[pos + 3] != ':') bad_date(text);
        if (!read_digits(text, pos + 4, 2, om)) bad_date(text);
        if (oh > 23 || om > 59) bad_date(text);
        offset = (oh * 3600 + om * 60) * (c == '+' ? 1 : -1);
        pos += 6;
      } else {
        bad_date(text);
      }
    }
  }
  if (pos != text.size()) bad_date(text);
  int64_t days = days_from_civil(y, static_cast<int>(mo), static_cast<int>(d));
  return days * 86400 + hh * 3600 + mi * 60 + ss - offset;
}

std::string format_iso8601(int64_t seconds) {
  int64_t days = seconds / 86400;
  int64_t rem = seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int64_t y;
  int mo, d;
  civil_from_days(days, y, mo, d);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04lld-%02d-%02dT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y), mo, d,
                static_cast<long long>(rem / 3600),
                static_cast<long long>((rem % 3600) / 60),
                static_cast<long long>(rem % 60));
  return buf;
}

FrameTaxonomy FrameTaxonomy::gvfc() {
  FrameTaxonomy t;
  t.raw_ = {{1, "2nd Amendment"},
            {2, "Gun Control/Regulation"},
            {3, "Politics"},
            {4, "Mental Health"},
            {5, "School/Public Space Safety"},
            {6, "Race/Ethnicity"},
            {7, "Public Opinion"},
            {8, "Society/Culture"},
            {9, "Economic Consequences"}};
  t.grouped_ = {{1, "Political Issues"},
                {2, "Public Services"},
                {3, "Cultural and Societal Issues"}};
  t.mapping_ = {{1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 2},
                {6, 3}, {7, 3}, {8, 3}, {9, 3}};
  return t;
}

bool FrameTaxonomy::is_raw_frame(int id) const {
  return mapping_.count(id) > 0;
}

bool FrameTaxonomy::is_grouped_frame(int id) const {
  for (const auto& g : grouped_)
    if (g.id == id) return true;
  return false;
}

int FrameTaxonomy::group_of(int raw_id) const {
  auto it = mapping_.find(raw_id);
  if (it == mapping_.end())
    fail(ErrorKind::Domain, "unknown frame id " + std::to_string(raw_id));
  return it->second;
}

const std::string& FrameTaxonomy::raw_name(int id) const {
  for (const auto& f : raw_)
    if (f.id == id) return f.name;
  fail(ErrorKind::Domain, "unknown frame id " + std::to_string(id));
}

const std::string& FrameTaxonomy::grouped_name(int id) const {
  for (const auto& f : grouped_)
    if (f.id == id) return f.name;
  fail(ErrorKind::Domain, "unknown grouped frame id " + std::to_string(id));
}

Corpus::Corpus(std::vector<Document> docs, FrameTaxonomy taxonomy, bool grouped)
    : docs_(std::move(docs)), taxonomy_(std::move(taxonomy)), grouped_(grouped) {
  for (const auto& d : docs_) {
    if (d.id.empty()) fail(ErrorKind::Domain, "document id must be nonempty");
    bool ok = grouped_ ? taxonomy_.is_grouped_frame(d.frame)
                       : taxonomy_.is_raw_frame(d.frame);
    if (!ok)
      fail(ErrorKind::Domain, "document " + d.id + ": frame " +
                                  std::to_string(d.frame) +
                                  (grouped_ ? " is not a grouped frame id"
                                            : " is not a raw frame id"));
  }
  std::stable_sort(docs_.begin(), docs_.end(),
                   [](const Document& a, const Document& b) {
                     if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                     return a.id < b.id;
                   });
  for (size_t i = 0; i < docs_.size(); ++i) {
    auto [it, inserted] = by_id_.emplace(docs_[i].id, i);
    if (!inserted)
      fail(ErrorKind::Uniqueness, "duplicate document id: " + docs_[i].id);
  }
}

std::optional<size_t> Corpus::index_of(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::vector<size_t> Corpus::indices_with_frame(int frame) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < docs_.size(); ++i)
    if (docs_[i].frame == frame) out.push_back(i);
  return out;
}

Corpus parse_corpus(std::string_view raw, CorpusFormat format) {
  FrameTaxonomy tax = FrameTaxonomy::gvfc();
  std::vector<Document> docs;

  if (format == CorpusFormat::Csv) {
    auto records = parse_csv(raw);
    if (records.empty()) fail(ErrorKind::Parse, "csv input is empty");
    const std::vector<std::string> expected = {"id", "headline", "date", "source", "frame"};
    if (records[0] != expected)
      fail(ErrorKind::Parse, "csv header must be exactly: id,headline,date,source,frame");
    for (size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      std::string where = "csv row " + std::to_string(r + 1);
      if (rec.size() != 5)
        fail(ErrorKind::Parse, where + ": expected 5 fields, got " + std::to_string(rec.size()));
      Document d;
      d.id = rec[0];
      d.headline = rec[1];
      try {
        d.timestamp = parse_iso8601(rec[2]);
      } catch (const Error& e) {
        fail(ErrorKind::Parse, where + ": " + e.what());
      }
      d.source = rec[3];
      d.frame = parse_frame_field(rec[4], where);
      if (d.id.empty()) fail(ErrorKind::Parse, where + ": id must be nonempty");
      check_frame_range(d.frame, tax, where);
      docs.push_back(std::move(d));
    }
  } else {
    nlohmann::json j = nlohmann::json::parse(raw, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::Parse, "json input is not valid JSON");
    if (!j.is_array()) fail(ErrorKind::Parse, "json corpus must be an array of objects");
    for (size_t r = 0; r < j.size(); ++r) {
      const auto& e = j[r];
      std::string where = "json entry " + std::to_string(r + 1);
      if (!e.is_object()) fail(ErrorKind::Parse, where + ": not an object");
      for (const char* k : {"id", "headline", "date", "source", "frame"})
        if (!e.contains(k)) fail(ErrorKind::Parse, where + ": missing key \"" + k + "\"");
      for (const char* k : {"id", "headline", "date", "source"})
        if (!e[k].is_string()) fail(ErrorKind::Parse, where + ": \"" + k + "\" must be a string");
      if (!e["frame"].is_number_integer())
        fail(ErrorKind::Parse, where + ": \"frame\" must be an integer");
      Document d;
      d.id = e["id"].get<std::string>();
      d.headline = e["headline"].get<std::string>();
      try {
        d.timestamp = parse_iso8601(e["date"].get<std::string>());
      } catch (const Error& err) {
        fail(ErrorKind::Parse, where + ": " + err.what());
      }
      d.source = e["source"].get<std::string>();
      d.frame = e["frame"].get<int>();
      if (d.id.empty()) fail(ErrorKind::Parse, where + ": id must be nonempty");
      check_frame_range(d.frame, tax, where);
      docs.push_back(std::move(d));
    }
  }

  bool grouped = frames_all_grouped(docs, tax);
  return Corpus(std::move(docs), std::move(tax), grouped);
}

std::string export_corpus(const Corpus& corpus, CorpusFormat format) {
  if (format == CorpusFormat::Csv) {
    std::string out = "id,headline,date,source,frame\n";
    for (const auto& d : corpus.docs()) {
      csv_append_field(out, d.id);
      out += ',';
      csv_append_field(out, d.headline);
      out += ',';
      out += format_iso8601(d.timestamp);
      out += ',';
      csv_append_field(out, d.source);
      out += ',';
      out += std::to_string(d.frame);
      out += '\n';
    }
    return out;
  }
  jsonio::Writer w;
  w.begin_array();
  for (const auto& d : corpus.docs()) {
    w.begin_object();
    w.key("id").string(d.id);
    w.key("headline").string(d.headline);
    w.key("date").string(format_iso8601(d.timestamp));
    w.key("source").string(d.source);
    w.key("frame").integer(d.frame);
    w.end_object();
  }
  w.end_array();
  return w.take();
}

Corpus apply_frame_grouping(const Corpus& corpus) {
  if (corpus.grouped())
    fail(ErrorKind::State, "corpus frames are already grouped");
  std::vector<Document> docs = corpus.docs();
  for (auto& d : docs) d.frame = corpus.taxonomy().group_of(d.frame);
  return Corpus(std::move(docs), corpus.taxonomy(), true);
}

Corpus stratified_sample(const Corpus& corpus, size_t n, uint64_t seed) {
  if (n == 0) fail(ErrorKind::Argument, "sample size must be positive");
  if (n > corpus.size())
    fail(ErrorKind::Argument, "sample size " + std::to_string(n) +
                                  " exceeds corpus size " + std::to_string(corpus.size()));

  const auto& tax = corpus.taxonomy();
  std::vector<int> frame_ids;
  for (const auto& f : corpus.grouped() ? tax.grouped_frames() : tax.raw_frames())
    frame_ids.push_back(f.id);

  const uint64_t total = corpus.size();
  struct Quota {
    int frame;
    uint64_t count;
    uint64_t share;      // floor(n * count / total)
    uint64_t remainder;  // (n * count) % total
  };
  std::vector<Quota> quotas;
  uint64_t assigned = 0;
  for (int f : frame_ids) {
    uint64_t count = corpus.indices_with_frame(f).size();
    uint64_t scaled = n * count;
    Quota q{f, count, scaled / total, scaled % total};
    assigned += q.share;
    quotas.push_back(q);
  }

  // Largest remainder, ties broken toward the lower frame id.
  std::vector<size_t> order(quotas.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (quotas[a].remainder != quotas[b].remainder)
      return quotas[a].remainder > quotas[b].remainder;
    return quotas[a].frame < quotas[b].frame;
  });
  const uint64_t leftover = n - assigned;
  for (uint64_t i = 0; i < leftover; ++i) quotas[order[i]].share += 1;

  Rng rng(seed);
  std::vector<Document> picked;
  for (const auto& q : quotas) {
    if (q.share == 0) continue;
    std::vector<size_t> members = corpus.indices_with_frame(q.frame);
    // Partial Fisher-Yates: the first q.share slots become the sample.
    for (uint64_t i = 0; i < q.share; ++i) {
      uint64_t j = i + rng.next_below(members.size() - i);
      std::swap(members[i], members[j]);
      picked.push_back(corpus.doc(members[i]));
    }
  }
  return Corpus(std::move(picked), tax, corpus.grouped());
}

}  // namespace framemap
