#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace slp {

/// One timed gloss, written `GLOSS/start/stop`.
struct GlossSpan {
  std::string gloss;
  std::int64_t start_frame = 0;
  std::int64_t stop_frame = 0;
  bool operator==(const GlossSpan&) const = default;
};

/// One segment of a translation protocol. Times are integer frame indices
/// into the source video.
struct ProtocolRecord {
  std::string filename;
  std::string camera;  // "A" or "B"
  std::string ger_text;
  std::vector<GlossSpan> glosses;
  std::int64_t start_time = 0;
  std::int64_t stop_time = 0;

  /// Throws FormatError on a bad camera, a reversed span or out-of-order glosses.
  void validate() const;
  bool operator==(const ProtocolRecord&) const = default;
};

inline constexpr std::string_view kProtocolHeader = "filename,camera,ger_text,gloss,start_time,stop_time";

GlossSpan parse_gloss_annotation(std::string_view token);
std::string format_gloss_annotation(const GlossSpan& span);

/// Splits one CSV line. Quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_field(std::string_view value);

/// Errors carry the 1-based line number.
std::vector<ProtocolRecord> read_protocol(std::istream& in);
std::vector<ProtocolRecord> parse_protocol(const std::filesystem::path& path);
void write_protocol(std::ostream& out, const std::vector<ProtocolRecord>& records);
void save_protocol(const std::vector<ProtocolRecord>& records, const std::filesystem::path& path);

/// Removes a trailing numeric variant suffix: `BUCHSTABE1` -> `BUCHSTABE`,
/// `HAUS2A^` -> `HAUS^`. Glosses that would become empty are kept.
std::string strip_variant(const std::string& gloss);

struct TokenStats {
  std::size_t total = 0;
  std::size_t vocabulary = 0;
  std::size_t singletons = 0;
  /// Tokens absent from the reference vocabulary; 0 without one.
  std::size_t oov = 0;
  bool operator==(const TokenStats&) const = default;
};

struct CorpusStats {
  std::size_t segments = 0;
  /// Sum of stop_time - start_time + 1.
  std::int64_t frames = 0;
  TokenStats gloss;
  TokenStats text;
  bool operator==(const CorpusStats&) const = default;
};

struct StatsOptions {
  bool strip_variants = false;
  const std::set<std::string>* gloss_reference = nullptr;
  const std::set<std::string>* text_reference = nullptr;
};

/// Gloss tokens come from the spans, text tokens from whitespace-split ger_text.
CorpusStats corpus_stats(const std::vector<ProtocolRecord>& records, const StatsOptions& opts = {});

}  // namespace slp
