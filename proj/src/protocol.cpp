#include "slp/protocol.hpp"

#include <fstream>
#include <map>
#include <regex>

#include "slp/error.hpp"
#include "slp/numtext.hpp"

namespace slp {

namespace {

std::int64_t parse_frame(std::string_view s, const char* what) {
  const auto v = parse_int<std::int64_t>(s);
  if (!v || *v < 0) throw FormatError(std::string(what) + " '" + std::string(s) + "' is not a non-negative integer");
  return *v;
}

TokenStats count_tokens(const std::map<std::string, std::size_t>& counts, const std::set<std::string>* reference) {
  TokenStats s;
  s.vocabulary = counts.size();
  for (const auto& [tok, n] : counts) {
    s.total += n;
    if (n == 1) ++s.singletons;
    if (reference && !reference->count(tok)) s.oov += n;
  }
  return s;
}

}  // namespace

void ProtocolRecord::validate() const {
  if (camera != "A" && camera != "B") throw FormatError("camera must be A or B, got '" + camera + "'");
  if (start_time > stop_time) throw FormatError("start_time after stop_time");
  for (std::size_t i = 0; i < glosses.size(); ++i) {
    if (glosses[i].start_frame > glosses[i].stop_frame)
      throw FormatError("gloss '" + glosses[i].gloss + "' starts after it stops");
    if (i > 0 && glosses[i].start_frame < glosses[i - 1].start_frame)
      throw FormatError("gloss '" + glosses[i].gloss + "' starts before its predecessor");
  }
}

GlossSpan parse_gloss_annotation(std::string_view token) {
  if (token.empty()) throw FormatError("empty gloss annotation");
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= token.size(); ++i) {
    if (i == token.size() || token[i] == '/') {
      parts.push_back(token.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3)
    throw FormatError("gloss annotation '" + std::string(token) + "' needs GLOSS/start/stop, got " +
                      std::to_string(parts.size()) + " fields");
  if (parts[0].empty()) throw FormatError("gloss annotation '" + std::string(token) + "' has an empty gloss");
  GlossSpan span{std::string(parts[0]), parse_frame(parts[1], "start frame"), parse_frame(parts[2], "stop frame")};
  if (span.start_frame > span.stop_frame)
    throw FormatError("gloss annotation '" + std::string(token) + "' starts after it stops");
  return span;
}

std::string format_gloss_annotation(const GlossSpan& span) {
  return span.gloss + "/" + std::to_string(span.start_frame) + "/" + std::to_string(span.stop_frame);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (!cur.empty() || was_quoted) throw FormatError("stray quote inside a field");
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      if (was_quoted) throw FormatError("text after a closing quote");
      cur += c;
    }
  }
  if (quoted) throw FormatError("unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<ProtocolRecord> read_protocol(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kProtocolHeader)
    throw ParseError("expected header '" + std::string(kProtocolHeader) + "'", 1);
  std::vector<ProtocolRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const auto f = split_csv_line(line);
      if (f.size() != 6) throw FormatError("expected 6 fields, got " + std::to_string(f.size()));
      ProtocolRecord r;
      r.filename = f[0];
      r.camera = f[1];
      r.ger_text = f[2];
      for (auto tok : split_ws(f[3])) r.glosses.push_back(parse_gloss_annotation(tok));
      r.start_time = parse_frame(trim(f[4]), "start_time");
      r.stop_time = parse_frame(trim(f[5]), "stop_time");
      r.validate();
      out.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return out;
}

std::vector<ProtocolRecord> parse_protocol(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_protocol(in);
}

void write_protocol(std::ostream& out, const std::vector<ProtocolRecord>& records) {
  out << kProtocolHeader << '\n';
  for (const auto& r : records) {
    std::string glosses;
    for (const auto& g : r.glosses) {
      if (!glosses.empty()) glosses += ' ';
      glosses += format_gloss_annotation(g);
    }
    out << csv_field(r.filename) << ',' << csv_field(r.camera) << ',' << csv_field(r.ger_text) << ','
        << csv_field(glosses) << ',' << r.start_time << ',' << r.stop_time << '\n';
  }
}

void save_protocol(const std::vector<ProtocolRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_protocol(out, records);
}

std::string strip_variant(const std::string& gloss) {
  static const std::regex variant(R"(^(.*?)\d+[A-Z]?([\^*]*)$)");
  std::smatch m;
  if (!std::regex_match(gloss, m, variant)) return gloss;
  std::string stripped = m[1].str() + m[2].str();
  return m[1].length() == 0 ? gloss : stripped;
}

CorpusStats corpus_stats(const std::vector<ProtocolRecord>& records, const StatsOptions& opts) {
  CorpusStats s;
  std::map<std::string, std::size_t> gloss_counts, text_counts;
  for (const auto& r : records) {
    ++s.segments;
    s.frames += r.stop_time - r.start_time + 1;
    for (const auto& g : r.glosses) ++gloss_counts[opts.strip_variants ? strip_variant(g.gloss) : g.gloss];
    for (auto w : split_ws(r.ger_text)) ++text_counts[std::string(w)];
  }
  s.gloss = count_tokens(gloss_counts, opts.gloss_reference);
  s.text = count_tokens(text_counts, opts.text_reference);
  return s;
}

}  // namespace slp
