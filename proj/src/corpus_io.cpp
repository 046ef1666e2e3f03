#include "slp/corpus_io.hpp"

#include <cstdio>
#include <fstream>

#include "slp/numtext.hpp"
#include "slp/pose_io.hpp"
#include "slp/translate.hpp"

namespace slp {

namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s;
}

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  for (auto w : split_ws(line)) out.emplace_back(w);
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string limbs_text(const SkeletonSpec& spec) {
  std::string s;
  for (const auto& [a, b] : spec.limbs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(a) + "-" + std::to_string(b);
  }
  return s;
}

std::vector<std::pair<int, int>> parse_limbs(const std::string& text) {
  std::vector<std::pair<int, int>> limbs;
  for (auto tok : split_ws(text)) {
    const auto dash = tok.find('-');
    const auto a = dash == std::string_view::npos ? std::nullopt : parse_int<int>(tok.substr(0, dash));
    const auto b = dash == std::string_view::npos ? std::nullopt : parse_int<int>(tok.substr(dash + 1));
    if (!a || !b) throw ParseError("bad limb '" + std::string(tok) + "'");
    limbs.emplace_back(*a, *b);
  }
  return limbs;
}

void write_manifest(const std::vector<Segment>& segs, const fs::path& dir, const std::string& name) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw IoError("cannot write " + (dir / name).string());
  for (const auto& s : segs) {
    write_gloss_file(s.glosses, dir / "segments" / (s.id + ".gloss"));
    save_pose_sequence(s.sample.target, dir / "segments" / (s.id + ".pose"));
    save_mask(s.sample.gt_mask, (dir / "segments" / (s.id + ".mask")).string());
    out << "segments/" << s.id << ".gloss,segments/" << s.id << ".pose\n";
  }
}

std::string segment_id(const char* split, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04zu", split, i);
  return buf;
}

}  // namespace

SyntheticCorpus gen_corpus(const SyntheticConfig& cfg, const CorpusSizes& sizes) {
  SyntheticCorpus c;
  c.cfg = cfg;
  c.store = gen_dictionary(cfg);
  const auto vocab = c.store.glosses();
  auto make = [&](const char* split, std::size_t i, std::uint64_t index) {
    Segment s;
    s.id = segment_id(split, i);
    s.glosses = gen_gloss_sequence(cfg, vocab, index);
    s.sample = gen_continuous(cfg, c.store, s.glosses);
    return s;
  };
  for (std::size_t i = 0; i < sizes.train_segments; ++i) c.train.push_back(make("train", i, i));
  for (std::size_t i = 0; i < sizes.heldout_segments; ++i)
    c.heldout.push_back(make("heldout", i, sizes.train_segments + i));
  c.text_train = gen_parallel_text(cfg, sizes.text_train, 0);
  c.text_test = gen_parallel_text(cfg, sizes.text_test, sizes.text_train);
  return c;
}

KeyValues config_to_key_values(const SyntheticConfig& cfg) {
  return {{"seed", std::to_string(cfg.seed)},
          {"vocab_size", std::to_string(cfg.vocab_size)},
          {"joint_count", std::to_string(cfg.skeleton.joint_count)},
          {"dims", std::to_string(cfg.skeleton.dims)},
          {"limbs", limbs_text(cfg.skeleton)},
          {"sign_min_frames", std::to_string(cfg.sign_min_frames)},
          {"sign_max_frames", std::to_string(cfg.sign_max_frames)},
          {"components", std::to_string(cfg.components)},
          {"amplitude", format_real(cfg.amplitude)},
          {"max_frequency", format_real(cfg.max_frequency)},
          {"n_li", std::to_string(cfg.n_li)},
          {"drop_prob", format_real(cfg.drop_prob)},
          {"trim_min", std::to_string(cfg.trim_min)},
          {"trim_max", std::to_string(cfg.trim_max)},
          {"crossfade_frames", std::to_string(cfg.crossfade_frames)},
          {"segment_min_glosses", std::to_string(cfg.segment_min_glosses)},
          {"segment_max_glosses", std::to_string(cfg.segment_max_glosses)},
          {"text_vocab_size", std::to_string(cfg.text_vocab_size)},
          {"filler_vocab_size", std::to_string(cfg.filler_vocab_size)},
          {"text_min_len", std::to_string(cfg.text_min_len)},
          {"text_max_len", std::to_string(cfg.text_max_len)},
          {"mover_fraction", format_real(cfg.mover_fraction)},
          {"filler_rate", format_real(cfg.filler_rate)}};
}

SyntheticConfig config_from_key_values(const std::map<std::string, std::string>& kv, SyntheticConfig base) {
  SyntheticConfig c = std::move(base);
  for (const auto& [key, value] : kv) {
    auto as_int = [&] {
      const auto v = parse_int<int>(value);
      if (!v) throw ParseError("'" + key + "' expects an integer, got '" + value + "'");
      return *v;
    };
    auto as_real = [&] {
      const auto v = parse_real(value);
      if (!v) throw ParseError("'" + key + "' expects a number, got '" + value + "'");
      return *v;
    };
    if (key == "seed") {
      const auto v = parse_int<std::uint64_t>(value);
      if (!v) throw ParseError("'seed' expects an unsigned integer, got '" + value + "'");
      c.seed = *v;
    } else if (key == "vocab_size") c.vocab_size = as_int();
    else if (key == "joint_count") c.skeleton.joint_count = as_int();
    else if (key == "dims") c.skeleton.dims = as_int();
    else if (key == "limbs") c.skeleton.limbs = parse_limbs(value);
    else if (key == "sign_min_frames") c.sign_min_frames = as_int();
    else if (key == "sign_max_frames") c.sign_max_frames = as_int();
    else if (key == "components") c.components = as_int();
    else if (key == "amplitude") c.amplitude = as_real();
    else if (key == "max_frequency") c.max_frequency = as_real();
    else if (key == "n_li") c.n_li = as_int();
    else if (key == "drop_prob") c.drop_prob = as_real();
    else if (key == "trim_min") c.trim_min = as_int();
    else if (key == "trim_max") c.trim_max = as_int();
    else if (key == "crossfade_frames") c.crossfade_frames = as_int();
    else if (key == "segment_min_glosses") c.segment_min_glosses = as_int();
    else if (key == "segment_max_glosses") c.segment_max_glosses = as_int();
    else if (key == "text_vocab_size") c.text_vocab_size = as_int();
    else if (key == "filler_vocab_size") c.filler_vocab_size = as_int();
    else if (key == "text_min_len") c.text_min_len = as_int();
    else if (key == "text_max_len") c.text_max_len = as_int();
    else if (key == "mover_fraction") c.mover_fraction = as_real();
    else if (key == "filler_rate") c.filler_rate = as_real();
    else throw LookupError(key);
  }
  c.validate();
  return c;
}

void write_corpus(const SyntheticCorpus& corpus, const fs::path& dir) {
  ensure_dir(dir / "dict");
  ensure_dir(dir / "segments");
  write_key_values(config_to_key_values(corpus.cfg), dir / "config.txt");
  {
    std::ofstream out(dir / "dict.csv", std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / "dict.csv").string());
    for (const auto& [gloss, seq] : corpus.store.entries()) {
      save_pose_sequence(seq, dir / "dict" / (gloss + ".pose"));
      out << gloss << ",dict/" << gloss << ".pose\n";
    }
  }
  write_manifest(corpus.train, dir, "manifest.csv");
  write_manifest(corpus.heldout, dir, "heldout.csv");
  save_text_pairs(corpus.text_train, dir / "text_train.tsv");
  save_text_pairs(corpus.text_test, dir / "text_test.tsv");
}

std::vector<std::string> read_gloss_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line, all;
  while (std::getline(in, line)) all += line + ' ';
  auto out = words(all);
  if (out.empty()) throw ParseError(path.string() + ": no glosses");
  return out;
}

void write_gloss_file(const std::vector<std::string>& glosses, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << join(glosses) << '\n';
}

std::vector<LoadedSegment> load_segments(const fs::path& manifest, const SkeletonSpec* skeleton) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open " + manifest.string());
  const fs::path base = manifest.parent_path();
  std::vector<LoadedSegment> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto comma = t.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected gloss_seq_file,target_pose_file", lineno);
    const fs::path gloss_path = base / std::string(trim(t.substr(0, comma)));
    const fs::path pose_path = base / std::string(trim(t.substr(comma + 1)));
    LoadedSegment s;
    s.id = pose_path.stem().string();
    s.glosses = read_gloss_file(gloss_path);
    s.target = load_pose_sequence(pose_path, skeleton);
    fs::path mask_path = pose_path;
    mask_path.replace_extension(".mask");
    if (fs::exists(mask_path)) s.gt_mask = load_mask(mask_path.string());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TextPair> load_text_pairs(const fs::path& path) {
  std::vector<TextPair> out;
  for (auto& [src, tgt] : load_parallel_corpus(path)) out.push_back({std::move(src), std::move(tgt)});
  return out;
}

void save_text_pairs(const std::vector<TextPair>& pairs, const fs::path& path) {
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> p;
  p.reserve(pairs.size());
  for (const auto& t : pairs) p.emplace_back(t.spoken, t.gloss);
  save_parallel_corpus(p, path);
}

}  // namespace slp
