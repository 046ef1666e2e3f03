#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "slp/corpus_io.hpp"
#include "slp/fsnet.hpp"
#include "slp/hash.hpp"
#include "slp/keyvalue.hpp"
#include "slp/metrics.hpp"
#include "slp/numtext.hpp"
#include "slp/nn/checkpoint.hpp"
#include "slp/pose_io.hpp"
#include "slp/protocol.hpp"
#include "slp/render.hpp"
#include "slp/translate.hpp"

namespace slp::cli {

namespace fs = std::filesystem;

namespace {

// Options that take no value; in a config file they are enabled by 1/true.
const std::set<std::string> kFlags = {"no-positional", "no-smoothing", "strip-variants", "heatmaps", "linear-decay"};

/// Appends `--key value` for every config entry not already on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw CLI::ArgumentMismatch("--config needs a file");
  const fs::path path = *(it + 1);
  args.erase(it, it + 2);
  for (const auto& [key, value] : read_key_values(path)) {
    const std::string opt = "--" + key;
    if (std::find(args.begin(), args.end(), opt) != args.end()) continue;
    if (kFlags.count(key)) {
      if (value == "1" || value == "true") args.push_back(opt);
    } else {
      args.push_back(opt);
      args.push_back(value);
    }
  }
  return args;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (double x : v) {
    if (!s.empty()) s += ' ';
    s += format_real(x);
  }
  return s;
}

void finish(const KeyValues& kv, const std::string& report, std::ostream& out) {
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
  if (!report.empty()) write_key_values(kv, report);
}

/// Digest over relative paths and contents of every regular file, in path order.
std::string directory_hash(const fs::path& dir, const std::set<std::string>& exclude = {}) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && !exclude.count(e.path().filename().string())) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Fnv1a h;
  for (const auto& f : files) {
    const std::string rel = fs::relative(f, dir).generic_string();
    h.update(rel);
    h.update(read_file(f));
  }
  return h.hex();
}

std::vector<std::vector<std::string>> read_token_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> words;
    for (auto w : split_ws(line)) words.emplace_back(w);
    out.push_back(std::move(words));
  }
  return out;
}

std::set<std::string> read_vocab_file(const fs::path& path) {
  std::set<std::string> out;
  for (const auto& line : read_token_lines(path)) out.insert(line.begin(), line.end());
  return out;
}

std::vector<SentencePair> encode_pairs(const T2GModel& m, const std::vector<TextPair>& pairs) {
  std::vector<SentencePair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({m.source.encode(p.spoken), m.target.encode(p.gloss)});
  return out;
}

/// Sequence accuracy, BLEU-4 and ROUGE-L of greedy translations.
void translation_scores(const T2GModel& m, const std::vector<TextPair>& test, bool smoothing, KeyValues& kv) {
  std::vector<std::vector<std::string>> hyps, refs;
  std::size_t exact = 0;
  for (const auto& p : test) {
    hyps.push_back(m.target.decode(greedy_translate(m, m.source.encode(p.spoken))));
    refs.push_back(p.gloss);
    if (hyps.back() == refs.back()) ++exact;
  }
  kv.emplace_back("test_pairs", std::to_string(test.size()));
  if (test.empty()) return;
  kv.emplace_back("sequence_accuracy", format_real(static_cast<double>(exact) / static_cast<double>(test.size())));
  kv.emplace_back("bleu4", format_real(bleu4(hyps, refs, BleuOptions{smoothing})));
  kv.emplace_back("rouge_l", format_real(rouge_l(hyps, refs)));
}

struct AlignmentEval {
  AlignmentMetrics metrics;
  double mean_dtw = 0.0;
  double length_ratio = 0.0;
};

/// Masks against ground truth (or DTW masks when a segment has none) and
/// DTW distance of the produced sequences to the targets.
AlignmentEval alignment_scores(const FSNetModel& model, const std::vector<TrainingExample>& examples,
                               const std::vector<SelectionMask>& truth, double threshold) {
  AlignmentEval ev;
  ev.metrics = evaluate_masks(model, examples, truth, threshold);
  double produced = 0.0, target = 0.0;
  for (const auto& ex : examples) {
    const auto mask = predict_mask(model, ex.glosses, ex.interp, threshold);
    const auto out = apply_selection(ex.interp, mask);
    ev.mean_dtw += dtw_distance(out, ex.target);
    produced += static_cast<double>(out.size());
    target += static_cast<double>(ex.target.size());
  }
  if (!examples.empty()) {
    ev.mean_dtw /= static_cast<double>(examples.size());
    ev.length_ratio = produced / target;
  }
  return ev;
}

void put_alignment(const AlignmentEval& ev, KeyValues& kv) {
  kv.emplace_back("precision", format_real(ev.metrics.precision));
  kv.emplace_back("recall", format_real(ev.metrics.recall));
  kv.emplace_back("f1", format_real(ev.metrics.f1));
  kv.emplace_back("frame_accuracy", format_real(ev.metrics.frame_accuracy));
  kv.emplace_back("mean_dtw_distance", format_real(ev.mean_dtw));
  kv.emplace_back("length_ratio", format_real(ev.length_ratio));
}

void load_examples(const fs::path& manifest, const DictionaryStore& store, int n_li,
                   std::vector<TrainingExample>& examples, std::vector<SelectionMask>& truth) {
  const SkeletonSpec spec = store.spec();
  for (auto& seg : load_segments(manifest, &spec)) {
    examples.push_back(make_training_example(seg.glosses, store, seg.target, n_li));
    truth.push_back(seg.gt_mask.size() == examples.back().target_mask.size() ? seg.gt_mask
                                                                            : examples.back().target_mask);
  }
}

SkeletonSpec skeleton_for(const std::string& name, const PoseSequence& seq) {
  if (name == "upper_body" || (name == "auto" && seq.spec.joint_count == 10 && seq.spec.dims == 2))
    return SkeletonSpec::upper_body();
  if (name == "chain" || name == "auto") return SkeletonSpec::chain(seq.spec.joint_count, seq.spec.dims);
  throw ShapeError("unknown skeleton '" + name + "' (expected auto, upper_body or chain)");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sign language production toolkit: synthetic data, text-to-gloss translation, frame selection, "
               "rendering and evaluation."};
  app.name("slp");
  app.require_subcommand(1);
  std::string report;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic corpus directory");
  SyntheticConfig gcfg;
  CorpusSizes sizes;
  std::string gen_out;
  std::optional<int> text_vocab;
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--seed", gcfg.seed, "Master seed")->capture_default_str();
  gen->add_option("--vocab", gcfg.vocab_size, "Dictionary glosses (also the text vocabulary unless --text-vocab)")
      ->capture_default_str();
  gen->add_option("--text-vocab", text_vocab, "Glosses used by the parallel text");
  gen->add_option("--train", sizes.train_segments, "Training segments")->capture_default_str();
  gen->add_option("--heldout", sizes.heldout_segments, "Held-out segments")->capture_default_str();
  gen->add_option("--text-train", sizes.text_train, "Training sentence pairs")->capture_default_str();
  gen->add_option("--text-test", sizes.text_test, "Test sentence pairs")->capture_default_str();
  gen->add_option("--drop-prob", gcfg.drop_prob, "Per-frame drop probability")->capture_default_str();
  gen->add_option("--n-li", gcfg.n_li, "Interpolation frames between signs")->capture_default_str();
  gen->add_option("--trim-max", gcfg.trim_max, "Largest per-sign boundary trim")->capture_default_str();
  gen->add_option("--filler-rate", gcfg.filler_rate, "Filler words per content word")->capture_default_str();
  gen->add_option("--report", report, "Report file (default <out>/report.txt)");

  // train-t2g
  auto* t2g = app.add_subcommand("train-t2g", "Train the text-to-gloss translator");
  std::string t2g_corpus, t2g_train, t2g_test, t2g_out;
  T2GTrainOptions topts;
  topts.epochs = 30;
  nn::TransformerConfig tcfg = T2GModel::default_config();
  bool no_positional = false, no_smoothing = false;
  t2g->add_option("--corpus", t2g_corpus, "Corpus directory (text_train.tsv, text_test.tsv)");
  t2g->add_option("--train-file", t2g_train, "Training pairs (overrides the corpus)");
  t2g->add_option("--test-file", t2g_test, "Test pairs (overrides the corpus)");
  t2g->add_option("--out", t2g_out, "Checkpoint path")->required();
  t2g->add_option("--epochs", topts.epochs)->capture_default_str();
  t2g->add_option("--batch-size", topts.batch_size)->capture_default_str();
  t2g->add_option("--lr", topts.lr)->capture_default_str();
  t2g->add_option("--seed", topts.seed)->capture_default_str();
  t2g->add_option("--layers", tcfg.layers)->capture_default_str();
  t2g->add_option("--heads", tcfg.heads)->capture_default_str();
  t2g->add_option("--hidden", tcfg.hidden)->capture_default_str();
  t2g->add_option("--dropout", tcfg.dropout)->capture_default_str();
  t2g->add_flag("--linear-decay", topts.linear_decay, "Decay the learning rate linearly to zero");
  t2g->add_flag("--no-positional", no_positional, "Disable positional encodings");
  t2g->add_flag("--no-smoothing", no_smoothing, "Unsmoothed BLEU");
  t2g->add_option("--report", report, "Report file (default <out>.report)");

  // train-fsnet
  auto* tfs = app.add_subcommand("train-fsnet", "Train the frame selection network");
  std::string fs_corpus, fs_out;
  FSNetTrainOptions fopts;
  FSNetConfig fcfg;
  int n_li = kDefaultInterpFrames;
  tfs->add_option("--corpus", fs_corpus, "Corpus directory (dict.csv, manifest.csv, heldout.csv)")->required();
  tfs->add_option("--out", fs_out, "Checkpoint path")->required();
  tfs->add_option("--epochs", fopts.epochs)->capture_default_str();
  tfs->add_option("--batch-size", fopts.batch_size)->capture_default_str();
  tfs->add_option("--lr", fopts.lr)->capture_default_str();
  tfs->add_option("--seed", fopts.seed)->capture_default_str();
  tfs->add_option("--n-li", n_li)->capture_default_str();
  tfs->add_option("--threshold", fopts.threshold)->capture_default_str();
  tfs->add_option("--layers", fcfg.transformer.layers)->capture_default_str();
  tfs->add_option("--heads", fcfg.transformer.heads)->capture_default_str();
  tfs->add_option("--hidden", fcfg.transformer.hidden)->capture_default_str();
  tfs->add_flag("--no-positional", no_positional, "Disable positional encodings");
  tfs->add_option("--report", report, "Report file (default <out>.report)");

  // produce
  auto* prod = app.add_subcommand("produce", "Text or glosses to a continuous pose sequence");
  std::string p_t2g, p_fsnet, p_dict, p_text, p_glosses, p_out;
  double threshold = kDefaultThreshold;
  prod->add_option("--t2g", p_t2g, "Text-to-gloss checkpoint (needed with --text)");
  prod->add_option("--fsnet", p_fsnet, "Frame selection checkpoint")->required();
  prod->add_option("--dict", p_dict, "Dictionary manifest (gloss,pose_path lines)")->required();
  auto* text_opt = prod->add_option("--text", p_text, "Spoken-language input");
  auto* gloss_opt = prod->add_option("--glosses", p_glosses, "Gloss sequence input (skips translation)");
  text_opt->excludes(gloss_opt);
  prod->add_option("--out", p_out, "Output pose file")->required();
  prod->add_option("--n-li", n_li)->capture_default_str();
  prod->add_option("--threshold", threshold)->capture_default_str();
  prod->add_option("--report", report, "Report file");

  // render
  auto* ren = app.add_subcommand("render", "Render a pose file to PPM frames");
  std::string r_pose, r_out, r_skeleton = "auto";
  int width = 256, height = 256;
  double sigma = 0.0;
  bool heatmaps = false;
  ren->add_option("--pose", r_pose, "Pose file")->required();
  ren->add_option("--out", r_out, "Output directory")->required();
  ren->add_option("--width", width)->capture_default_str();
  ren->add_option("--height", height)->capture_default_str();
  ren->add_option("--skeleton", r_skeleton, "auto, upper_body or chain")->capture_default_str();
  ren->add_flag("--heatmaps", heatmaps, "Also write per-limb heatmaps (frame_%06d.hmap)");
  ren->add_option("--sigma", sigma, "Heatmap sigma in pixels (default 1.5% of the width)");
  ren->add_option("--report", report, "Report file");

  // eval
  auto* ev = app.add_subcommand("eval", "Alignment and translation metrics");
  std::string e_hyp, e_ref, e_t2g, e_test, e_fsnet, e_dict, e_manifest;
  ev->add_option("--hyp", e_hyp, "Hypothesis token lines");
  ev->add_option("--ref", e_ref, "Reference token lines");
  ev->add_option("--t2g", e_t2g, "Text-to-gloss checkpoint");
  ev->add_option("--test-file", e_test, "Sentence pairs for --t2g");
  ev->add_option("--fsnet", e_fsnet, "Frame selection checkpoint");
  ev->add_option("--dict", e_dict, "Dictionary manifest for --fsnet");
  ev->add_option("--manifest", e_manifest, "Segment manifest for --fsnet");
  ev->add_option("--n-li", n_li)->capture_default_str();
  ev->add_option("--threshold", threshold)->capture_default_str();
  ev->add_flag("--no-smoothing", no_smoothing, "Unsmoothed BLEU");
  ev->add_option("--report", report, "Report file");

  // stats
  auto* st = app.add_subcommand("stats", "Translation protocol statistics");
  std::string s_protocol, s_gloss_vocab, s_text_vocab;
  bool strip = false;
  st->add_option("--protocol", s_protocol, "Protocol CSV")->required();
  st->add_flag("--strip-variants", strip, "Remove numeric gloss variant suffixes");
  st->add_option("--gloss-vocab", s_gloss_vocab, "Reference gloss vocabulary file");
  st->add_option("--text-vocab", s_text_vocab, "Reference word vocabulary file");
  st->add_option("--report", report, "Report file");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    KeyValues kv;
    if (*gen) {
      gcfg.text_vocab_size = text_vocab.value_or(gcfg.vocab_size);
      const auto corpus = gen_corpus(gcfg, sizes);
      write_corpus(corpus, gen_out);
      std::size_t frames = 0;
      for (const auto& s : corpus.train) frames += static_cast<std::size_t>(s.sample.target.size());
      kv = {{"command", "gen"},
            {"seed", std::to_string(gcfg.seed)},
            {"dictionary_entries", std::to_string(corpus.store.size())},
            {"train_segments", std::to_string(corpus.train.size())},
            {"heldout_segments", std::to_string(corpus.heldout.size())},
            {"train_frames", std::to_string(frames)},
            {"text_train", std::to_string(corpus.text_train.size())},
            {"text_test", std::to_string(corpus.text_test.size())},
            {"corpus_hash", directory_hash(gen_out, {"report.txt"})}};
      finish(kv, report.empty() ? (fs::path(gen_out) / "report.txt").string() : report, out);
    } else if (*t2g) {
      if (t2g_train.empty() && t2g_corpus.empty()) throw CLI::RequiredError("--corpus or --train-file");
      const auto train = load_text_pairs(t2g_train.empty() ? fs::path(t2g_corpus) / "text_train.tsv" : fs::path(t2g_train));
      std::vector<TextPair> test;
      if (!t2g_test.empty() || !t2g_corpus.empty())
        test = load_text_pairs(t2g_test.empty() ? fs::path(t2g_corpus) / "text_test.tsv" : fs::path(t2g_test));
      std::vector<std::string> src_words, tgt_words;
      for (const auto& p : train) {
        src_words.insert(src_words.end(), p.spoken.begin(), p.spoken.end());
        tgt_words.insert(tgt_words.end(), p.gloss.begin(), p.gloss.end());
      }
      auto model = T2GModel::create(Vocabulary::from_tokens(src_words), Vocabulary::from_tokens(tgt_words), tcfg,
                                    topts.seed);
      model.positional_encoding = !no_positional;
      const auto rep = train_t2g(model, encode_pairs(model, train), topts);
      save_t2g(model, t2g_out);
      kv = {{"command", "train-t2g"},
            {"seed", std::to_string(topts.seed)},
            {"epochs", std::to_string(topts.epochs)},
            {"steps", std::to_string(rep.steps)},
            {"train_pairs", std::to_string(train.size())},
            {"loss_curve", join_reals(rep.loss_curve)},
            {"token_accuracy_curve", join_reals(rep.token_accuracy)}};
      translation_scores(model, test, !no_smoothing, kv);
      kv.emplace_back("checkpoint_hash", hash_file(t2g_out));
      finish(kv, report.empty() ? t2g_out + ".report" : report, out);
    } else if (*tfs) {
      const fs::path dir = fs_corpus;
      const DictionaryStore store = load_dictionary(dir / "dict.csv", nullptr);
      std::vector<TrainingExample> train, heldout;
      std::vector<SelectionMask> train_truth, heldout_truth;
      load_examples(dir / "manifest.csv", store, n_li, train, train_truth);
      if (fs::exists(dir / "heldout.csv")) load_examples(dir / "heldout.csv", store, n_li, heldout, heldout_truth);
      fcfg.positional_encoding = !no_positional;
      auto model = FSNetModel::create(Vocabulary::from_tokens(store.glosses()), store.spec().width(), fcfg, fopts.seed);
      const auto rep = train_fsnet(model, train, fopts);
      save_fsnet(model, fs_out);
      kv = {{"command", "train-fsnet"},
            {"seed", std::to_string(fopts.seed)},
            {"epochs", std::to_string(fopts.epochs)},
            {"steps", std::to_string(rep.steps)},
            {"train_segments", std::to_string(train.size())},
            {"heldout_segments", std::to_string(heldout.size())},
            {"loss_curve", join_reals(rep.loss_curve)}};
      if (!heldout.empty()) put_alignment(alignment_scores(model, heldout, heldout_truth, fopts.threshold), kv);
      kv.emplace_back("checkpoint_hash", hash_file(fs_out));
      finish(kv, report.empty() ? fs_out + ".report" : report, out);
    } else if (*prod) {
      if (p_text.empty() == p_glosses.empty()) throw CLI::RequiredError("exactly one of --text or --glosses");
      const DictionaryStore store = load_dictionary(p_dict, nullptr);
      const FSNetModel model = load_fsnet(p_fsnet);
      std::vector<std::string> glosses;
      if (!p_text.empty()) {
        if (p_t2g.empty()) throw CLI::RequiredError("--t2g (translation of --text)");
        const T2GModel translator = load_t2g(p_t2g);
        std::vector<std::string> words;
        for (auto w : split_ws(p_text)) words.emplace_back(w);
        glosses = translator.target.decode(greedy_translate(translator, translator.source.encode(words)));
        if (glosses.empty()) throw DegenerateInputError("translation produced no glosses");
      } else {
        for (auto g : split_ws(p_glosses)) glosses.emplace_back(g);
      }
      const auto result = produce(model, glosses, store, n_li, threshold);
      save_pose_sequence(result.output, p_out);
      kv = {{"command", "produce"},
            {"glosses", join(glosses)},
            {"interpolated_frames", std::to_string(result.interp.size())},
            {"output_frames", std::to_string(result.output.size())},
            {"mask", format_mask(result.mask)},
            {"output_hash", hash_file(p_out)}};
      finish(kv, report, out);
    } else if (*ren) {
      PoseSequence seq = load_pose_sequence(r_pose);
      const SkeletonSpec spec = skeleton_for(r_skeleton, seq);
      seq.spec = spec;
      const auto paths = render_video(seq, spec, width, height, r_out);
      if (heatmaps && !seq.empty()) {
        const Viewport view = Viewport::fit(seq, width, height);
        const double s = sigma > 0.0 ? sigma : default_sigma(width);
        for (Index i = 0; i < seq.size(); ++i) {
          char name[32];
          std::snprintf(name, sizeof name, "frame_%06lld.hmap", static_cast<long long>(i));
          save_heatmap(pose_to_heatmap(seq.frame(i), spec, view, s), fs::path(r_out) / name);
        }
      }
      kv = {{"command", "render"},
            {"frames", std::to_string(paths.size())},
            {"width", std::to_string(width)},
            {"height", std::to_string(height)},
            {"render_hash", directory_hash(r_out)}};
      finish(kv, report, out);
    } else if (*ev) {
      kv.emplace_back("command", "eval");
      bool any = false;
      if (!e_hyp.empty() || !e_ref.empty()) {
        if (e_hyp.empty() || e_ref.empty()) throw CLI::RequiredError("--hyp and --ref together");
        const auto hyps = read_token_lines(e_hyp), refs = read_token_lines(e_ref);
        kv.emplace_back("bleu4", format_real(bleu4(hyps, refs, BleuOptions{!no_smoothing})));
        kv.emplace_back("rouge_l", format_real(rouge_l(hyps, refs)));
        any = true;
      }
      if (!e_t2g.empty()) {
        if (e_test.empty()) throw CLI::RequiredError("--test-file for --t2g");
        translation_scores(load_t2g(e_t2g), load_text_pairs(e_test), !no_smoothing, kv);
        any = true;
      }
      if (!e_fsnet.empty()) {
        if (e_dict.empty() || e_manifest.empty()) throw CLI::RequiredError("--dict and --manifest for --fsnet");
        const DictionaryStore store = load_dictionary(e_dict, nullptr);
        std::vector<TrainingExample> examples;
        std::vector<SelectionMask> truth;
        load_examples(e_manifest, store, n_li, examples, truth);
        kv.emplace_back("segments", std::to_string(examples.size()));
        put_alignment(alignment_scores(load_fsnet(e_fsnet), examples, truth, threshold), kv);
        any = true;
      }
      if (!any) throw CLI::RequiredError("one of --hyp/--ref, --t2g or --fsnet");
      finish(kv, report, out);
    } else if (*st) {
      std::set<std::string> gloss_ref, text_ref;
      StatsOptions so;
      so.strip_variants = strip;
      if (!s_gloss_vocab.empty()) {
        gloss_ref = read_vocab_file(s_gloss_vocab);
        so.gloss_reference = &gloss_ref;
      }
      if (!s_text_vocab.empty()) {
        text_ref = read_vocab_file(s_text_vocab);
        so.text_reference = &text_ref;
      }
      const auto s = corpus_stats(parse_protocol(s_protocol), so);
      kv = {{"command", "stats"},
            {"segments", std::to_string(s.segments)},
            {"frames", std::to_string(s.frames)},
            {"gloss_tokens", std::to_string(s.gloss.total)},
            {"gloss_vocabulary", std::to_string(s.gloss.vocabulary)},
            {"gloss_singletons", std::to_string(s.gloss.singletons)},
            {"gloss_oov", std::to_string(s.gloss.oov)},
            {"text_tokens", std::to_string(s.text.total)},
            {"text_vocabulary", std::to_string(s.text.vocabulary)},
            {"text_singletons", std::to_string(s.text.singletons)},
            {"text_oov", std::to_string(s.text.oov)}};
      finish(kv, report, out);
    }
  } catch (const CLI::ParseError& e) {
    err << "error: missing " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace slp::cli
