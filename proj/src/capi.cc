// capi.cc
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "wseg/wseg.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wseg/config.h"
#include "wseg/error.h"
#include "wseg/eval.h"
#include "wseg/model_io.h"
#include "wseg/segmenter.h"
#include "wseg/utf8.h"

struct wseg_settings {
  wseg::Settings settings;
};

struct wseg_model {
  explicit wseg_model(wseg::Segmenter s) : segmenter(std::move(s)) {}
  wseg::Segmenter segmenter;
};

struct wseg_result {
  wseg::Segmentation segmentation;
  std::vector<std::string> pronunciations;
};

namespace {

thread_local std::string last_error;

wseg_status Fail(wseg_status status, const std::string &message) {
  last_error = message;
  return status;
}

// Runs body, mapping exceptions onto status codes.
template <typename F>
wseg_status Guard(F &&body) {
  try {
    last_error.clear();
    body();
    return WSEG_OK;
  } catch (const wseg::IoError &e) {
    return Fail(WSEG_ERR_IO, e.what());
  } catch (const wseg::ConfigError &e) {
    return Fail(WSEG_ERR_CONFIG, e.what());
  } catch (const wseg::ArgumentError &e) {
    return Fail(WSEG_ERR_ARGUMENT, e.what());
  } catch (const wseg::NoAnalysisError &e) {
    return Fail(WSEG_ERR_NO_ANALYSIS, e.what());
  } catch (const wseg::Error &e) {
    return Fail(WSEG_ERR_VALIDATION, e.what());
  } catch (const std::bad_alloc &) {
    return Fail(WSEG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return Fail(WSEG_ERR_INTERNAL, e.what());
  }
}

void Require(const void *p, const char *what) {
  if (!p) throw wseg::ArgumentError(std::string(what) + " is null");
}

char *Dup(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wseg::IoError("cannot open '" + path + "'");
  return in;
}

template <typename T, typename Reader>
T ReadFile(const char *path, Reader reader) {
  std::ifstream in = OpenInput(path);
  return reader(in, std::string(path));
}

wseg::Segmentation Run(const wseg::Segmenter &s, wseg_algorithm algo,
                       std::string_view sentence) {
  switch (algo) {
    case WSEG_ALGO_ST:
      return s.Segment(sentence);
    case WSEG_ALGO_GR:
      return wseg::Greedy(s.lexicon(), sentence);
    case WSEG_ALGO_AG:
      return wseg::AntiGreedy(s.lexicon(), sentence);
  }
  throw wseg::ArgumentError("unknown algorithm");
}

std::vector<std::string> SplitLines(const char *text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.emplace_back(wseg::StripCr(line));
  return lines;
}

std::string NameReport(const wseg::SpanScore &s) {
  return "found\tcorrect\tmissed\tprecision\trecall\n" + std::to_string(s.found) +
         "\t" + std::to_string(s.correct) + "\t" + std::to_string(s.missed) +
         "\t" + wseg::FormatPercent(s.precision) + "\t" +
         wseg::FormatPercent(s.recall) + "\n";
}

std::vector<wseg::Span> SpansFrom(const char *tsv, const char *name) {
  std::istringstream in(tsv);
  return wseg::ReadSpansTsv(in, name);
}

}  // namespace

extern "C" {

const char *wseg_last_error(void) { return last_error.c_str(); }

const char *wseg_version(void) { return "1.0.0"; }

void wseg_string_free(char *s) { std::free(s); }

wseg_status wseg_settings_new(wseg_settings **out) {
  return Guard([&] {
    Require(out, "out");
    *out = new wseg_settings();
  });
}

void wseg_settings_free(wseg_settings *settings) { delete settings; }

wseg_status wseg_settings_set(wseg_settings *settings, const char *key,
                              const char *value) {
  return Guard([&] {
    Require(settings, "settings");
    Require(key, "key");
    Require(value, "value");
    wseg::ApplySetting(&settings->settings, key, value);
  });
}

wseg_status wseg_settings_load(wseg_settings *settings, const char *path) {
  return Guard([&] {
    Require(settings, "settings");
    Require(path, "path");
    std::ifstream in = OpenInput(path);
    wseg::ReadSettings(in, path, &settings->settings);
  });
}

wseg_status wseg_model_build(const wseg_model_paths *paths,
                             const wseg_settings *settings, wseg_model **out) {
  return Guard([&] {
    Require(paths, "paths");
    Require(out, "out");
    *out = nullptr;
    if (!paths->lexicon || !paths->fallback)
      throw wseg::ArgumentError("the lexicon and fallback files are required");
    const wseg::Settings base = settings ? settings->settings : wseg::Settings();
    wseg::ModelConfig config;
    config.lexicon = base.lexicon;
    config.bigram_threshold = base.names.bigram_threshold;
    wseg::ModelData data;
    auto entries = ReadFile<std::vector<wseg::LexEntry>>(
        paths->lexicon, [&](std::istream &in, const std::string &name) {
          return wseg::ReadLexiconTsv(in, name, base.lexicon);
        });
    auto fallback = ReadFile<std::map<std::string, std::string>>(
        paths->fallback, wseg::ReadFallbackTsv);
    data.lexicon = std::make_shared<const wseg::Lexicon>(
        std::move(entries), std::move(fallback), base.lexicon);
    if (paths->affix_rules) {
      config.morphology = true;
      data.affixes = ReadFile<std::vector<wseg::AffixRule>>(
          paths->affix_rules, wseg::ReadAffixRulesTsv);
      if (paths->seen_derived)
        data.seen = ReadFile<std::vector<wseg::SeenDerived>>(
            paths->seen_derived, [&](std::istream &in, const std::string &name) {
              return wseg::ReadSeenDerivedTsv(in, name, data.affixes);
            });
    } else if (paths->seen_derived) {
      throw wseg::ConfigError("seen derived words need affix rules");
    }
    if (paths->name_model) {
      config.names = true;
      data.names = ReadFile<wseg::NameModel>(paths->name_model,
                                             wseg::ReadNameModel);
    }
    if (paths->translit_model) {
      config.translit = true;
      data.translit = ReadFile<wseg::TransliterationModel>(
          paths->translit_model, wseg::ReadTranslitModel);
    }
    *out = new wseg_model(wseg::Segmenter::Build(config, data));
  });
}

wseg_status wseg_model_save(const wseg_model *model, const char *path) {
  return Guard([&] {
    Require(model, "model");
    Require(path, "path");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw wseg::IoError(std::string("cannot write '") + path + "'");
    wseg::SaveSegmenter(model->segmenter, out);
    out.close();
    if (!out) throw wseg::IoError(std::string("failed writing '") + path + "'");
  });
}

wseg_status wseg_model_load(const char *path, wseg_model **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = nullptr;
    std::ifstream in = OpenInput(path);
    *out = new wseg_model(wseg::LoadSegmenter(in, path));
  });
}

void wseg_model_free(wseg_model *model) { delete model; }

wseg_status wseg_segment(const wseg_model *model, wseg_algorithm algorithm,
                         const char *sentence, wseg_result **out) {
  return Guard([&] {
    Require(model, "model");
    Require(sentence, "sentence");
    Require(out, "out");
    *out = nullptr;
    auto result = std::make_unique<wseg_result>();
    result->segmentation = Run(model->segmenter, algorithm, sentence);
    for (const wseg::Word &w : result->segmentation.words)
      result->pronunciations.push_back(wseg::Join(w.pronunciation, " "));
    *out = result.release();
  });
}

size_t wseg_result_size(const wseg_result *result) {
  return result ? result->segmentation.words.size() : 0;
}

double wseg_result_total_cost(const wseg_result *result) {
  return result ? result->segmentation.total_cost : 0.0;
}

wseg_status wseg_result_word(const wseg_result *result, size_t index,
                             wseg_word *out) {
  return Guard([&] {
    Require(result, "result");
    Require(out, "out");
    if (index >= result->segmentation.words.size())
      throw wseg::ArgumentError("word index out of range");
    const wseg::Word &w = result->segmentation.words[index];
    out->surface = w.surface.c_str();
    out->category = w.category.c_str();
    out->pronunciation = result->pronunciations[index].c_str();
    out->affix = w.affix.c_str();
    out->cost = w.cost;
    out->start = w.start;
    out->end = w.end;
  });
}

void wseg_result_free(wseg_result *result) { delete result; }

wseg_status wseg_segment_text(const wseg_model *model, wseg_algorithm algorithm,
                              const char *format, const char *text,
                              unsigned jobs, char **out) {
  return Guard([&] {
    Require(model, "model");
    Require(format, "format");
    Require(text, "text");
    Require(out, "out");
    *out = nullptr;
    const wseg::OutputFormat fmt = wseg::ParseOutputFormat(format);
    const std::vector<std::string> lines = SplitLines(text);
    std::vector<std::string> rendered(lines.size());
    std::vector<std::string> errors(lines.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next++; i < lines.size(); i = next++) {
        try {
          if (lines[i].empty()) {
            rendered[i] = fmt == wseg::OutputFormat::kSpans ? "" : "\n";
            continue;
          }
          rendered[i] = wseg::FormatSegmentation(
              Run(model->segmenter, algorithm, lines[i]), fmt, i);
        } catch (const std::exception &e) {
          errors[i] = e.what();
        }
      }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, 64));
    if (n == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
      for (std::thread &t : pool) t.join();
    }
    std::string all;
    for (size_t i = 0; i < lines.size(); ++i) {
      if (!errors[i].empty())
        throw wseg::ValidationError("line " + std::to_string(i + 1) + ": " +
                                    errors[i]);
      all += rendered[i];
    }
    *out = Dup(all);
  });
}

wseg_status wseg_name_train(const char *counts_tsv, const char *counts_name,
                            const char *radicals_tsv, const char *radicals_name,
                            const wseg_settings *settings, char **out) {
  return Guard([&] {
    Require(counts_tsv, "counts");
    Require(radicals_tsv, "radicals");
    Require(out, "out");
    *out = nullptr;
    const wseg::Settings base = settings ? settings->settings : wseg::Settings();
    std::istringstream counts_in(counts_tsv), radicals_in(radicals_tsv);
    wseg::NameCounts counts = wseg::ReadNameCountsTsv(
        counts_in, counts_name ? counts_name : "counts");
    auto radicals = wseg::ReadRadicalMapTsv(
        radicals_in, radicals_name ? radicals_name : "radicals");
    wseg::NameModel model = wseg::TrainNameModel(counts, radicals, base.names);
    std::ostringstream os;
    wseg::WriteNameModel(model, os);
    *out = Dup(os.str());
  });
}

wseg_status wseg_translit_train(const char *names_text, const char *names_name,
                                const wseg_settings *settings, char **out) {
  return Guard([&] {
    Require(names_text, "names");
    Require(out, "out");
    *out = nullptr;
    const wseg::Settings base = settings ? settings->settings : wseg::Settings();
    std::istringstream in(names_text);
    auto names = wseg::ReadTranslitNames(in, names_name ? names_name : "names");
    std::ostringstream os;
    wseg::WriteTranslitModel(wseg::TrainTranslit(names, base.p_tn), os);
    *out = Dup(os.str());
  });
}

wseg_status wseg_eval_judges(const char *const *contents, const char *const *ids,
                             size_t count, char **similarity_csv,
                             char **distance_csv) {
  return Guard([&] {
    Require(contents, "contents");
    Require(ids, "ids");
    Require(similarity_csv, "similarity_csv");
    *similarity_csv = nullptr;
    if (distance_csv) *distance_csv = nullptr;
    if (count == 0) throw wseg::ArgumentError("no judge files");
    wseg::JudgedCorpus corpus;
    for (size_t i = 0; i < count; ++i) {
      Require(contents[i], "judge contents");
      Require(ids[i], "judge id");
      std::istringstream in(contents[i]);
      corpus.AddJudge(ids[i], wseg::ReadJudgeLines(in), ids[i]);
    }
    wseg::SimilarityMatrix sm = wseg::ComputeSimilarityMatrix(corpus);
    std::string sim = wseg::MatrixCsv(sm.ids, sm.values);
    std::string dist =
        wseg::MatrixCsv(sm.ids, wseg::DistanceFromSimilarity(sm.values));
    *similarity_csv = Dup(sim);
    if (distance_csv) *distance_csv = Dup(dist);
  });
}

wseg_status wseg_eval_names(const char *system_tsv, const char *gold_tsv,
                            char **report) {
  return Guard([&] {
    Require(system_tsv, "system");
    Require(gold_tsv, "gold");
    Require(report, "report");
    *report = nullptr;
    std::vector<wseg::Span> system;
    for (wseg::Span &s : SpansFrom(system_tsv, "system"))
      if (s.tag == wseg::kNameCategory) system.push_back(std::move(s));
    *report = Dup(NameReport(wseg::NameIdScore(system, SpansFrom(gold_tsv, "gold"))));
  });
}

wseg_status wseg_eval_affixes(const char *system_tsv, const char *gold_tsv,
                              char **report) {
  return Guard([&] {
    Require(system_tsv, "system");
    Require(gold_tsv, "gold");
    Require(report, "report");
    *report = nullptr;
    std::vector<wseg::Span> gold = SpansFrom(gold_tsv, "gold");
    std::set<std::string> affixes;
    for (const wseg::Span &s : gold) affixes.insert(s.tag);
    // Only tags that occur in the gold file are affixes; other system
    // spans are ordinary words.
    std::vector<wseg::Span> system;
    for (wseg::Span &s : SpansFrom(system_tsv, "system"))
      if (affixes.count(s.tag)) system.push_back(std::move(s));
    *report = Dup(wseg::AffixReport(wseg::AffixScore(system, gold)));
  });
}

wseg_status wseg_mds(const char *distance_csv, size_t k, char **coordinates_csv,
                     char **svg, int *truncated) {
  return Guard([&] {
    Require(distance_csv, "distance_csv");
    Require(coordinates_csv, "coordinates_csv");
    *coordinates_csv = nullptr;
    if (svg) *svg = nullptr;
    if (k == 0) throw wseg::ArgumentError("k must be positive");
    std::istringstream in(distance_csv);
    std::vector<std::string> ids;
    wseg::Matrix d = wseg::ReadMatrixCsv(in, "distances", &ids);
    wseg::MdsEmbedding e = wseg::ClassicalMds(d, k);
    std::string coords = wseg::MdsCsv(ids, e);
    std::string picture = wseg::MdsSvg(ids, e);
    *coordinates_csv = Dup(coords);
    if (svg) *svg = Dup(picture);
    if (truncated) *truncated = e.truncated ? 1 : 0;
  });
}

}  // extern "C"
