// wseg_cli.cc
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
// Command-line front end over the C interface.
//
// Exit status: 0 on success, 1 on usage or validation errors, 2 on I/O
// errors. Diagnostics go to stderr.

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wseg/wseg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void IoFailure(const std::string &message) {
  throw CliFailure{kExitIo, message};
}

void Check(wseg_status status) {
  if (status == WSEG_OK) return;
  throw CliFailure{status == WSEG_ERR_IO ? kExitIo : kExitValidation,
                   wseg_last_error()};
}

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString &) = delete;
  LibString &operator=(const LibString &) = delete;
  ~LibString() { wseg_string_free(s_); }
  char **out() { return &s_; }
  std::string str() const { return s_ ? s_ : ""; }

 private:
  char *s_ = nullptr;
};

void CheckReadable(const std::string &path) {
  if (path == "-") return;
  std::ifstream in(path, std::ios::binary);
  if (!in) IoFailure("cannot read '" + path + "'");
}

void CheckWritable(const std::string &path) {
  if (path.empty() || path == "-") return;
  std::filesystem::path p(path);
  std::filesystem::path dir = p.has_parent_path() ? p.parent_path() : ".";
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    IoFailure("cannot write '" + path + "': no such directory");
  if (std::filesystem::is_directory(p, ec))
    IoFailure("cannot write '" + path + "': is a directory");
}

std::string Slurp(const std::string &path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) IoFailure("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void Emit(const std::string &path, const std::string &data) {
  if (path.empty() || path == "-") {
    std::fwrite(data.data(), 1, data.size(), stdout);
    std::fflush(stdout);
    if (std::ferror(stdout)) IoFailure("failed writing standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) IoFailure("cannot write '" + path + "'");
  out << data;
  out.close();
  if (!out) IoFailure("failed writing '" + path + "'");
}

class Settings {
 public:
  Settings() { Check(wseg_settings_new(&s_)); }
  Settings(const Settings &) = delete;
  Settings &operator=(const Settings &) = delete;
  ~Settings() { wseg_settings_free(s_); }

  void Apply(const std::string &config, const std::vector<std::string> &sets) {
    if (!config.empty()) Check(wseg_settings_load(s_, config.c_str()));
    for (const std::string &kv : sets) {
      const size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw CliFailure{kExitValidation, "--set expects key=value, got '" + kv + "'"};
      Check(wseg_settings_set(s_, kv.substr(0, eq).c_str(),
                              kv.substr(eq + 1).c_str()));
    }
  }
  const wseg_settings *get() const { return s_; }

 private:
  wseg_settings *s_ = nullptr;
};

class Model {
 public:
  Model() = default;
  Model(const Model &) = delete;
  Model &operator=(const Model &) = delete;
  ~Model() { wseg_model_free(m_); }
  wseg_model **out() { return &m_; }
  const wseg_model *get() const { return m_; }

 private:
  wseg_model *m_ = nullptr;
};

struct ModelArgs {
  std::string cache;
  std::string lexicon, fallback, affixes, seen, names, translit;
  std::string config;
  std::vector<std::string> sets;

  void Register(CLI::App *cmd, bool allow_cache) {
    if (allow_cache)
      cmd->add_option("--model", cache, "Compiled model cache (WSEG1)");
    cmd->add_option("--lexicon", lexicon, "Lexicon TSV");
    cmd->add_option("--fallback", fallback, "Single-hanzi fallback TSV");
    cmd->add_option("--affixes", affixes, "Affix rules TSV (enables morphology)");
    cmd->add_option("--seen", seen, "Seen derived words TSV");
    cmd->add_option("--names", names, "Name model (enables personal names)");
    cmd->add_option("--translit", translit,
                    "Transliteration model (enables foreign names)");
    cmd->add_option("--config", config, "key=value settings file");
    cmd->add_option("--set", sets, "Override one setting, key=value (repeatable)")
      ->allow_extra_args(false);
  }

  void Load(Model *model) const {
    if (!cache.empty()) {
      if (!lexicon.empty() || !fallback.empty())
        throw CliFailure{kExitValidation,
                         "--model cannot be combined with --lexicon/--fallback"};
      CheckReadable(cache);
      Check(wseg_model_load(cache.c_str(), model->out()));
      return;
    }
    if (lexicon.empty() || fallback.empty())
      throw CliFailure{kExitValidation,
                       "either --model or both --lexicon and --fallback are required"};
    for (const std::string *p :
         {&lexicon, &fallback, &affixes, &seen, &names, &translit, &config})
      if (!p->empty()) CheckReadable(*p);
    Settings settings;
    settings.Apply(config, sets);
    wseg_model_paths paths{};
    auto opt = [](const std::string &s) { return s.empty() ? nullptr : s.c_str(); };
    paths.lexicon = lexicon.c_str();
    paths.fallback = fallback.c_str();
    paths.affix_rules = opt(affixes);
    paths.seen_derived = opt(seen);
    paths.name_model = opt(names);
    paths.translit_model = opt(translit);
    Check(wseg_model_build(&paths, settings.get(), model->out()));
  }
};

std::string DefaultId(const std::string &path) {
  if (path == "-") return "stdin";
  return std::filesystem::path(path).stem().string();
}

int Run(int argc, char **argv) {
  CLI::App app{"Stochastic finite-state word segmentation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wseg_version());

  std::string output = "-";
  std::string input = "-";
  std::string format = "plain";
  unsigned jobs = 1;

  ModelArgs compile_args;
  auto *compile = app.add_subcommand("compile", "Compile a model to a WSEG1 cache");
  compile_args.Register(compile, false);
  compile->add_option("-o,--output", output, "Cache file")->required();

  ModelArgs segment_args;
  auto *segment = app.add_subcommand("segment", "Segment text, one sentence per line");
  segment_args.Register(segment, true);
  segment->add_option("input", input, "Input text or - for stdin");
  segment->add_option("--format", format, "plain | tagged | tsv | spans")
      ->check(CLI::IsMember({"plain", "tagged", "tsv", "spans"}));
  segment->add_option("-o,--output", output, "Output file");
  segment->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 64u));

  ModelArgs baseline_args;
  std::string algo = "gr";
  auto *baseline = app.add_subcommand("baseline", "Greedy or anti-greedy matching");
  baseline_args.Register(baseline, true);
  baseline->add_option("--algo", algo, "gr | ag")->check(CLI::IsMember({"gr", "ag"}));
  baseline->add_option("input", input, "Input text or - for stdin");
  baseline->add_option("--format", format, "plain | tagged | tsv | spans")
      ->check(CLI::IsMember({"plain", "tagged", "tsv", "spans"}));
  baseline->add_option("-o,--output", output, "Output file");
  baseline->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 64u));

  std::string counts, radicals, config;
  std::vector<std::string> sets;
  auto *name_train = app.add_subcommand("name-train", "Estimate a personal-name model");
  name_train->add_option("--counts", counts, "Name counts TSV")->required();
  name_train->add_option("--radicals", radicals, "Radical map TSV")->required();
  name_train->add_option("--config", config, "key=value settings file");
  name_train->add_option("--set", sets, "Override one setting, key=value (repeatable)")
      ->allow_extra_args(false);
  name_train->add_option("-o,--output", output, "Model file");

  std::string names_list;
  auto *translit_train =
      app.add_subcommand("translit-train", "Estimate a transliteration model");
  translit_train->add_option("--names", names_list, "One transliterated name per line")
      ->required();
  translit_train->add_option("--config", config, "key=value settings file");
  translit_train->add_option("--set", sets, "Override one setting, key=value (repeatable)")
      ->allow_extra_args(false);
  translit_train->add_option("-o,--output", output, "Model file");

  std::vector<std::string> judge_files, judge_ids;
  std::string distances_out;
  auto *eval_judges =
      app.add_subcommand("eval-judges", "Similarity matrix between judges");
  eval_judges->add_option("judges", judge_files, "Judge files, a|b|c per line")
      ->required();
  eval_judges->add_option("--ids", judge_ids, "Judge ids, comma-separated (default: file stems)")
      ->delimiter(',')
      ->allow_extra_args(false);
  eval_judges->add_option("-o,--output", output, "Similarity CSV");
  eval_judges->add_option("--distances", distances_out, "Distance CSV (1 - s)");

  std::string system_spans, gold_spans;
  auto *eval_names = app.add_subcommand("eval-names", "Score personal-name spans");
  eval_names->add_option("--system", system_spans, "System spans TSV")->required();
  eval_names->add_option("--gold", gold_spans, "Gold spans TSV")->required();
  eval_names->add_option("-o,--output", output, "Report file");

  auto *eval_affixes = app.add_subcommand("eval-affixes", "Score derived words per affix");
  eval_affixes->add_option("--system", system_spans, "System spans TSV")->required();
  eval_affixes->add_option("--gold", gold_spans, "Gold spans TSV")->required();
  eval_affixes->add_option("-o,--output", output, "Report file");

  std::string distance_file, svg_out;
  size_t dims = 2;
  auto *mds = app.add_subcommand("mds", "Classical MDS of a distance matrix");
  mds->add_option("distances", distance_file, "Distance CSV")->required();
  mds->add_option("-k,--dims", dims, "Dimensions")->check(CLI::PositiveNumber);
  mds->add_option("-o,--output", output, "Coordinates CSV");
  mds->add_option("--svg", svg_out, "Scatter plot SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  CheckWritable(output);

  if (compile->parsed()) {
    if (output == "-")
      throw CliFailure{kExitValidation, "compile needs an output file"};
    Model model;
    compile_args.Load(&model);
    Check(wseg_model_save(model.get(), output.c_str()));
    return kExitOk;
  }

  if (segment->parsed() || baseline->parsed()) {
    const bool is_segment = segment->parsed();
    CheckReadable(input);
    Model model;
    (is_segment ? segment_args : baseline_args).Load(&model);
    const wseg_algorithm algorithm =
        is_segment ? WSEG_ALGO_ST : (algo == "gr" ? WSEG_ALGO_GR : WSEG_ALGO_AG);
    const std::string text = Slurp(input);
    LibString out;
    Check(wseg_segment_text(model.get(), algorithm, format.c_str(), text.c_str(),
                            jobs, out.out()));
    Emit(output, out.str());
    return kExitOk;
  }

  if (name_train->parsed()) {
    CheckReadable(counts);
    CheckReadable(radicals);
    if (!config.empty()) CheckReadable(config);
    Settings settings;
    settings.Apply(config, sets);
    const std::string c = Slurp(counts), r = Slurp(radicals);
    LibString out;
    Check(wseg_name_train(c.c_str(), counts.c_str(), r.c_str(), radicals.c_str(),
                          settings.get(), out.out()));
    Emit(output, out.str());
    return kExitOk;
  }

  if (translit_train->parsed()) {
    CheckReadable(names_list);
    if (!config.empty()) CheckReadable(config);
    Settings settings;
    settings.Apply(config, sets);
    const std::string n = Slurp(names_list);
    LibString out;
    Check(wseg_translit_train(n.c_str(), names_list.c_str(), settings.get(),
                              out.out()));
    Emit(output, out.str());
    return kExitOk;
  }

  if (eval_judges->parsed()) {
    if (!judge_ids.empty() && judge_ids.size() != judge_files.size())
      throw CliFailure{kExitValidation, "--ids must name every judge file"};
    for (const std::string &f : judge_files) CheckReadable(f);
    CheckWritable(distances_out);
    std::vector<std::string> contents, ids;
    for (size_t i = 0; i < judge_files.size(); ++i) {
      contents.push_back(Slurp(judge_files[i]));
      std::string id = judge_ids.empty() ? DefaultId(judge_files[i]) : judge_ids[i];
      // Repeated files get distinct default ids: a, a.2, a.3, ...
      if (judge_ids.empty()) {
        const std::string stem = id;
        for (int n = 2; std::find(ids.begin(), ids.end(), id) != ids.end(); ++n)
          id = stem + "." + std::to_string(n);
      }
      ids.push_back(id);
    }
    std::vector<const char *> cp, ip;
    for (size_t i = 0; i < contents.size(); ++i) {
      cp.push_back(contents[i].c_str());
      ip.push_back(ids[i].c_str());
    }
    LibString sim, dist;
    Check(wseg_eval_judges(cp.data(), ip.data(), cp.size(), sim.out(), dist.out()));
    Emit(output, sim.str());
    if (!distances_out.empty()) Emit(distances_out, dist.str());
    return kExitOk;
  }

  if (eval_names->parsed() || eval_affixes->parsed()) {
    CheckReadable(system_spans);
    CheckReadable(gold_spans);
    const std::string s = Slurp(system_spans), g = Slurp(gold_spans);
    LibString report;
    Check(eval_names->parsed()
              ? wseg_eval_names(s.c_str(), g.c_str(), report.out())
              : wseg_eval_affixes(s.c_str(), g.c_str(), report.out()));
    Emit(output, report.str());
    return kExitOk;
  }

  if (mds->parsed()) {
    CheckReadable(distance_file);
    CheckWritable(svg_out);
    const std::string d = Slurp(distance_file);
    LibString coords, svg;
    int truncated = 0;
    Check(wseg_mds(d.c_str(), dims, coords.out(), svg.out(), &truncated));
    if (truncated)
      std::cerr << "warning: fewer than " << dims
                << " positive eigenvalues; emitting the available dimensions\n";
    Emit(output, coords.str());
    if (!svg_out.empty()) Emit(svg_out, svg.str());
    return kExitOk;
  }
  return kExitValidation;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return Run(argc, argv);
  } catch (const CliFailure &f) {
    std::cerr << "wseg: " << f.message << '\n';
    return f.code;
  } catch (const std::exception &e) {
    std::cerr << "wseg: " << e.what() << '\n';
    return kExitValidation;
  }
}
