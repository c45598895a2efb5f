// eval.cc
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

#include "wseg/eval.h"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "wseg/error.h"
#include "wseg/utf8.h"
#include "wseg/wfst.h"

namespace wseg {

SentenceWords ParseJudgedLine(const std::string &line, std::string *surface) {
  SentenceWords words;
  surface->clear();
  size_t pos = 0;
  for (const std::string &word : SplitFields(line, '|')) {
    const size_t n = SplitChars(word).size();
    if (n == 0) throw ValidationError("empty word in judged line '" + line + "'");
    words.emplace_back(pos, pos + n);
    pos += n;
    *surface += word;
  }
  return words;
}

std::vector<std::string> ReadJudgeLines(std::istream &in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.emplace_back(StripCr(line));
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

void JudgedCorpus::AddJudge(const std::string &id,
                            const std::vector<std::string> &lines,
                            const std::string &source) {
  if (segmentations.count(id))
    throw ValidationError(source + ": duplicate judge id '" + id + "'");
  const bool first = ids.empty();
  if (!first && lines.size() != sentences.size())
    throw ValidationError(source + ": " + std::to_string(lines.size()) +
                          " sentences, expected " +
                          std::to_string(sentences.size()));
  std::vector<SentenceWords> judged;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string surface;
    try {
      judged.push_back(ParseJudgedLine(lines[i], &surface));
    } catch (const ValidationError &err) {
      throw ValidationError(Where(source, i + 1) + err.what());
    }
    if (first) {
      sentences.push_back(surface);
    } else if (surface != sentences[i]) {
      throw ValidationError(Where(source, i + 1) +
                            "sentence differs from the first judge's");
    }
  }
  ids.push_back(id);
  segmentations.emplace(id, std::move(judged));
}

namespace {

void CheckTiling(const SentenceWords &words, size_t length, size_t sentence) {
  size_t pos = 0;
  for (const Interval &w : words) {
    if (w.first != pos || w.second <= w.first)
      throw ValidationError("sentence " + std::to_string(sentence) +
                            ": words do not tile the sentence");
    pos = w.second;
  }
  if (pos != length)
    throw ValidationError("sentence " + std::to_string(sentence) +
                          ": words do not cover the sentence");
}

std::optional<double> Rate(size_t num, size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

PrecisionRecall WordPrecisionRecall(const std::vector<SentenceWords> &test,
                                    const std::vector<SentenceWords> &standard,
                                    const std::vector<size_t> &lengths) {
  if (test.size() != lengths.size() || standard.size() != lengths.size())
    throw ValidationError("precision/recall: sentence counts differ");
  PrecisionRecall pr;
  for (size_t i = 0; i < lengths.size(); ++i) {
    CheckTiling(test[i], lengths[i], i);
    CheckTiling(standard[i], lengths[i], i);
    std::set<Interval> gold(standard[i].begin(), standard[i].end());
    for (const Interval &w : test[i]) pr.matches += gold.count(w);
    pr.test_words += test[i].size();
    pr.standard_words += standard[i].size();
  }
  pr.precision = Rate(pr.matches, pr.test_words).value_or(1.0);
  pr.recall = Rate(pr.matches, pr.standard_words).value_or(1.0);
  return pr;
}

double Similarity(const std::vector<SentenceWords> &a,
                  const std::vector<SentenceWords> &b,
                  const std::vector<size_t> &lengths) {
  PrecisionRecall pr = WordPrecisionRecall(a, b, lengths);
  return (pr.precision + pr.recall) / 2.0;
}

SimilarityMatrix ComputeSimilarityMatrix(const JudgedCorpus &corpus) {
  std::vector<size_t> lengths;
  for (const std::string &s : corpus.sentences)
    lengths.push_back(SplitChars(s).size());
  SimilarityMatrix sm;
  sm.ids = corpus.ids;
  const size_t n = sm.ids.size();
  sm.values.assign(n, std::vector<double>(n, 1.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double s = Similarity(corpus.segmentations.at(sm.ids[i]),
                                  corpus.segmentations.at(sm.ids[j]), lengths);
      sm.values[i][j] = sm.values[j][i] = s;
    }
  }
  return sm;
}

Matrix DistanceFromSimilarity(const Matrix &similarity) {
  Matrix d = similarity;
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = 0; j < d[i].size(); ++j) d[i][j] = i == j ? 0.0 : 1.0 - d[i][j];
  return d;
}

std::string MatrixCsv(const std::vector<std::string> &ids, const Matrix &m) {
  std::string out = "id";
  for (const std::string &id : ids) out += "," + id;
  out += '\n';
  char buf[32];
  for (size_t i = 0; i < ids.size(); ++i) {
    out += ids[i];
    for (double v : m[i]) {
      std::snprintf(buf, sizeof(buf), ",%.4f", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Matrix ReadMatrixCsv(std::istream &in, const std::string &name,
                     std::vector<std::string> *ids) {
  ids->clear();
  Matrix m;
  std::string line;
  size_t line_no = 0;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    const std::string where = Where(name, line_no);
    std::vector<std::string> f = SplitFields(view, ',');
    if (n == 0) {
      if (f.size() < 2) throw ValidationError(where + "empty matrix header");
      n = f.size() - 1;
      ids->assign(f.begin() + 1, f.end());
      continue;
    }
    if (f.size() != n + 1) throw ValidationError(where + "wrong column count");
    if (m.size() == n) throw ValidationError(where + "too many rows");
    if (f[0] != (*ids)[m.size()])
      throw ValidationError(where + "row id '" + f[0] + "' does not match header");
    std::vector<double> row;
    for (size_t j = 1; j <= n; ++j) {
      double v = 0;
      auto r = std::from_chars(f[j].data(), f[j].data() + f[j].size(), v);
      if (r.ec != std::errc() || r.ptr != f[j].data() + f[j].size())
        throw ValidationError(where + "bad number '" + f[j] + "'");
      row.push_back(v);
    }
    m.push_back(std::move(row));
  }
  if (n == 0 || m.size() != n)
    throw ValidationError(name + ": matrix has " + std::to_string(m.size()) +
                          " rows, expected " + std::to_string(n));
  return m;
}

MdsEmbedding ClassicalMds(const Matrix &distances, size_t k) {
  const size_t n = distances.size();
  if (n == 0) throw ValidationError("mds: empty distance matrix");
  Eigen::MatrixXd d2(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (distances[i].size() != n)
      throw ValidationError("mds: distance matrix is not square");
    for (size_t j = 0; j < n; ++j) {
      const double v = distances[i][j];
      if (!std::isfinite(v) || v < 0.0)
        throw ValidationError("mds: distances must be finite and non-negative");
      d2(i, j) = v * v;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (distances[i][i] != 0.0)
      throw ValidationError("mds: diagonal must be zero");
    for (size_t j = 0; j < i; ++j)
      if (std::abs(distances[i][j] - distances[j][i]) > 1e-12)
        throw ValidationError("mds: distance matrix is not symmetric");
  }
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd b = -0.5 * centering * d2 * centering;
  b = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw ValidationError("mds: eigen-decomposition failed");
  const Eigen::VectorXd &values = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd &vectors = solver.eigenvectors();

  // Eigenvalues below this are rounding noise around zero.
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double tol = 1e-10 * scale;
  double positive_sum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values(i) > tol) positive_sum += values(i);

  MdsEmbedding e;
  e.coordinates.assign(n, {});
  for (Eigen::Index i = values.size() - 1; i >= 0 && e.eigenvalues.size() < k;
       --i) {
    const double lambda = values(i);
    if (!(lambda > tol)) break;
    Eigen::VectorXd v = vectors.col(i);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    const double root = std::sqrt(lambda);
    for (size_t p = 0; p < n; ++p)
      e.coordinates[p].push_back(v(static_cast<Eigen::Index>(p)) * root);
    e.eigenvalues.push_back(lambda);
    e.explained.push_back(lambda / positive_sum * 100.0);
  }
  e.truncated = e.eigenvalues.size() < k;
  return e;
}

std::string MdsCsv(const std::vector<std::string> &ids, const MdsEmbedding &e) {
  std::string out = "id";
  char buf[64];
  for (size_t d = 0; d < e.explained.size(); ++d) {
    std::snprintf(buf, sizeof(buf), ",dim%zu (%.1f%%)", d + 1, e.explained[d]);
    out += buf;
  }
  out += '\n';
  for (size_t p = 0; p < ids.size(); ++p) {
    out += ids[p];
    for (double c : e.coordinates[p]) {
      std::snprintf(buf, sizeof(buf), ",%.6f", c);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string XmlEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string MdsSvg(const std::vector<std::string> &ids, const MdsEmbedding &e) {
  constexpr double kSize = 400.0, kMargin = 50.0;
  auto coord = [&](size_t p, size_t d) {
    return d < e.coordinates[p].size() ? e.coordinates[p][d] : 0.0;
  };
  double lo[2] = {0, 0}, hi[2] = {0, 0};
  for (size_t p = 0; p < ids.size(); ++p) {
    for (size_t d = 0; d < 2; ++d) {
      lo[d] = std::min(lo[d], coord(p, d));
      hi[d] = std::max(hi[d], coord(p, d));
    }
  }
  auto project = [&](double v, size_t d) {
    const double span = hi[d] - lo[d] > 0 ? hi[d] - lo[d] : 1.0;
    const double t = (v - lo[d]) / span;
    return d == 0 ? kMargin + t * kSize : kMargin + (1.0 - t) * kSize;
  };
  auto axis_label = [&](size_t d) {
    char buf[64];
    if (d < e.explained.size())
      std::snprintf(buf, sizeof(buf), "Dimension %zu (%.0f%%)", d + 1,
                    e.explained[d]);
    else
      std::snprintf(buf, sizeof(buf), "Dimension %zu (n/a)", d + 1);
    return std::string(buf);
  };
  const double total = kSize + 2 * kMargin;
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" font-family=\"sans-serif\" font-size=\"12\">\n",
                total, total);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                kMargin, kMargin, kSize, kSize);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.0f\" y=\"%.0f\" text-anchor=\"middle\">%s</text>\n",
                total / 2, total - 15, axis_label(0).c_str());
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"15\" y=\"%.0f\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 15 %.0f)\">%s</text>\n",
                total / 2, total / 2, axis_label(1).c_str());
  out += buf;
  for (size_t p = 0; p < ids.size(); ++p) {
    const double x = project(coord(p, 0), 0), y = project(coord(p, 1), 1);
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\"/>\n"
                  "<text x=\"%.2f\" y=\"%.2f\">",
                  x, y, x + 5, y - 5);
    out += buf;
    out += XmlEscape(ids[p]) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

bool Span::operator<(const Span &o) const {
  return std::tie(sentence, start, end, tag) <
         std::tie(o.sentence, o.start, o.end, o.tag);
}

bool Span::operator==(const Span &o) const {
  return sentence == o.sentence && start == o.start && end == o.end &&
         tag == o.tag;
}

std::vector<Span> ReadSpansTsv(std::istream &in, const std::string &name) {
  std::vector<Span> spans;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    const std::string where = Where(name, line_no);
    std::vector<std::string> f = SplitFields(view, '\t');
    if (f.size() != 4) throw ValidationError(where + "expected 4 fields");
    size_t v[3];
    for (int i = 0; i < 3; ++i) {
      auto r = std::from_chars(f[i].data(), f[i].data() + f[i].size(), v[i]);
      if (r.ec != std::errc() || r.ptr != f[i].data() + f[i].size())
        throw ValidationError(where + "bad integer '" + f[i] + "'");
    }
    if (v[2] <= v[1]) throw ValidationError(where + "empty or reversed span");
    if (f[3].empty()) throw ValidationError(where + "empty tag");
    spans.push_back(Span{v[0], v[1], v[2], f[3]});
  }
  return spans;
}

namespace {

using SpanKey = std::tuple<size_t, size_t, size_t>;

void CheckNoOverlap(std::vector<SpanKey> gold) {
  std::sort(gold.begin(), gold.end());
  for (size_t i = 1; i < gold.size(); ++i) {
    const auto &[s0, b0, e0] = gold[i - 1];
    const auto &[s1, b1, e1] = gold[i];
    if (s0 == s1 && b1 < e0)
      throw ValidationError("gold spans overlap in sentence " +
                            std::to_string(s1) + " at " + std::to_string(b1));
  }
}

SpanScore ScoreKeys(const std::vector<SpanKey> &system,
                    const std::vector<SpanKey> &gold) {
  std::set<SpanKey> sys(system.begin(), system.end());
  std::set<SpanKey> ref(gold.begin(), gold.end());
  SpanScore s;
  s.found = sys.size();
  for (const SpanKey &k : sys) s.correct += ref.count(k);
  s.missed = ref.size() - s.correct;
  s.precision = Rate(s.correct, s.found);
  s.recall = Rate(s.correct, ref.size());
  return s;
}

std::vector<SpanKey> Keys(const std::vector<Span> &spans) {
  std::vector<SpanKey> keys;
  for (const Span &s : spans) keys.emplace_back(s.sentence, s.start, s.end);
  return keys;
}

}  // namespace

SpanScore NameIdScore(const std::vector<Span> &system,
                      const std::vector<Span> &gold) {
  std::vector<SpanKey> gold_keys = Keys(gold);
  CheckNoOverlap(gold_keys);
  return ScoreKeys(Keys(system), gold_keys);
}

std::map<std::string, SpanScore> AffixScore(const std::vector<Span> &system,
                                            const std::vector<Span> &gold) {
  CheckNoOverlap(Keys(gold));
  std::map<std::string, std::vector<SpanKey>> sys, ref;
  for (const Span &s : system) sys[s.tag].emplace_back(s.sentence, s.start, s.end);
  for (const Span &s : gold) ref[s.tag].emplace_back(s.sentence, s.start, s.end);
  std::map<std::string, SpanScore> out;
  for (const auto &[tag, keys] : ref) out[tag] = ScoreKeys(sys[tag], keys);
  for (const auto &[tag, keys] : sys)
    if (!out.count(tag)) out[tag] = ScoreKeys(keys, {});
  return out;
}

std::string FormatPercent(const std::optional<double> &rate) {
  if (!rate) return "—";
  return std::to_string(static_cast<long>(std::round(*rate * 100.0))) + "%";
}

std::string AffixReport(const std::map<std::string, SpanScore> &scores) {
  std::string out = "affix\tfound\tcorrect (prec.)\tmissed (rec.)\n";
  for (const auto &[tag, s] : scores) {
    out += tag + "\t" + std::to_string(s.found) + "\t" +
           std::to_string(s.correct) + " (" + FormatPercent(s.precision) +
           ")\t" + std::to_string(s.missed) + " (" + FormatPercent(s.recall) +
           ")\n";
  }
  return out;
}

}  // namespace wseg
