// eval.h
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
// \file
// Agreement between segmentations: pooled word precision/recall, the
// similarity matrix, classical MDS, and span scoring for names and affixes.

#ifndef WSEG_EVAL_H_
#define WSEG_EVAL_H_

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wseg {

// Half-open character interval.
using Interval = std::pair<size_t, size_t>;
using SentenceWords = std::vector<Interval>;

struct JudgedCorpus {
  std::vector<std::string> sentences;
  std::vector<std::string> ids;  // judge ids in insertion order
  std::map<std::string, std::vector<SentenceWords>> segmentations;

  // Throws ValidationError if the id exists, the sentence count differs, or
  // the surfaces disagree with the corpus sentences.
  void AddJudge(const std::string &id, const std::vector<std::string> &lines,
                const std::string &source);
};

// "a|b|c" into tiled intervals; also returns the surface.
SentenceWords ParseJudgedLine(const std::string &line, std::string *surface);
std::vector<std::string> ReadJudgeLines(std::istream &in);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  size_t matches = 0;
  size_t test_words = 0;
  size_t standard_words = 0;
};

// Counts pooled over all sentences. `lengths` gives each sentence length in
// characters; both sides must tile it.
PrecisionRecall WordPrecisionRecall(const std::vector<SentenceWords> &test,
                                    const std::vector<SentenceWords> &standard,
                                    const std::vector<size_t> &lengths);

double Similarity(const std::vector<SentenceWords> &a,
                  const std::vector<SentenceWords> &b,
                  const std::vector<size_t> &lengths);

using Matrix = std::vector<std::vector<double>>;

struct SimilarityMatrix {
  std::vector<std::string> ids;
  Matrix values;
};

SimilarityMatrix ComputeSimilarityMatrix(const JudgedCorpus &corpus);
Matrix DistanceFromSimilarity(const Matrix &similarity);
std::string MatrixCsv(const std::vector<std::string> &ids, const Matrix &m);
// Inverse of MatrixCsv.
Matrix ReadMatrixCsv(std::istream &in, const std::string &name,
                     std::vector<std::string> *ids);

struct MdsEmbedding {
  std::vector<std::vector<double>> coordinates;  // per point, one per dim
  std::vector<double> eigenvalues;               // of the kept dimensions
  std::vector<double> explained;                 // percent, non-increasing
  bool truncated = false;  // fewer than k positive eigenvalues
};

// Classical metric MDS. Throws ValidationError for a non-square,
// asymmetric or nonzero-diagonal input.
MdsEmbedding ClassicalMds(const Matrix &distances, size_t k = 2);

std::string MdsCsv(const std::vector<std::string> &ids, const MdsEmbedding &e);
std::string MdsSvg(const std::vector<std::string> &ids, const MdsEmbedding &e);

struct Span {
  size_t sentence = 0;
  size_t start = 0;
  size_t end = 0;
  std::string tag;

  bool operator<(const Span &o) const;
  bool operator==(const Span &o) const;
};

// "sentence<TAB>start<TAB>end<TAB>tag" lines.
std::vector<Span> ReadSpansTsv(std::istream &in, const std::string &name);

struct SpanScore {
  size_t found = 0;
  size_t correct = 0;
  size_t missed = 0;
  std::optional<double> precision;  // empty when undefined
  std::optional<double> recall;
};

// Exact-span matching; tags are ignored. Throws ValidationError when gold
// spans overlap within a sentence.
SpanScore NameIdScore(const std::vector<Span> &system,
                      const std::vector<Span> &gold);

// Per affix tag, scored as NameIdScore within the tag.
std::map<std::string, SpanScore> AffixScore(const std::vector<Span> &system,
                                            const std::vector<Span> &gold);

// Rounded percentage or "—" when undefined.
std::string FormatPercent(const std::optional<double> &rate);
// "affix<TAB>found<TAB>correct (prec%)<TAB>missed (rec%)" with a header.
std::string AffixReport(const std::map<std::string, SpanScore> &scores);

}  // namespace wseg

#endif  // WSEG_EVAL_H_
