// mds_oracle.h
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
// Planar point generators and a closed-form 2-D Procrustes fit, used to
// check embeddings without going through the eigensolver.

#ifndef WSEG_TESTS_MDS_ORACLE_H_
#define WSEG_TESTS_MDS_ORACLE_H_

#include <cmath>
#include <random>
#include <vector>

namespace wseg::testing {

using Points = std::vector<std::vector<double>>;

inline Points RandomPlanarPoints(std::mt19937_64 &rng, size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Points out(n, std::vector<double>(2));
  for (auto &p : out) {
    p[0] = u(rng);
    p[1] = u(rng);
  }
  return out;
}

inline std::vector<std::vector<double>> Distances(const Points &pts) {
  const size_t n = pts.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double s = 0;
      for (size_t k = 0; k < pts[i].size(); ++k) {
        const double t = pts[i][k] - pts[j][k];
        s += t * t;
      }
      d[i][j] = d[j][i] = std::sqrt(s);
    }
  }
  return d;
}

inline Points Centered(const Points &pts) {
  double mx = 0, my = 0;
  for (const auto &p : pts) {
    mx += p[0];
    my += p[1];
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  Points out = pts;
  for (auto &p : out) {
    p[0] -= mx;
    p[1] -= my;
  }
  return out;
}

// RMS distance between `b` and the best rotation or reflection of `a`,
// after centering both. Both must be 2-D.
inline double ProcrustesResidual(const Points &a_in, const Points &b_in) {
  if (a_in.size() != b_in.size() || a_in.empty()) return INFINITY;
  for (size_t i = 0; i < a_in.size(); ++i)
    if (a_in[i].size() != 2 || b_in[i].size() != 2) return INFINITY;
  const Points b = Centered(b_in);
  double best = INFINITY;
  for (int flip = 0; flip < 2; ++flip) {
    Points a = Centered(a_in);
    if (flip) for (auto &p : a) p[1] = -p[1];
    double sc = 0, ss = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      sc += a[i][0] * b[i][0] + a[i][1] * b[i][1];
      ss += a[i][0] * b[i][1] - a[i][1] * b[i][0];
    }
    const double th = std::atan2(ss, sc);
    const double c = std::cos(th), s = std::sin(th);
    double err = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      const double x = c * a[i][0] - s * a[i][1] - b[i][0];
      const double y = s * a[i][0] + c * a[i][1] - b[i][1];
      err += x * x + y * y;
    }
    best = std::min(best, std::sqrt(err / static_cast<double>(a.size())));
  }
  return best;
}

}  // namespace wseg::testing

#endif  // WSEG_TESTS_MDS_ORACLE_H_
