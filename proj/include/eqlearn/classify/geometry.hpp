#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eqlearn/classify/lp.hpp"

namespace eqlearn::classify {

using Point = std::vector<double>;

// Determinant by partial-pivot Gaussian elimination.
inline double determinant(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// True iff no d + 1 of the points are affinely dependent.
inline bool in_general_position(const std::vector<Point>& pts, std::size_t d, double tol = 1e-9) {
  const std::size_t n = pts.size();
  const std::size_t k = d + 1;
  if (n < k) {
    // Fewer than d + 1 points: require affine independence of all of them.
    if (n <= 1) return true;
    // Gram determinant of the difference vectors.
    std::vector<Point> diff;
    for (std::size_t i = 1; i < n; ++i) {
      Point v(d);
      for (std::size_t c = 0; c < d; ++c) v[c] = pts[i][c] - pts[0][c];
      diff.push_back(std::move(v));
    }
    std::vector<std::vector<double>> gram(diff.size(), std::vector<double>(diff.size()));
    for (std::size_t a = 0; a < diff.size(); ++a)
      for (std::size_t b = 0; b < diff.size(); ++b)
        for (std::size_t c = 0; c < d; ++c) gram[a][b] += diff[a][c] * diff[b][c];
    return std::abs(determinant(gram)) > tol;
  }
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<std::vector<double>> m(d, std::vector<double>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m[r][c] = pts[idx[r + 1]][c] - pts[idx[0]][c];
    if (std::abs(determinant(m)) <= tol) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct PointSet {
  std::size_t d = 0;
  std::vector<Point> points;
  bool general_position = false;

  std::size_t size() const { return points.size(); }

  static PointSet make(std::size_t d, std::vector<Point> pts) {
    if (d == 0) throw ConfigError("PointSet: dimension must be positive");
    for (const Point& p : pts)
      if (p.size() != d) throw ConfigError("PointSet: point has the wrong dimension");
    PointSet s{d, std::move(pts), false};
    s.general_position = in_general_position(s.points, d);
    return s;
  }
};

// One point per line as d whitespace-separated decimals.
inline PointSet read_points(std::istream& in, std::size_t d) {
  std::vector<Point> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    Point p;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        p.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("points file line " + std::to_string(lineno) + ": bad number '" + tok + "'");
      }
    }
    if (p.empty()) continue;
    if (p.size() != d)
      throw ConfigError("points file line " + std::to_string(lineno) + ": expected " + std::to_string(d) + " coordinates");
    pts.push_back(std::move(p));
  }
  return PointSet::make(d, std::move(pts));
}

inline PointSet read_points_file(const std::string& path, std::size_t d) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open points file '" + path + "'");
  return read_points(in, d);
}

// Affine classifier: label 1 iff normal . x + offset >= 0.
struct Hyperplane {
  std::vector<double> normal;
  double offset = 0.0;

  double value(const Point& x) const {
    double v = offset;
    for (std::size_t c = 0; c < normal.size(); ++c) v += normal[c] * x[c];
    return v;
  }
  int label(const Point& x) const { return value(x) >= 0.0 ? 1 : 0; }
};

struct Separation {
  Hyperplane plane;
  double margin = 0.0;
};

// Max-margin separator with P on the negative and Q on the positive side:
// maximise t subject to n.p + b <= -t, n.q + b >= t, |n_i| <= 1, t <= 1.
// Returns nothing when the best margin is not positive.
inline std::optional<Separation> separate(const std::vector<Point>& P, const std::vector<Point>& Q, std::size_t d,
                                          double min_margin = kLpTol) {
  // Variables: n+ (d), n- (d), b+, b-, t.
  LinearProgram lp;
  lp.vars = 2 * d + 3;
  lp.objective.assign(lp.vars, 0.0);
  lp.objective[2 * d + 2] = 1.0;
  auto row = [&](const Point& x, double sign) {
    std::vector<double> r(lp.vars, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
      r[c] = sign * x[c];
      r[d + c] = -sign * x[c];
    }
    r[2 * d] = sign;
    r[2 * d + 1] = -sign;
    r[2 * d + 2] = 1.0;
    return r;
  };
  // sign * (n.x + b) + t <= 0: sign = +1 for P, -1 for Q.
  for (const Point& p : P) lp.add(row(p, 1.0), Sense::le, 0.0);
  for (const Point& q : Q) lp.add(row(q, -1.0), Sense::le, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<double> r(lp.vars, 0.0);
    r[c] = 1.0;
    r[d + c] = -1.0;
    lp.add(r, Sense::le, 1.0);
    lp.add(r, Sense::ge, -1.0);
  }
  {
    std::vector<double> r(lp.vars, 0.0);
    r[2 * d + 2] = 1.0;
    lp.add(r, Sense::le, 1.0);
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::optimal || res.value <= min_margin) return std::nullopt;
  Separation s;
  s.plane.normal.resize(d);
  for (std::size_t c = 0; c < d; ++c) s.plane.normal[c] = res.x[c] - res.x[d + c];
  s.plane.offset = res.x[2 * d] - res.x[2 * d + 1];
  s.margin = res.value;
  return s;
}

struct CaratheodoryResult {
  bool intersect = false;
  std::vector<std::size_t> p_subset;  // indices into P
  std::vector<std::size_t> q_subset;  // indices into Q
  std::vector<double> lambda;         // convex weights on p_subset
  std::vector<double> mu;             // convex weights on q_subset
  Point meeting_point;
  std::optional<Separation> certificate;  // when the hulls are disjoint
};

// Subsets P' of P and Q' of Q with |P'| + |Q'| <= d + 2 whose hulls meet,
// read off a basic feasible solution of
//   sum lambda_i p_i = sum mu_j q_j, sum lambda = sum mu = 1, lambda, mu >= 0.
// When the hulls are disjoint a separating hyperplane is returned instead.
inline CaratheodoryResult caratheodory_pair(const std::vector<Point>& P, const std::vector<Point>& Q, std::size_t d) {
  CaratheodoryResult out;
  if (P.empty() || Q.empty()) {
    out.certificate = separate(P, Q, d);
    return out;
  }
  LinearProgram lp;
  lp.vars = P.size() + Q.size();
  lp.objective.assign(lp.vars, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<double> r(lp.vars, 0.0);
    for (std::size_t i = 0; i < P.size(); ++i) r[i] = P[i][c];
    for (std::size_t j = 0; j < Q.size(); ++j) r[P.size() + j] = -Q[j][c];
    lp.add(std::move(r), Sense::eq, 0.0);
  }
  std::vector<double> sum_l(lp.vars, 0.0), sum_m(lp.vars, 0.0);
  for (std::size_t i = 0; i < P.size(); ++i) sum_l[i] = 1.0;
  for (std::size_t j = 0; j < Q.size(); ++j) sum_m[P.size() + j] = 1.0;
  lp.add(std::move(sum_l), Sense::eq, 1.0);
  lp.add(std::move(sum_m), Sense::eq, 1.0);

  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::optimal) {
    out.certificate = separate(P, Q, d);
    return out;
  }
  out.intersect = true;
  out.meeting_point.assign(d, 0.0);
  double lsum = 0.0, msum = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
    if (res.x[i] > kLpTol) {
      out.p_subset.push_back(i);
      out.lambda.push_back(res.x[i]);
      lsum += res.x[i];
    }
  for (std::size_t j = 0; j < Q.size(); ++j)
    if (res.x[P.size() + j] > kLpTol) {
      out.q_subset.push_back(j);
      out.mu.push_back(res.x[P.size() + j]);
      msum += res.x[P.size() + j];
    }
  for (double& l : out.lambda) l /= lsum;
  for (double& m : out.mu) m /= msum;
  for (std::size_t k = 0; k < out.p_subset.size(); ++k)
    for (std::size_t c = 0; c < d; ++c) out.meeting_point[c] += out.lambda[k] * P[out.p_subset[k]][c];
  return out;
}

}  // namespace eqlearn::classify
