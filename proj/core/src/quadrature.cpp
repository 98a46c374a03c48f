#include "hhomg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hhomg {

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void gauss_legendre_01(int n, std::vector<double>& pts, std::vector<double>& wts) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
  pts.assign(n, 0.0);
  wts.assign(n, 0.0);
  // Newton iteration on P_n over [-1,1]; nodes are symmetric.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    pts[i] = 0.5 * (1.0 - x);  // map [-1,1] -> [0,1], descending cos order
    pts[n - 1 - i] = 0.5 * (1.0 + x);
    wts[i] = 0.5 * w;
    wts[n - 1 - i] = 0.5 * w;
  }
}

namespace {

QuadratureRule make_reference_rule(int dim, int exactness) {
  QuadratureRule rule;
  rule.exactness = exactness;
  const int d = exactness;
  if (dim == 1) {
    const int n = d / 2 + 1;
    std::vector<double> p, w;
    gauss_legendre_01(n, p, w);
    for (int i = 0; i < n; ++i) {
      rule.points.emplace_back(p[i], 0.0, 0.0);
      rule.weights.push_back(w[i]);
    }
  } else if (dim == 2) {
    // Duffy map (u,v) -> (u, v(1-u)); Jacobian (1-u) raises the u-degree by
    // d+1, the v-degree stays at d.
    const int nu = (d + 2) / 2 + 1;
    const int nv = (d + 1) / 2 + 1;
    std::vector<double> pu, wu, pv, wv;
    gauss_legendre_01(nu, pu, wu);
    gauss_legendre_01(nv, pv, wv);
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j) {
        const double u = pu[i], v = pv[j];
        rule.points.emplace_back(u, v * (1.0 - u), 0.0);
        rule.weights.push_back(wu[i] * wv[j] * (1.0 - u));
      }
  } else if (dim == 3) {
    // (u,v,w) -> (u, v(1-u), w(1-u)(1-v)); Jacobian (1-u)^2 (1-v).
    const int nu = (d + 3) / 2 + 1;
    const int nv = (d + 2) / 2 + 1;
    const int nw = (d + 1) / 2 + 1;
    std::vector<double> pu, wu, pv, wv, pw, ww;
    gauss_legendre_01(nu, pu, wu);
    gauss_legendre_01(nv, pv, wv);
    gauss_legendre_01(nw, pw, ww);
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j)
        for (int k = 0; k < nw; ++k) {
          const double u = pu[i], v = pv[j], w = pw[k];
          const double y = v * (1.0 - u);
          const double z = w * (1.0 - u) * (1.0 - v);
          rule.points.emplace_back(u, y, z);
          rule.weights.push_back(wu[i] * wv[j] * ww[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
        }
  } else {
    throw std::invalid_argument("reference_simplex_rule: dim must be 1, 2 or 3");
  }
  return rule;
}

}  // namespace

QuadratureRule reference_simplex_rule(int dim, int exactness) {
  if (exactness < 0) throw std::invalid_argument("reference_simplex_rule: negative exactness");
  static std::map<std::pair<int, int>, QuadratureRule> cache;
  static std::mutex cache_mutex;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(dim, exactness);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_reference_rule(dim, exactness)).first;
  return it->second;
}

QuadratureRule simplex_rule(const std::vector<Eigen::Vector3d>& vertices, int exactness) {
  const int dim = static_cast<int>(vertices.size()) - 1;
  QuadratureRule ref = reference_simplex_rule(dim, exactness);

  Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
  for (int c = 0; c < dim; ++c) J.col(c) = vertices[c + 1] - vertices[0];

  // Measure factor of the affine map, valid also for manifold simplices.
  double gram_det = 1.0;
  {
    Eigen::MatrixXd E(3, dim);
    for (int c = 0; c < dim; ++c) E.col(c) = J.col(c);
    gram_det = std::sqrt((E.transpose() * E).determinant());
  }

  QuadratureRule rule;
  rule.exactness = exactness;
  rule.points.reserve(ref.size());
  rule.weights.reserve(ref.size());
  for (int q = 0; q < ref.size(); ++q) {
    Eigen::Vector3d x = vertices[0];
    for (int c = 0; c < dim; ++c) x += ref.points[q][c] * J.col(c);
    rule.points.push_back(x);
    rule.weights.push_back(ref.weights[q] * gram_det);
  }
  return rule;
}

}  // namespace hhomg
