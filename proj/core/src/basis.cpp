#include "hhomg/basis.hpp"

#include <stdexcept>

namespace hhomg {

int poly_space_dim(int degree, int dim) {
  int n = 1;
  for (int i = 1; i <= dim; ++i) n = n * (degree + i) / i;
  return n;
}

namespace {

std::vector<std::array<int, 3>> graded_exponents(int degree, int dim) {
  std::vector<std::array<int, 3>> exps;
  for (int g = 0; g <= degree; ++g) {
    if (dim == 1) {
      exps.push_back({g, 0, 0});
    } else if (dim == 2) {
      for (int a = g; a >= 0; --a) exps.push_back({a, g - a, 0});
    } else {
      for (int a = g; a >= 0; --a)
        for (int b = g - a; b >= 0; --b) exps.push_back({a, b, g - a - b});
    }
  }
  return exps;
}

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

Eigen::VectorXd Basis::local_coords(const Eigen::Vector3d& x) const {
  Eigen::VectorXd xi(local_dim_);
  for (int k = 0; k < local_dim_; ++k) xi[k] = frame_.col(k).dot(x - center_) / scale_;
  return xi;
}

void Basis::init(int degree, const QuadratureRule& rule) {
  degree_ = degree;
  exps_ = graded_exponents(degree, local_dim_);
  const int n = size();
  coeffs_ = Eigen::MatrixXd::Identity(n, n);

  // monomial values at the rule points
  Eigen::MatrixXd V(rule.size(), n);
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::VectorXd xi = local_coords(rule.points[q]);
    for (int k = 0; k < n; ++k) {
      double m = 1.0;
      for (int d = 0; d < local_dim_; ++d) m *= ipow(xi[d], exps_[k][d]);
      V(q, k) = m;
    }
  }
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());

  // two Cholesky passes; the second removes the first's rounding error
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::MatrixXd B = V * coeffs_.transpose();           // current basis values
    Eigen::MatrixXd G = B.transpose() * w.asDiagonal() * B;
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("Basis: singular Gram matrix (degenerate cell or face)");
    coeffs_ = llt.matrixL().solve(coeffs_);
  }
}

Basis Basis::make_cell(const SimplicialMesh& mesh, int c, int degree) {
  Basis b;
  b.local_dim_ = mesh.dim();
  b.center_ = mesh.cell_centroid(c);
  b.scale_ = 0.5 * mesh.cell_diameter(c);
  b.frame_ = Eigen::Matrix3d::Identity();
  b.init(degree, simplex_rule(mesh.cell_vertex_coords(c), 2 * degree));
  return b;
}

Basis Basis::make_face(const SimplicialMesh& mesh, int f, int degree) {
  const Face& face = mesh.face(f);
  Basis b;
  b.local_dim_ = mesh.dim() - 1;
  b.center_ = face.centroid;
  b.scale_ = 0.5 * face.diameter;
  b.frame_ = Eigen::Matrix3d::Identity();
  auto fv = mesh.face_vertex_coords(f);
  b.frame_.col(0) = (fv[1] - fv[0]).normalized();
  if (mesh.dim() == 3) b.frame_.col(1) = face.normal.cross(b.frame_.col(0)).normalized();
  b.init(degree, simplex_rule(fv, 2 * degree));
  return b;
}

Eigen::MatrixXd Basis::values(const std::vector<Eigen::Vector3d>& pts) const {
  const int n = size();
  Eigen::MatrixXd V(pts.size(), n);
  for (size_t q = 0; q < pts.size(); ++q) {
    Eigen::VectorXd xi = local_coords(pts[q]);
    for (int k = 0; k < n; ++k) {
      double m = 1.0;
      for (int d = 0; d < local_dim_; ++d) m *= ipow(xi[d], exps_[k][d]);
      V(q, k) = m;
    }
  }
  return V * coeffs_.transpose();
}

std::array<Eigen::MatrixXd, 3> Basis::gradients(const std::vector<Eigen::Vector3d>& pts) const {
  const int n = size();
  const int np = static_cast<int>(pts.size());
  // monomial gradients in local coordinates
  std::array<Eigen::MatrixXd, 3> dmono;
  for (int d = 0; d < local_dim_; ++d) dmono[d].resize(np, n);
  for (int q = 0; q < np; ++q) {
    Eigen::VectorXd xi = local_coords(pts[q]);
    for (int k = 0; k < n; ++k) {
      for (int d = 0; d < local_dim_; ++d) {
        double g = exps_[k][d];
        if (exps_[k][d] == 0) {
          dmono[d](q, k) = 0.0;
          continue;
        }
        for (int e = 0; e < local_dim_; ++e)
          g *= ipow(xi[e], e == d ? exps_[k][e] - 1 : exps_[k][e]);
        dmono[d](q, k) = g;
      }
    }
  }
  // chain rule: d/dx = sum_d frame(:,d)/scale * d/dxi_d
  std::array<Eigen::MatrixXd, 3> out;
  for (int x = 0; x < 3; ++x) out[x] = Eigen::MatrixXd::Zero(np, n);
  for (int d = 0; d < local_dim_; ++d) {
    Eigen::MatrixXd db = dmono[d] * coeffs_.transpose() / scale_;
    for (int x = 0; x < 3; ++x)
      if (frame_(x, d) != 0.0) out[x] += frame_(x, d) * db;
  }
  return out;
}

double Basis::gram_defect(const QuadratureRule& rule) const {
  Eigen::MatrixXd B = values(rule.points);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());
  Eigen::MatrixXd G = B.transpose() * w.asDiagonal() * B;
  return (G - Eigen::MatrixXd::Identity(size(), size())).cwiseAbs().maxCoeff();
}

}  // namespace hhomg
