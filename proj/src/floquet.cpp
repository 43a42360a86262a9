#include "otoc/floquet.hpp"

#include <cmath>

namespace otoc {

namespace {

void fwht_inplace(cplx* p, Eigen::Index d) {
  for (Eigen::Index h = 1; h < d; h <<= 1)
    for (Eigen::Index i = 0; i < d; i += h << 1)
      for (Eigen::Index j = i; j < i + h; ++j) {
        const cplx a = p[j], b = p[j + h];
        p[j] = a + b;
        p[j + h] = a - b;
      }
  const double norm = 1.0 / std::sqrt(double(d));
  for (Eigen::Index j = 0; j < d; ++j) p[j] *= norm;
}

void scale_rows(Mat& m, const Vec& v, bool conj) {
  const Eigen::Index d = m.rows();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    cplx* p = m.col(c).data();
    const cplx* s = v.data();
    if (conj)
      for (Eigen::Index r = 0; r < d; ++r) p[r] *= std::conj(s[r]);
    else
      for (Eigen::Index r = 0; r < d; ++r) p[r] *= s[r];
  }
}

}  // namespace

void fwht(Vec& v) { fwht_inplace(v.data(), v.size()); }

void fwht_columns(Mat& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    fwht_inplace(m.col(c).data(), m.rows());
}

FloquetMap::FloquetMap(const SpinChainSpec& s) : spec(s) {
  spec.validate();
  const int n = spec.n_sites;
  const int d = spec.dim();
  phase_z.resize(d);
  phase_x.resize(d);
  for (int i = 0; i < d; ++i) {
    int mz = 0;
    for (int l = 0; l < n; ++l) mz += 1 - 2 * ((i >> l) & 1);
    phase_z[i] = std::exp(cplx(0, -spec.tau0 * spec.h_z * mz));
    // In the x eigenbasis the same bit pattern encodes the x spins.
    int bond = 0, mx = 0;
    int prev = 1 - 2 * ((i >> (n - 1)) & 1);  // site 1
    mx += prev;
    for (int l = n - 2; l >= 0; --l) {
      const int cur = 1 - 2 * ((i >> l) & 1);
      bond += prev * cur;
      mx += cur;
      prev = cur;
    }
    if (spec.boundary == Boundary::closed)
      bond += prev * (1 - 2 * ((i >> (n - 1)) & 1));
    phase_x[i] =
        std::exp(cplx(0, -spec.tau1 * (spec.j_x * bond + spec.h_x * mx)));
  }
}

void FloquetMap::apply(Vec& v) const {
  v.array() *= phase_z.array();
  fwht(v);
  v.array() *= phase_x.array();
  fwht(v);
}

void FloquetMap::apply_adjoint(Vec& v) const {
  fwht(v);
  v.array() *= phase_x.conjugate().array();
  fwht(v);
  v.array() *= phase_z.conjugate().array();
}

Mat FloquetMap::dense() const {
  const int d = dim();
  Mat u = Mat::Zero(d, d);
  u.diagonal() = phase_z;
  fwht_columns(u);
  scale_rows(u, phase_x, false);
  fwht_columns(u);
  return u;
}

void FloquetMap::conjugate(Mat& w, bool x_basis) const {
  if (w.rows() != dim() || w.cols() != dim())
    throw ConfigError("conjugate: dimension mismatch");
  if (!x_basis) {
    // U = F Px F Pz: left-apply U^dag = Pz* F Px* F, then right-apply U
    // through the transpose (F and the diagonals are symmetric).
    fwht_columns(w);
    scale_rows(w, phase_x, true);
    fwht_columns(w);
    scale_rows(w, phase_z, true);
    w.transposeInPlace();
    fwht_columns(w);
    scale_rows(w, phase_x, false);
    fwht_columns(w);
    scale_rows(w, phase_z, false);
    w.transposeInPlace();
  } else {
    // Rotated propagator Ux = Px F Pz F; Ux^dag = F Pz* F Px*.
    scale_rows(w, phase_x, true);
    fwht_columns(w);
    scale_rows(w, phase_z, true);
    fwht_columns(w);
    w.transposeInPlace();
    scale_rows(w, phase_x, false);
    fwht_columns(w);
    scale_rows(w, phase_z, false);
    fwht_columns(w);
    w.transposeInPlace();
  }
}

Mat heisenberg_evolve(Mat w, const FloquetMap& map, int n) {
  if (n < 0) throw ConfigError("heisenberg_evolve: negative kick count");
  for (int k = 0; k < n; ++k) map.conjugate(w);
  return w;
}

void unitary_eigensystem(const Mat& u, Eigen::VectorXd& theta, Mat* q) {
  const Eigen::Index d = u.rows();
  const double phis[] = {0.0, 1.2360679774997896, 2.5801234567901234};
  for (double phi : phis) {
    const cplx shift = std::exp(cplx(0, -phi));
    Mat b = Mat::Identity(d, d) + shift * u;
    Eigen::PartialPivLU<Mat> lu(b);
    const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
    if (diag.minCoeff() < 1e-8 * std::max(1.0, diag.maxCoeff())) continue;
    Mat h = cplx(0, 1) * lu.solve((Mat::Identity(d, d) - shift * u).eval());
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.compute(h, q ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    theta.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      double t = 2.0 * std::atan(es.eigenvalues()[k]) + phi;
      while (t > M_PI) t -= 2 * M_PI;
      while (t <= -M_PI) t += 2 * M_PI;
      theta[k] = t;
    }
    if (q) *q = es.eigenvectors();
    return;
  }
  throw ContractError("unitary_eigensystem: could not find a regular Cayley shift");
}

}  // namespace otoc
