#include "otoc/hilbert.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

namespace otoc {

void SpinChainSpec::validate() const {
  if (n_sites < 2) throw ConfigError("n_sites must be at least 2");
  if (n_sites > max_qubits())
    throw ConfigError("n_sites exceeds the OTOC_MAX_QUBITS cap of " +
                      std::to_string(max_qubits()));
  if (tau0 < 0 || tau1 < 0) throw ConfigError("kick periods must be nonnegative");
}

int max_qubits() {
  if (const char* env = std::getenv("OTOC_MAX_QUBITS")) {
    int v = std::atoi(env);
    if (v >= 2) return v;
  }
  return 14;
}

Mat pauli(Axis axis) {
  Mat m(2, 2);
  switch (axis) {
    case Axis::x: m << 0, 1, 1, 0; break;
    case Axis::y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case Axis::z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Mat pauli_site(Axis axis, int site, int n_sites) {
  if (site < 1 || site > n_sites)
    throw ConfigError("pauli_site: site out of range");
  const int d = 1 << n_sites;
  const int bit = n_sites - site;  // site 1 = most significant bit
  Mat m = Mat::Zero(d, d);
  const Mat s = pauli(axis);
  for (int i = 0; i < d; ++i) {
    const int b = (i >> bit) & 1;
    for (int bb = 0; bb < 2; ++bb) {
      const cplx v = s(bb, b);
      if (v != cplx(0, 0)) m((i & ~(1 << bit)) | (bb << bit), i) = v;
    }
  }
  return m;
}

Mat build_hamiltonian(const SpinChainSpec& spec, Term term) {
  spec.validate();
  const int n = spec.n_sites;
  const int d = spec.dim();
  Mat h = Mat::Zero(d, d);
  if (term == Term::Z) {
    for (int i = 0; i < d; ++i) {
      int mz = 0;
      for (int l = 0; l < n; ++l) mz += 1 - 2 * ((i >> l) & 1);
      h(i, i) = mz;
    }
    return h;
  }
  if (term == Term::X) {
    for (int l = 1; l <= n; ++l) h += pauli_site(Axis::x, l, n);
    return h;
  }
  for (int l = 1; l < n; ++l)
    h += pauli_site(Axis::x, l, n) * pauli_site(Axis::x, l + 1, n);
  if (spec.boundary == Boundary::closed && n > 2)
    h += pauli_site(Axis::x, n, n) * pauli_site(Axis::x, 1, n);
  else if (spec.boundary == Boundary::closed && n == 2)
    h += pauli_site(Axis::x, 2, n) * pauli_site(Axis::x, 1, n);
  return h;
}

Mat unitary_exp(const Mat& h, double t) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ContractError("unitary_exp: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXd w = es.eigenvalues();
  Vec ph(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    ph[k] = std::exp(cplx(0, -w[k] * t));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Mat gue_sample(int dim, std::uint64_t seed) {
  if (dim < 2) throw ConfigError("ensemble dim must be at least 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = cplx(re, im);
    }
  return 0.5 * (m + m.adjoint()).eval();
}

Mat cue_sample(int dim, std::uint64_t seed) {
  if (dim < 2) throw ConfigError("ensemble dim must be at least 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the diagonal phases so the distribution is Haar, not QR-biased.
  for (int k = 0; k < dim; ++k) {
    cplx rk = r(k, k);
    q.col(k) *= (std::abs(rk) > 0) ? rk / std::abs(rk) : cplx(1, 0);
  }
  return q;
}

Vec haar_state(int dim, std::uint64_t seed) {
  if (dim < 2) throw ConfigError("ensemble dim must be at least 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  v /= v.norm();
  return v;
}

}  // namespace otoc
