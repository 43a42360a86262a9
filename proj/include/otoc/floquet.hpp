#pragma once
#include "otoc/hilbert.hpp"

namespace otoc {

// Normalized in-place Walsh-Hadamard transform (self-inverse) of a vector,
// or of every column of a matrix.
void fwht(Vec& v);
void fwht_columns(Mat& m);

// One-period propagator of the kicked chain, kept in factored form:
// U = F Px F Pz where F is the full Hadamard rotation and Px, Pz the
// diagonal kick phases in the x and z eigenbases.
struct FloquetMap {
  SpinChainSpec spec;
  Vec phase_z;  // exp(-i tau0 h_z m(i)) over z-basis indices
  Vec phase_x;  // exp(-i tau1 (J_x bond(t) + h_x m(t))) over x-basis indices

  explicit FloquetMap(const SpinChainSpec& s);
  int dim() const { return spec.dim(); }

  void apply(Vec& v) const;          // v <- U v
  void apply_adjoint(Vec& v) const;  // v <- U^dag v
  Mat dense() const;

  // W <- U^dag W U. With x_basis the observable lives in the Hadamard-rotated
  // basis (where x-type observables are diagonal) and the rotated propagator
  // Px F Pz F is used; the spectrum of W is the same either way.
  void conjugate(Mat& w, bool x_basis = false) const;
};

Mat heisenberg_evolve(Mat w, const FloquetMap& map, int n);

// Eigenphases (in (-pi, pi]) and eigenvectors of a unitary matrix via the
// Cayley transform of a phase-shifted copy; stable under eigenvalues at -1.
void unitary_eigensystem(const Mat& u, Eigen::VectorXd& theta, Mat* q = nullptr);

}  // namespace otoc
