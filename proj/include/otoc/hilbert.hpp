#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "otoc/chain.hpp"

namespace otoc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

enum class Axis { x, y, z };
enum class Term { XX, X, Z };

// Single-site Pauli embedded in the N-site chain; site 1 is the most
// significant bit of the basis index.
Mat pauli(Axis axis);
Mat pauli_site(Axis axis, int site, int n_sites);

// H_xx = sum sigma_x^l sigma_x^{l+1} (wrap bond if closed),
// H_x = sum sigma_x^l, H_z = sum sigma_z^l. Couplings are applied by callers.
Mat build_hamiltonian(const SpinChainSpec& spec, Term term);

// exp(-i H t) by Hermitian eigendecomposition (no Trotterization).
Mat unitary_exp(const Mat& h, double t);

// Random ensembles, deterministic under seed.
// GUE: W = (M + M^dag)/2 with independent standard normal real/imag entries,
// so E[W^2] = dim * I.
Mat gue_sample(int dim, std::uint64_t seed);
// CUE: unitary factor of a complex Ginibre QR, phase-corrected to Haar.
Mat cue_sample(int dim, std::uint64_t seed);
// Normalized complex Gaussian vector.
Vec haar_state(int dim, std::uint64_t seed);

}  // namespace otoc
