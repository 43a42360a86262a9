#pragma once
#include <array>
#include <string>

#include "otoc/otoc.hpp"

namespace otoc {

// Bit-reversal symmetry sectors of the open chain. Each basis vector is
// e_i (palindrome, i == j) or (e_i +/- e_j)/sqrt(2) for a pair {i, j = rev(i)}.
struct SymmetrySectors {
  int n_sites = 0;
  std::vector<std::array<int, 2>> even, odd;
};

int bit_reverse(int index, int n_sites);
SymmetrySectors sector_decompose(int n_sites);

struct SpectralSet {
  std::vector<double> quasi_energies;     // sorted, in (-pi, pi]
  std::vector<double> unfolded_spacings;  // mean 1, circular (includes wrap)
  double ks_wigner = 0, ks_poisson = 0;
  bool degenerate = false;
  std::string verdict;  // "wigner" | "poisson" | "inconclusive"
};

// Eigenphases of the sector-projected Floquet unitary. Asserts [U, B] = 0.
SpectralSet quasi_energies(const FloquetMap& map, bool even_sector);

// Polynomial unfolding of the counting function + KS distances against the
// Wigner CDF 1 - e^{-pi s^2/4} and Poisson CDF 1 - e^{-s}. Sets the verdict.
void unfold_and_score(SpectralSet& set, int poly_degree = 6);

// KS score of an externally supplied spacing sequence (mean-normalized here).
void score_spacings(SpectralSet& set, std::vector<double> spacings);

// argmax_nu |(1/T) sum_n (F(n) - Fbar) e^{-2 pi i nu n / T}| excluding nu = 0;
// returned in cycles per kick.
double dominant_frequency(const std::vector<cplx>& f, int t_horizon);

}  // namespace otoc
