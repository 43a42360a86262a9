#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "otoc/floquet.hpp"

namespace otoc {

enum class PairKind { single_site_z, single_site_x, spin_block, random_gue };
enum class TraceMode { exact_trace, haar_estimate, polarized_state, jw_analytic };

struct ObservablePair {
  PairKind kind = PairKind::single_site_z;
  int l = 1;
  int m = 1;
  std::uint64_t seed = 0;
};

struct OtocSeries {
  std::vector<int> n;
  std::vector<cplx> f;  // empty for block/random kinds
  std::vector<double> c;
  std::vector<double> c2, c4;  // block kinds only
  ObservablePair pair;
  SpinChainSpec spec;
  TraceMode mode = TraceMode::polarized_state;
};

struct FitResult {
  enum Kind { none, power_law, exponential } kind = none;
  double exponent = 0.0;   // b (power law) or mu (exponential rate)
  double prefactor = 0.0;
  double residual = 0.0;   // rms residual in transformed coordinates
  int n_lo = 0, n_hi = 0;
};

// TMOTOC / LMOTOC with the matching polarized initial state
// (|up..up> for z, |->..->| for x); F(n) and C(n) = 1 - Re F(n).
OtocSeries otoc_single_site(const SpinChainSpec& spec, const ObservablePair& pair,
                            int n_max);

// Same correlator through C(n) = (1/2) ||[W(n), V] psi||^2. Slower, but keeps
// full relative precision when C is tiny (1 - Re F cancels catastrophically
// below ~1e-12).
OtocSeries otoc_single_site_commutator(const SpinChainSpec& spec,
                                       const ObservablePair& pair, int n_max);

// C(n) = -(1/2 dA dB) Tr([W(n),V]^2) = C2 - C4 for the spin-block observables
// W = (2/N) sum_{l<=N/2} sigma_x^l, V = (2/N) sum_{l>N/2} sigma_x^l.
OtocSeries otoc_block(const SpinChainSpec& spec, int n_max, TraceMode mode,
                      int haar_states = 3, std::uint64_t seed = 0);

// GUE observables W (x) I and I (x) V on the half-chain bipartition.
// Returns the mean OTOC scaled by C(inf) = 2^N per kick; spread (standard
// error of the scaled mean) is written to *spread when given.
OtocSeries otoc_random_observables(const SpinChainSpec& spec, int n_max,
                                   int realizations, std::uint64_t seed,
                                   int jobs = 1,
                                   std::vector<double>* spread = nullptr);

// Operator entanglement entropy of U(n): 1 - sum lambda_i^2 over the
// normalized operator-Schmidt spectrum of the propagator.
double opee(const FloquetMap& map, int n);

// CUE saturation value Tr(W^2) Tr(V^2)/(d^2-1) for traceless W, V.
double cue_asymptote(const Mat& w, const Mat& v);

struct DepartureEntry {
  int delta_l = 0;
  int t = 0;          // first n with 1 - Re F(n) > epsilon
  bool departed = false;
};

std::vector<DepartureEntry> departure_times(
    const std::vector<std::pair<int, std::vector<double>>>& c_by_separation,
    double epsilon);
// Reciprocal slope of the least-squares line t vs delta_l.
double propagation_speed(const std::vector<DepartureEntry>& table);

// Log-log fit C ~ a n^b over [n_lo, n_hi].
FitResult fit_growth(const std::vector<double>& c, int n_lo, int n_hi);
// Log-linear fit 1 - C/c_inf ~ a exp(-mu n) over [n_lo, n_hi].
FitResult fit_saturation(const std::vector<double>& c, double c_inf, int n_lo,
                         int n_hi);
// Auto window [2, n_sat/2], n_sat = first n with C/c_inf > 0.8.
std::optional<std::pair<int, int>> auto_fit_window(const std::vector<double>& c,
                                                   double c_inf);

// (1/T) sum_{n=1..T} Re F(n); series must hold n = 0..T at least.
double long_time_average(const std::vector<cplx>& f, int t_horizon);

}  // namespace otoc
