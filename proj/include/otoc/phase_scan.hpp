#pragma once
#include "otoc/otoc.hpp"

namespace otoc {

struct PhaseGrid {
  std::vector<double> tau0_values, tau1_values;
  Eigen::MatrixXd order_parameter;  // row = tau0 index, col = tau1 index
  int n_sites = 0;
  int t_horizon = 0;
};

struct CriticalPoint {
  double tau0 = 0, tau1 = 0;
};

// Long-time averaged LMOTOC F_x^{l,l} with l = N/2 over T kicks, computed
// through a one-time eigendecomposition of U (two matvecs per kick).
double lmotoc_long_time_average(const SpinChainSpec& spec, int t_horizon);
// Same, but also returns the full series F(1..T) when needed downstream.
std::vector<cplx> lmotoc_series_eig(const SpinChainSpec& spec, int t_horizon);

PhaseGrid scan(const SpinChainSpec& spec_template,
               const std::vector<double>& tau0_values,
               const std::vector<double>& tau1_values, int t_horizon,
               int jobs = 1);

// First |Fbar| crossing above threshold along each constant-tau0 row,
// linearly interpolated between grid samples.
std::vector<CriticalPoint> extract_critical_line(const PhaseGrid& grid,
                                                 double threshold = 0.01);

// tau0 where |Fbar| crosses threshold along the constant-tau1 transect,
// scanning tau0 downward from pi/4; linear interpolation between samples.
double tau0_crossing(const SpinChainSpec& spec_template, double tau1,
                     const std::vector<double>& tau0_samples, int t_horizon,
                     double threshold = 0.01);

// 1/nu from the slope of log|tau0c(N) - tau0c(inf)| vs log N.
double finite_size_exponent(const std::vector<std::pair<int, double>>& tau0c_by_n,
                            double tau0c_infinity, double* std_error = nullptr);

}  // namespace otoc
