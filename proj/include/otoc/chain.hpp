#pragma once
#include <stdexcept>
#include <string>

namespace otoc {

// Invalid user-facing configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A numerical contract was violated at run time (CLI exit code 3).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Boundary { open, closed };

// Kicked Ising chain: U = exp(-i tau1 (J_x H_xx + h_x H_x)) exp(-i tau0 h_z H_z),
// the transverse kick acting first on states. h_x = 0 is the integrable system.
struct SpinChainSpec {
  int n_sites = 8;
  Boundary boundary = Boundary::closed;
  double j_x = 1.0;
  double h_x = 0.0;
  double h_z = 1.0;
  double tau0 = 0.0;
  double tau1 = 0.0;

  int dim() const { return 1 << n_sites; }
  void validate() const;
};

// Hard cap on chain length, from OTOC_MAX_QUBITS (default 14).
int max_qubits();

}  // namespace otoc
