#ifndef SSHYP_SYMBOLIC_PERRON_HPP
#define SSHYP_SYMBOLIC_PERRON_HPP

#include <Eigen/Dense>

#include "sshyp/symbolic/bisequence.hpp"
#include "sshyp/symbolic/transition_matrix.hpp"

namespace sshyp {

struct PerronData {
  double rho = 0.0;
  Eigen::VectorXd right;  // A v = rho v, sum(v) = 1
  Eigen::VectorXd left;   // u A = rho u, normalized so that u . v = 1
  int iterations = 0;
};

Eigen::MatrixXd to_dense(const TransitionMatrix& a);

// Power iteration to relative tolerance 1e-12. Throws std::invalid_argument
// for non-primitive matrices and std::runtime_error when the cap is hit.
PerronData spectral_radius(const TransitionMatrix& a, int max_iterations = 100000);

// Largest eigenvalue modulus by a dense eigen-solve; any matrix, no
// primitivity needed.
double perron_root(const TransitionMatrix& a);

// Markov measure with p_ij = A_ij v_j / (rho v_i) and stationary pi_i = u_i v_i.
class ParryMeasure {
 public:
  explicit ParryMeasure(const TransitionMatrix& a);

  double transition(int i, int j) const;
  double stationary(int i) const;
  // Mass of the cylinder fixing word at any start index (shift invariance);
  // zero for inadmissible words.
  double cylinder(const Word& word) const;

  const PerronData& perron() const { return perron_; }

 private:
  TransitionMatrix a_;
  PerronData perron_;
};

double parry_measure(const TransitionMatrix& a, const Word& word);

}  // namespace sshyp

#endif  // SSHYP_SYMBOLIC_PERRON_HPP
