#include "sshyp/symbolic/perron.hpp"

#include <cmath>
#include <stdexcept>

namespace sshyp {
namespace {

// v <- M v / sum(M v) until v settles; rho is the last growth factor.
Eigen::VectorXd power_iterate(const Eigen::MatrixXd& m, int max_iterations, double& rho, int& iterations) {
  const auto n = m.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  rho = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd w = m * v;
    const double s = w.sum();
    w /= s;
    const double change = (w - v).lpNorm<Eigen::Infinity>() / w.lpNorm<Eigen::Infinity>();
    const double rho_next = s;
    const bool settled = change < 1e-13 && std::abs(rho_next - rho) <= 1e-12 * rho_next;
    v = std::move(w);
    rho = rho_next;
    if (settled) {
      iterations = it;
      return v;
    }
  }
  throw std::runtime_error("spectral_radius: power iteration did not converge");
}

}  // namespace

Eigen::MatrixXd to_dense(const TransitionMatrix& a) {
  Eigen::MatrixXd m(a.size(), a.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) m(i, j) = a.allowed(i, j) ? 1.0 : 0.0;
  }
  return m;
}

PerronData spectral_radius(const TransitionMatrix& a, int max_iterations) {
  if (!a.primitive()) throw std::invalid_argument("spectral_radius: matrix is not primitive");
  const Eigen::MatrixXd m = to_dense(a);
  PerronData out;
  int it_right = 0, it_left = 0;
  double rho_left = 0.0;
  out.right = power_iterate(m, max_iterations, out.rho, it_right);
  out.left = power_iterate(m.transpose(), max_iterations, rho_left, it_left);
  out.left /= out.left.dot(out.right);
  out.iterations = std::max(it_right, it_left);
  return out;
}

ParryMeasure::ParryMeasure(const TransitionMatrix& a) : a_(a), perron_(spectral_radius(a)) {}

double ParryMeasure::transition(int i, int j) const {
  if (!a_.allowed(i, j)) return 0.0;
  return perron_.right(j) / (perron_.rho * perron_.right(i));
}

double ParryMeasure::stationary(int i) const { return perron_.left(i) * perron_.right(i); }

double ParryMeasure::cylinder(const Word& word) const {
  if (word.empty() || !a_.admissible(word)) return 0.0;
  const auto len = static_cast<double>(word.size());
  return perron_.left(word.front()) * perron_.right(word.back()) / std::pow(perron_.rho, len - 1.0);
}

double parry_measure(const TransitionMatrix& a, const Word& word) { return ParryMeasure(a).cylinder(word); }

double perron_root(const TransitionMatrix& a) {
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(to_dense(a), false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace sshyp
