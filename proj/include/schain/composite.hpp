#pragma once

#include <span>
#include <vector>

#include "schain/hin.hpp"
#include "schain/matrix.hpp"
#include "schain/metapath_sim.hpp"

namespace schain {

/// Value linear in the meta-path weights and the attribute weights:
/// constant + lambda . lambda_coeffs + omega . omega_coeffs.
struct LinearForm {
  std::vector<double> lambda_coeffs;
  std::vector<double> omega_coeffs;
  double constant = 0.0;

  double evaluate(std::span<const double> lambda, std::span<const double> omega) const;
  LinearForm& add_scaled(const LinearForm& other, double factor);
};

/// Per-attribute similarity matrices a_j: min-max scale the column, then
/// a_j(u,v) = 1 - |x_u - x_v|. A constant column gives a_j = 1 everywhere.
std::vector<Matrix> attribute_components(const Matrix& attrs);

/// +1 on must-link pairs, -1 on cannot-link, 0 elsewhere; symmetric, zero diagonal.
Matrix constraint_matrix(const ConstraintSet& constraints, std::size_t n);

/// Composite similarity over the target type with every entry of S and D an
/// exact linear form in (lambda, omega):
///   S = alpha * sum_j omega_j a_j + (1-alpha) * sum_p lambda_p s_p
///   D_uu = sum_v S(u,v) + delta      (delta keeps D^(-1/2) finite)
/// Immutable after assembly; evaluation is pure.
class CompositeModel {
 public:
  static constexpr double kDegreeShift = 1e-12;

  static CompositeModel assemble(std::vector<Tssn> pathsims, std::vector<Matrix> attr_components,
                                 Matrix constraints, double alpha, double gamma);

  std::size_t n() const { return n_; }
  std::size_t num_metapaths() const { return paths_.size(); }
  std::size_t num_attrs() const { return attrs_.size(); }
  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }

  const Matrix& path_matrix(std::size_t p) const { return paths_[p].weights; }
  const MetaPath& path(std::size_t p) const { return paths_[p].path; }
  const Matrix& attr_matrix(std::size_t j) const { return attrs_[j]; }
  const Matrix& constraints() const { return w_; }

  LinearForm entry_form(std::size_t u, std::size_t v) const;
  LinearForm degree_form(std::size_t u) const;

  struct Evaluation {
    Matrix S;
    Matrix WS;               // W o S
    std::vector<double> D;   // diagonal
  };
  Evaluation evaluate(std::span<const double> lambda, std::span<const double> omega) const;

  /// Throws InfeasibleWeights unless both vectors are nonnegative and sum
  /// to 1 within 1e-9 (empty vectors are trivially feasible).
  void check_feasible(std::span<const double> lambda, std::span<const double> omega) const;

  std::vector<double> uniform_lambda() const;
  std::vector<double> uniform_omega() const;

 private:
  CompositeModel() = default;

  std::size_t n_ = 0;
  double alpha_ = 0.5;
  double gamma_ = 0.0;
  std::vector<Tssn> paths_;
  std::vector<Matrix> attrs_;
  Matrix w_;
};

std::vector<double> uniform_weights(std::size_t count);

}  // namespace schain
