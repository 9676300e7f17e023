#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "schain/composite.hpp"
#include "schain/spectral.hpp"

namespace schain {

/// Ratio maximization target: maximize f(x)/g(x) over the product of the
/// meta-path weight simplex and the attribute weight simplex, with
/// x = (lambda, omega) concatenated.
class FractionalObjective {
 public:
  virtual ~FractionalObjective() = default;
  virtual std::size_t lambda_dim() const = 0;
  virtual std::size_t omega_dim() const = 0;
  std::size_t dim() const { return lambda_dim() + omega_dim(); }
  virtual double f(std::span<const double> x) const = 0;
  virtual double g(std::span<const double> x) const = 0;
  virtual void f_gradient(std::span<const double> x, std::span<double> out) const = 0;
  virtual void g_gradient(std::span<const double> x, std::span<double> out) const = 0;
};

/// The ratio program for a fixed partition. With per-cluster linear forms
///   N_r = z_r' (S + W o S) z_r   (within-cluster affinity mass)
///   Q_r = z_r' D z_r             (cluster volume)
/// the objective sum_r N_r/Q_r - gamma (|lambda|^2 + |omega|^2) + C becomes
/// f/g with g = prod_r Q_r and
/// f = sum_r N_r prod_{s != r} Q_s + (C - gamma |x|^2) prod_r Q_s,
/// both polynomials. The shift C = 2 gamma + 1 keeps f positive on the
/// feasible set.
class FracProgram final : public FractionalObjective {
 public:
  FracProgram(const CompositeModel& model, const ClusterIndicators& z);

  std::size_t lambda_dim() const override { return model_->num_metapaths(); }
  std::size_t omega_dim() const override { return model_->num_attrs(); }
  double f(std::span<const double> x) const override;
  double g(std::span<const double> x) const override;
  void f_gradient(std::span<const double> x, std::span<double> out) const override;
  void g_gradient(std::span<const double> x, std::span<double> out) const override;

  double shift() const { return shift_; }
  int clusters() const { return static_cast<int>(volume_.size()); }
  const LinearForm& coupling(int r) const { return coupling_[r]; }
  const LinearForm& volume(int r) const { return volume_[r]; }

  /// sum_r N_r/Q_r - gamma |x|^2, i.e. f/g - C. Equals k minus the penalty.
  double ratio_objective(std::span<const double> x) const;

 private:
  struct Parts {
    std::vector<double> n_vals, q_vals, excl;  // excl[r] = prod_{s != r} q_s
    double product = 1.0;                      // prod_r q_s
    double sq_norm = 0.0;
  };
  Parts eval_parts(std::span<const double> x) const;

  const CompositeModel* model_;
  double shift_;
  std::vector<LinearForm> coupling_;  // N_r
  std::vector<LinearForm> volume_;    // Q_r
};

/// Euclidean projection onto the probability simplex (in place).
void project_to_simplex(std::span<double> x);
/// Projects each weight block of x onto its simplex.
void project_feasible(const FractionalObjective& objective, std::span<double> x);

struct NppOptions {
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double pg_tol = 1e-8;
  int max_iters = 500;
};

struct NppResult {
  std::vector<double> x;
  double value = 0.0;  // f(x) - mu g(x)
  bool converged = false;
};

/// Maximizes f - mu g by projected gradient ascent with Armijo backtracking
/// from each start; returns the best stationary point found.
NppResult npp_solve(const FractionalObjective& objective, double mu,
                    std::span<const std::vector<double>> starts, const NppOptions& options = {});

struct DinkelbachTrace {
  std::vector<double> mus;       // strictly increasing
  std::vector<double> f_minus_mu_g;  // F(mu_i), strictly decreasing while positive
  int iterations = 0;
  bool converged = false;
  bool warning = false;  // some inner solve hit its iteration cap
};

struct DinkelbachOptions {
  double tol_rel = 1e-6;  // on F, relative to f at uniform weights
  int max_iters = 50;
  std::uint64_t seed = 0;
  NppOptions npp;
};

struct DinkelbachResult {
  std::vector<double> x;
  DinkelbachTrace trace;
};

/// Iterated ratio maximization: mu_1 = 0; solve the parametric problem at
/// mu_i, then mu_{i+1} = f/g at the solution, until F(mu) falls below
/// tolerance. `x0` (the caller's current weights) is kept among the starts
/// of every inner solve.
DinkelbachResult dinkelbach(const FractionalObjective& objective, std::span<const double> x0,
                            const DinkelbachOptions& options = {});

}  // namespace schain
