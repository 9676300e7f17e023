#include "schain/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "schain/error.hpp"
#include "schain/kernels.hpp"
#include "schain/parallel.hpp"

namespace schain {

FracProgram::FracProgram(const CompositeModel& model, const ClusterIndicators& z)
    : model_(&model), shift_(2.0 * model.gamma() + 1.0) {
  z.validate();
  if (z.labels.size() != model.n())
    throw Error(ErrorKind::DimensionMismatch, "partition size does not match the model");
  const auto members = z.members();
  const std::size_t p = model.num_metapaths();
  const std::size_t q = model.num_attrs();
  const Matrix& w = model.constraints();

  coupling_.resize(z.k);
  volume_.resize(z.k);
  for (int r = 0; r < z.k; ++r) {
    LinearForm& n_r = coupling_[r];
    LinearForm& q_r = volume_[r];
    n_r.lambda_coeffs.assign(p, 0.0);
    n_r.omega_coeffs.assign(q, 0.0);
    q_r.lambda_coeffs.assign(p, 0.0);
    q_r.omega_coeffs.assign(q, 0.0);
    q_r.constant = static_cast<double>(members[r].size()) * CompositeModel::kDegreeShift;

    auto accumulate = [&](const Matrix& m, double scale, double& coupling_out,
                          double& volume_out) {
      double within = 0.0, rows = 0.0;
      for (const int u : members[r]) {
        rows += kernels::sum(m.row(u).data(), m.cols());
        for (const int v : members[r]) within += (1.0 + w(u, v)) * m(u, v);
      }
      coupling_out += scale * within;
      volume_out += scale * rows;
    };
    for (std::size_t i = 0; i < p; ++i)
      accumulate(model.path_matrix(i), 1.0 - model.alpha(), n_r.lambda_coeffs[i],
                 q_r.lambda_coeffs[i]);
    for (std::size_t j = 0; j < q; ++j)
      accumulate(model.attr_matrix(j), model.alpha(), n_r.omega_coeffs[j],
                 q_r.omega_coeffs[j]);
  }
}

FracProgram::Parts FracProgram::eval_parts(std::span<const double> x) const {
  const std::size_t p = lambda_dim();
  const auto lambda = x.subspan(0, p);
  const auto omega = x.subspan(p);
  Parts parts;
  const int k = clusters();
  parts.n_vals.resize(k);
  parts.q_vals.resize(k);
  parts.excl.resize(k);
  for (int r = 0; r < k; ++r) {
    parts.n_vals[r] = coupling_[r].evaluate(lambda, omega);
    parts.q_vals[r] = volume_[r].evaluate(lambda, omega);
    if (!(parts.q_vals[r] > 0.0))
      throw Error(ErrorKind::InvariantViolation, "cluster volume is not positive");
  }
  // prefix/suffix products avoid dividing by small volumes
  std::vector<double> prefix(k + 1, 1.0), suffix(k + 1, 1.0);
  for (int r = 0; r < k; ++r) prefix[r + 1] = prefix[r] * parts.q_vals[r];
  for (int r = k - 1; r >= 0; --r) suffix[r] = suffix[r + 1] * parts.q_vals[r];
  parts.product = prefix[k];
  for (int r = 0; r < k; ++r) parts.excl[r] = prefix[r] * suffix[r + 1];
  parts.sq_norm = kernels::dot(x.data(), x.data(), x.size());
  return parts;
}

double FracProgram::f(std::span<const double> x) const {
  const Parts parts = eval_parts(x);
  double out = (shift_ - model_->gamma() * parts.sq_norm) * parts.product;
  for (int r = 0; r < clusters(); ++r) out += parts.n_vals[r] * parts.excl[r];
  return out;
}

double FracProgram::g(std::span<const double> x) const { return eval_parts(x).product; }

void FracProgram::f_gradient(std::span<const double> x, std::span<double> out) const {
  const Parts parts = eval_parts(x);
  const int k = clusters();
  const std::size_t d = dim();
  std::fill(out.begin(), out.end(), 0.0);

  auto add_form = [&](const LinearForm& form, double factor) {
    kernels::axpy(factor, form.lambda_coeffs.data(), out.data(), form.lambda_coeffs.size());
    kernels::axpy(factor, form.omega_coeffs.data(), out.data() + form.lambda_coeffs.size(),
                  form.omega_coeffs.size());
  };

  // d/dx sum_r N_r prod_{s != r} Q_s
  for (int r = 0; r < k; ++r) {
    add_form(coupling_[r], parts.excl[r]);
    // products excluding both r and s, via prefix/suffix over q without r
    std::vector<double> pre(k + 1, 1.0), suf(k + 1, 1.0);
    for (int s = 0; s < k; ++s) pre[s + 1] = pre[s] * (s == r ? 1.0 : parts.q_vals[s]);
    for (int s = k - 1; s >= 0; --s) suf[s] = suf[s + 1] * (s == r ? 1.0 : parts.q_vals[s]);
    for (int s = 0; s < k; ++s) {
      if (s == r) continue;
      add_form(volume_[s], parts.n_vals[r] * pre[s] * suf[s + 1]);
    }
  }
  // d/dx (C - gamma |x|^2) prod_r Q_r
  const double bias = shift_ - model_->gamma() * parts.sq_norm;
  for (int s = 0; s < k; ++s) add_form(volume_[s], bias * parts.excl[s]);
  const double minus_two_gamma_g = -2.0 * model_->gamma() * parts.product;
  for (std::size_t i = 0; i < d; ++i) out[i] += minus_two_gamma_g * x[i];
}

void FracProgram::g_gradient(std::span<const double> x, std::span<double> out) const {
  const Parts parts = eval_parts(x);
  std::fill(out.begin(), out.end(), 0.0);
  for (int s = 0; s < clusters(); ++s) {
    const LinearForm& form = volume_[s];
    kernels::axpy(parts.excl[s], form.lambda_coeffs.data(), out.data(),
                  form.lambda_coeffs.size());
    kernels::axpy(parts.excl[s], form.omega_coeffs.data(),
                  out.data() + form.lambda_coeffs.size(), form.omega_coeffs.size());
  }
}

double FracProgram::ratio_objective(std::span<const double> x) const {
  const Parts parts = eval_parts(x);
  double out = -model_->gamma() * parts.sq_norm;
  for (int r = 0; r < clusters(); ++r) out += parts.n_vals[r] / parts.q_vals[r];
  return out;
}

void project_to_simplex(std::span<double> x) {
  if (x.empty()) return;
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0, tau = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    running += sorted[i];
    const double candidate = (running - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) tau = candidate;
  }
  for (double& v : x) v = std::max(0.0, v - tau);
}

void project_feasible(const FractionalObjective& objective, std::span<double> x) {
  project_to_simplex(x.subspan(0, objective.lambda_dim()));
  project_to_simplex(x.subspan(objective.lambda_dim()));
}

namespace {

struct AscentOutcome {
  std::vector<double> x;
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
};

AscentOutcome ascend(const FractionalObjective& objective, double mu,
                     std::span<const double> start, const NppOptions& options) {
  const std::size_t d = objective.dim();
  AscentOutcome outcome;
  outcome.x.assign(start.begin(), start.end());
  project_feasible(objective, outcome.x);

  std::vector<double> grad(d), gf(d), gg(d), cand(d), probe(d);
  auto value_at = [&](std::span<const double> x) {
    return objective.f(x) - mu * objective.g(x);
  };
  auto gradient_at = [&](std::span<const double> x) {
    objective.f_gradient(x, gf);
    objective.g_gradient(x, gg);
    for (std::size_t i = 0; i < d; ++i) grad[i] = gf[i] - mu * gg[i];
  };

  double value = value_at(outcome.x);
  double step = 1.0;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    gradient_at(outcome.x);

    // unit-step projected gradient as the stationarity measure
    std::copy(outcome.x.begin(), outcome.x.end(), probe.begin());
    kernels::axpy(1.0, grad.data(), probe.data(), d);
    project_feasible(objective, probe);
    double pg_sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double diff = probe[i] - outcome.x[i];
      pg_sq += diff * diff;
    }
    if (std::sqrt(pg_sq) <= options.pg_tol) {
      outcome.converged = true;
      break;
    }

    double s = step;
    bool accepted = false;
    while (s > 1e-18) {
      std::copy(outcome.x.begin(), outcome.x.end(), cand.begin());
      kernels::axpy(s, grad.data(), cand.data(), d);
      project_feasible(objective, cand);
      double slope = 0.0;
      for (std::size_t i = 0; i < d; ++i) slope += grad[i] * (cand[i] - outcome.x[i]);
      const double cand_value = value_at(cand);
      if (cand_value >= value + options.armijo_c * slope) {
        outcome.x.swap(cand);
        value = cand_value;
        accepted = true;
        break;
      }
      s *= options.backtrack;
    }
    if (!accepted) break;  // step collapsed: treat as a stall at this point
    step = std::min(s * 2.0, 1e6);
  }
  outcome.value = value;
  return outcome;
}

}  // namespace

NppResult npp_solve(const FractionalObjective& objective, double mu,
                    std::span<const std::vector<double>> starts, const NppOptions& options) {
  if (starts.empty()) throw Error(ErrorKind::BadConfig, "npp_solve needs at least one start");
  std::vector<AscentOutcome> outcomes(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    outcomes[i] = ascend(objective, mu, starts[i], options);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].value > outcomes[best].value) best = i;
  return NppResult{std::move(outcomes[best].x), outcomes[best].value, outcomes[best].converged};
}

DinkelbachResult dinkelbach(const FractionalObjective& objective, std::span<const double> x0,
                            const DinkelbachOptions& options) {
  const std::size_t d = objective.dim();

  std::vector<double> uniform(d, 0.0);
  {
    auto fill_block = [&](std::size_t offset, std::size_t len) {
      for (std::size_t i = 0; i < len; ++i)
        uniform[offset + i] = 1.0 / static_cast<double>(len);
    };
    if (objective.lambda_dim() > 0) fill_block(0, objective.lambda_dim());
    if (objective.omega_dim() > 0) fill_block(objective.lambda_dim(), objective.omega_dim());
  }
  std::vector<double> anchor(uniform);
  if (x0.size() == d) {
    anchor.assign(x0.begin(), x0.end());
    project_feasible(objective, anchor);
  }

  // Two Dirichlet(1) draws, fixed for the whole run.
  std::mt19937_64 rng(options.seed);
  std::exponential_distribution<double> expo(1.0);
  auto dirichlet = [&] {
    std::vector<double> x(d, 0.0);
    auto fill_block = [&](std::size_t offset, std::size_t len) {
      double total = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        x[offset + i] = expo(rng);
        total += x[offset + i];
      }
      for (std::size_t i = 0; i < len; ++i) x[offset + i] /= total;
    };
    if (objective.lambda_dim() > 0) fill_block(0, objective.lambda_dim());
    if (objective.omega_dim() > 0) fill_block(objective.lambda_dim(), objective.omega_dim());
    return x;
  };
  const std::vector<double> draw1 = dirichlet();
  const std::vector<double> draw2 = dirichlet();

  const double scale = std::max(std::abs(objective.f(uniform)), 1e-12);
  const double tol = options.tol_rel * scale;

  DinkelbachResult result;
  result.x = anchor;
  double mu = 0.0;
  std::vector<double> previous = anchor;
  for (int i = 0; i < options.max_iters; ++i) {
    const std::vector<std::vector<double>> starts{uniform, previous, anchor, draw1, draw2};
    NppResult inner = npp_solve(objective, mu, starts, options.npp);
    if (!inner.converged) result.trace.warning = true;
    if (!result.trace.f_minus_mu_g.empty() && inner.value >= result.trace.f_minus_mu_g.back())
      throw Error(ErrorKind::InvariantViolation,
                  "parametric optimum failed to decrease across iterations");
    result.trace.mus.push_back(mu);
    result.trace.f_minus_mu_g.push_back(inner.value);
    result.trace.iterations = i + 1;
    result.x = inner.x;
    previous = std::move(inner.x);
    if (std::abs(inner.value) <= tol) {
      result.trace.converged = true;
      break;
    }
    const double f_val = objective.f(previous);
    const double g_val = objective.g(previous);
    if (!(g_val > 0.0))
      throw Error(ErrorKind::InvariantViolation, "denominator polynomial is not positive");
    const double mu_next = f_val / g_val;
    if (mu_next <= mu)
      throw Error(ErrorKind::InvariantViolation, "ratio parameter failed to increase");
    mu = mu_next;
  }
  return result;
}

}  // namespace schain
