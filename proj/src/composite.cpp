#include "schain/composite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "schain/error.hpp"
#include "schain/kernels.hpp"

namespace schain {

double LinearForm::evaluate(std::span<const double> lambda, std::span<const double> omega) const {
  double out = constant;
  out += kernels::dot(lambda_coeffs.data(), lambda.data(),
                      std::min(lambda_coeffs.size(), lambda.size()));
  out += kernels::dot(omega_coeffs.data(), omega.data(),
                      std::min(omega_coeffs.size(), omega.size()));
  return out;
}

LinearForm& LinearForm::add_scaled(const LinearForm& other, double factor) {
  lambda_coeffs.resize(std::max(lambda_coeffs.size(), other.lambda_coeffs.size()), 0.0);
  omega_coeffs.resize(std::max(omega_coeffs.size(), other.omega_coeffs.size()), 0.0);
  kernels::axpy(factor, other.lambda_coeffs.data(), lambda_coeffs.data(),
                other.lambda_coeffs.size());
  kernels::axpy(factor, other.omega_coeffs.data(), omega_coeffs.data(),
                other.omega_coeffs.size());
  constant += factor * other.constant;
  return *this;
}

std::vector<Matrix> attribute_components(const Matrix& attrs) {
  const std::size_t n = attrs.rows();
  std::vector<Matrix> out;
  out.reserve(attrs.cols());
  std::vector<double> scaled(n);
  for (std::size_t j = 0; j < attrs.cols(); ++j) {
    double lo = attrs(0, j), hi = attrs(0, j);
    for (std::size_t u = 1; u < n; ++u) {
      lo = std::min(lo, attrs(u, j));
      hi = std::max(hi, attrs(u, j));
    }
    Matrix a(n, n, 1.0);
    if (hi > lo) {
      const double inv_range = 1.0 / (hi - lo);
      for (std::size_t u = 0; u < n; ++u) scaled[u] = (attrs(u, j) - lo) * inv_range;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) a(u, v) = 1.0 - std::abs(scaled[u] - scaled[v]);
    }
    out.push_back(std::move(a));
  }
  return out;
}

Matrix constraint_matrix(const ConstraintSet& constraints, std::size_t n) {
  Matrix w(n, n, 0.0);
  for (const auto& [u, v] : constraints.must_link) w(u, v) = w(v, u) = 1.0;
  for (const auto& [u, v] : constraints.cannot_link) w(u, v) = w(v, u) = -1.0;
  return w;
}

CompositeModel CompositeModel::assemble(std::vector<Tssn> pathsims,
                                        std::vector<Matrix> attr_components, Matrix constraints,
                                        double alpha, double gamma) {
  if (pathsims.empty() && attr_components.empty())
    throw Error(ErrorKind::DimensionMismatch, "model needs at least one meta-path or attribute");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorKind::BadConfig, "alpha must lie in [0,1]");
  if (!(gamma >= 0.0)) throw Error(ErrorKind::BadConfig, "gamma must be nonnegative");

  CompositeModel model;
  model.n_ = pathsims.empty() ? attr_components.front().rows() : pathsims.front().weights.rows();
  auto check_dims = [&](const Matrix& m, const char* what) {
    if (m.rows() != model.n_ || m.cols() != model.n_) {
      std::ostringstream os;
      os << what << " is " << m.rows() << "x" << m.cols() << ", expected " << model.n_ << "x"
         << model.n_;
      throw Error(ErrorKind::DimensionMismatch, os.str());
    }
  };
  for (const auto& t : pathsims) check_dims(t.weights, "meta-path similarity matrix");
  for (const auto& a : attr_components) check_dims(a, "attribute component");
  if (constraints.empty()) constraints = Matrix(model.n_, model.n_, 0.0);
  check_dims(constraints, "constraint matrix");

  model.alpha_ = alpha;
  model.gamma_ = gamma;
  model.paths_ = std::move(pathsims);
  model.attrs_ = std::move(attr_components);
  model.w_ = std::move(constraints);
  return model;
}

LinearForm CompositeModel::entry_form(std::size_t u, std::size_t v) const {
  LinearForm form;
  form.lambda_coeffs.resize(paths_.size());
  form.omega_coeffs.resize(attrs_.size());
  for (std::size_t p = 0; p < paths_.size(); ++p)
    form.lambda_coeffs[p] = (1.0 - alpha_) * paths_[p].weights(u, v);
  for (std::size_t j = 0; j < attrs_.size(); ++j)
    form.omega_coeffs[j] = alpha_ * attrs_[j](u, v);
  return form;
}

LinearForm CompositeModel::degree_form(std::size_t u) const {
  LinearForm form;
  form.lambda_coeffs.resize(paths_.size());
  form.omega_coeffs.resize(attrs_.size());
  for (std::size_t p = 0; p < paths_.size(); ++p) {
    const auto row = paths_[p].weights.row(u);
    form.lambda_coeffs[p] = (1.0 - alpha_) * kernels::sum(row.data(), row.size());
  }
  for (std::size_t j = 0; j < attrs_.size(); ++j) {
    const auto row = attrs_[j].row(u);
    form.omega_coeffs[j] = alpha_ * kernels::sum(row.data(), row.size());
  }
  form.constant = kDegreeShift;
  return form;
}

CompositeModel::Evaluation CompositeModel::evaluate(std::span<const double> lambda,
                                                    std::span<const double> omega) const {
  check_feasible(lambda, omega);
  Evaluation ev{Matrix(n_, n_, 0.0), Matrix(n_, n_, 0.0), std::vector<double>(n_, 0.0)};
  const std::size_t total = n_ * n_;
  for (std::size_t p = 0; p < paths_.size(); ++p)
    kernels::axpy((1.0 - alpha_) * lambda[p], paths_[p].weights.data(), ev.S.data(), total);
  for (std::size_t j = 0; j < attrs_.size(); ++j)
    kernels::axpy(alpha_ * omega[j], attrs_[j].data(), ev.S.data(), total);
  kernels::hadamard(w_.data(), ev.S.data(), ev.WS.data(), total);
  for (std::size_t u = 0; u < n_; ++u)
    ev.D[u] = kernels::sum(ev.S.row(u).data(), n_) + kDegreeShift;
  return ev;
}

void CompositeModel::check_feasible(std::span<const double> lambda,
                                    std::span<const double> omega) const {
  auto check = [](std::span<const double> w, const char* which) {
    if (w.empty()) return;
    double total = 0.0;
    for (const double v : w) {
      if (v < -1e-12)
        throw Error(ErrorKind::InfeasibleWeights, std::string(which) + " weight is negative");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw Error(ErrorKind::InfeasibleWeights, std::string(which) + " weights do not sum to 1");
  };
  if (lambda.size() != paths_.size() || omega.size() != attrs_.size())
    throw Error(ErrorKind::DimensionMismatch, "weight vector length mismatch");
  check(lambda, "meta-path");
  check(omega, "attribute");
}

std::vector<double> uniform_weights(std::size_t count) {
  return std::vector<double>(count, count == 0 ? 0.0 : 1.0 / static_cast<double>(count));
}

std::vector<double> CompositeModel::uniform_lambda() const { return uniform_weights(paths_.size()); }
std::vector<double> CompositeModel::uniform_omega() const { return uniform_weights(attrs_.size()); }

}  // namespace schain
