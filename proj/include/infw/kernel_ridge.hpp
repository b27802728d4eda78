#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <utility>

#include "infw/common.hpp"

namespace infw {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using KernelFn = std::function<double(const Vector&, const Vector&)>;

inline double gaussian_kernel(const Vector& x, const Vector& x2, double sigma) {
  require(x.size() == x2.size(), "gaussian_kernel: dimension mismatch");
  require(sigma > 0.0, "gaussian_kernel: sigma must be positive");
  return std::exp(-(x - x2).squaredNorm() / (2.0 * sigma * sigma));
}

inline KernelFn make_gaussian(double sigma) {
  require(sigma > 0.0, "make_gaussian: sigma must be positive");
  return [sigma](const Vector& a, const Vector& b) {
    return gaussian_kernel(a, b, sigma);
  };
}

// Training inputs, one row per point.
struct FeatureMatrix {
  Matrix values;

  FeatureMatrix() = default;
  explicit FeatureMatrix(Matrix m) : values(std::move(m)) {
    require(values.rows() >= 1 && values.cols() >= 1,
            "FeatureMatrix: need n >= 1 and d >= 1");
    require(values.allFinite(), "FeatureMatrix: entries must be finite");
  }

  int n() const { return static_cast<int>(values.rows()); }
  int d() const { return static_cast<int>(values.cols()); }
  Vector row(int i) const { return values.row(i).transpose(); }
};

struct GramMatrix {
  Matrix values;
  int n() const { return static_cast<int>(values.rows()); }
};

inline GramMatrix gram(const FeatureMatrix& X, const KernelFn& kernel) {
  const int n = X.n();
  Matrix K(n, n);
  for (int i = 0; i < n; ++i) {
    const Vector xi = X.row(i);
    K(i, i) = kernel(xi, xi);
    for (int j = i + 1; j < n; ++j) {
      const double v = kernel(xi, X.row(j));
      K(i, j) = v;
      K(j, i) = v;  // exact symmetry by construction
    }
  }
  return {std::move(K)};
}

inline GramMatrix gram(const FeatureMatrix& X, double sigma) {
  return gram(X, make_gaussian(sigma));
}

// Cholesky factorization of K + n*lambda*I, reusable across right-hand sides.
class RidgeFactorization {
 public:
  RidgeFactorization(const GramMatrix& K, double lambda) : lambda_(lambda) {
    require(lambda >= 0.0, "ridge_factorize: lambda must be non-negative");
    require(K.values.rows() == K.values.cols() && K.values.rows() >= 1,
            "ridge_factorize: Gram matrix must be square, n >= 1");
    require(K.values.allFinite(), "ridge_factorize: non-finite Gram entries");
    const int n = K.n();
    Matrix reg = K.values + static_cast<double>(n) * lambda *
                                Matrix::Identity(n, n);
    llt_.compute(reg);
    if (llt_.info() != Eigen::Success)
      throw std::runtime_error("ridge_factorize: factorization failed");
  }

  int n() const { return static_cast<int>(llt_.matrixL().rows()); }
  double lambda() const { return lambda_; }

  Matrix solve(const Matrix& rhs) const {
    require(rhs.rows() == n(), "RidgeFactorization::solve: shape mismatch");
    return llt_.solve(rhs);
  }

  Vector solve(const Vector& rhs) const {
    require(rhs.size() == n(), "RidgeFactorization::solve: shape mismatch");
    return llt_.solve(rhs);
  }

 private:
  Eigen::LLT<Matrix> llt_;
  double lambda_;
};

inline RidgeFactorization ridge_factorize(const GramMatrix& K, double lambda) {
  return RidgeFactorization(K, lambda);
}

// Signed weights alpha(x) approximating the conditional weak distribution at
// a query point.
struct AlphaWeights {
  Vector weights;
  Vector query;
};

// Gaussian-kernel ridge model: keeps the training inputs for kernel rows and
// the factorization of K + n*lambda*I. Immutable after fit(); all queries are
// const and safe to run concurrently.
class RidgeModel {
 public:
  static RidgeModel fit(FeatureMatrix X, double sigma, double lambda) {
    return RidgeModel(std::move(X), make_gaussian(sigma), sigma, lambda);
  }

  // Tests can inject any kernel (e.g. linear).
  static RidgeModel fit(FeatureMatrix X, KernelFn kernel, double lambda) {
    return RidgeModel(std::move(X), std::move(kernel), 0.0, lambda);
  }

  int n() const { return X_.n(); }
  int d() const { return X_.d(); }
  double lambda() const { return fac_.lambda(); }
  double sigma() const { return sigma_; }
  const FeatureMatrix& inputs() const { return X_; }

  // v(x)_i = k(x, x_i)
  Vector kernel_row(const Vector& x) const {
    require(x.size() == X_.d(), "kernel_row: dimension mismatch");
    Vector v(X_.n());
    for (int i = 0; i < X_.n(); ++i) v(i) = kernel_(x, X_.row(i));
    return v;
  }

  AlphaWeights alpha(const Vector& x) const {
    Vector v = kernel_row(x);
    return {fac_.solve(v), x};
  }

  // beta = (K + n*lambda*I)^{-1} L, one column per output score.
  Matrix scores(const Matrix& L) const {
    require(L.rows() == X_.n(), "scores: L must have n rows");
    return fac_.solve(L);
  }

 private:
  RidgeModel(FeatureMatrix X, KernelFn kernel, double sigma, double lambda)
      : X_(std::move(X)),
        kernel_(std::move(kernel)),
        sigma_(sigma),
        fac_(gram(X_, kernel_), lambda) {}

  FeatureMatrix X_;
  KernelFn kernel_;
  double sigma_;
  RidgeFactorization fac_;
};

inline AlphaWeights alpha_weights(const RidgeModel& model, const Vector& x) {
  return model.alpha(x);
}

inline Matrix train_scores(const RidgeModel& model, const Matrix& L) {
  return model.scores(L);
}

}  // namespace infw
