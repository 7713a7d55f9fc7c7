#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <stdexcept>
#include <variant>

namespace limitspec {

/// A finite-dimensional operator, stored sparse real, dense real, or dense
/// complex. `self_adjoint` is a construction-time promise used to pick
/// eigensolvers.
class OperatorMatrix {
 public:
  using SparseReal = Eigen::SparseMatrix<double>;

  static OperatorMatrix sparse(SparseReal m, bool self_adjoint) {
    return OperatorMatrix(std::move(m), self_adjoint);
  }
  static OperatorMatrix dense(Eigen::MatrixXd m, bool self_adjoint) {
    return OperatorMatrix(std::move(m), self_adjoint);
  }
  static OperatorMatrix dense_complex(Eigen::MatrixXcd m, bool self_adjoint) {
    return OperatorMatrix(std::move(m), self_adjoint);
  }

  long long rows() const {
    return std::visit([](const auto& m) { return static_cast<long long>(m.rows()); }, data_);
  }
  bool self_adjoint() const { return self_adjoint_; }
  bool is_sparse() const { return std::holds_alternative<SparseReal>(data_); }
  bool is_complex() const { return std::holds_alternative<Eigen::MatrixXcd>(data_); }

  const SparseReal& sparse_ref() const { return std::get<SparseReal>(data_); }
  const Eigen::MatrixXd& dense_ref() const { return std::get<Eigen::MatrixXd>(data_); }
  const Eigen::MatrixXcd& complex_ref() const { return std::get<Eigen::MatrixXcd>(data_); }

  Eigen::MatrixXd to_dense_real() const {
    if (is_complex()) {
      const auto& m = complex_ref();
      if (m.imag().cwiseAbs().maxCoeff() > 0)
        throw std::invalid_argument("OperatorMatrix: matrix has complex entries");
      return m.real();
    }
    if (is_sparse()) return Eigen::MatrixXd(sparse_ref());
    return dense_ref();
  }

  Eigen::MatrixXcd to_dense_complex() const {
    if (is_complex()) return complex_ref();
    return to_dense_real().cast<std::complex<double>>();
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const {
    if (is_complex()) throw std::invalid_argument("OperatorMatrix: real apply on complex matrix");
    if (is_sparse()) return sparse_ref() * v;
    return dense_ref() * v;
  }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const {
    if (is_complex()) return complex_ref() * v;
    const Eigen::VectorXd re = v.real();
    const Eigen::VectorXd im = v.imag();
    Eigen::VectorXcd out(v.size());
    out.real() = apply(re);
    out.imag() = apply(im);
    return out;
  }

  /// Max absolute row sum; an upper bound for the spectral norm of a
  /// self-adjoint matrix.
  double norm_estimate() const {
    if (is_sparse()) {
      const auto& m = sparse_ref();
      Eigen::VectorXd sums = Eigen::VectorXd::Zero(m.rows());
      for (int k = 0; k < m.outerSize(); ++k)
        for (SparseReal::InnerIterator it(m, k); it; ++it)
          sums[it.row()] += std::abs(it.value());
      return sums.size() ? sums.maxCoeff() : 0.0;
    }
    if (is_complex()) return complex_ref().cwiseAbs().rowwise().sum().maxCoeff();
    const auto& m = dense_ref();
    return m.size() ? m.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  }

 private:
  template <typename M>
  OperatorMatrix(M m, bool sa) : data_(std::move(m)), self_adjoint_(sa) {}

  std::variant<SparseReal, Eigen::MatrixXd, Eigen::MatrixXcd> data_;
  bool self_adjoint_ = false;
};

}  // namespace limitspec
