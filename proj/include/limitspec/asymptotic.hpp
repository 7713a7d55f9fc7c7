#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace limitspec {

/// A bounded uniformly continuous function on R^q with a uniform radial
/// limit at infinity, drawn from a closed parametric set so the limit can be
/// evaluated exactly. Sums and products stay in the set.
class AsymptoticFunction {
 public:
  enum class Kind {
    Constant,            // c
    GaussianWell,        // -depth * exp(-|z|^2 / width^2)
    PoschlTeller,        // -strength / cosh^2(z), one variable only
    RegularizedCoulomb,  // charge / sqrt(1 + |z|^2)
    AngularProfile,      // rho(|z|) * (offset + coeffs . z/|z|), rho(r) = r^2/(1+r^2)
    Sum,
    Product,
  };

  static AsymptoticFunction constant(int q, double c) {
    AsymptoticFunction f(Kind::Constant, q);
    f.a_ = c;
    return f;
  }
  static AsymptoticFunction gaussian_well(int q, double depth, double width) {
    if (width <= 0) throw std::invalid_argument("gaussian_well: width must be positive");
    AsymptoticFunction f(Kind::GaussianWell, q);
    f.a_ = depth;
    f.b_ = width;
    return f;
  }
  static AsymptoticFunction poschl_teller(double strength) {
    AsymptoticFunction f(Kind::PoschlTeller, 1);
    f.a_ = strength;
    return f;
  }
  static AsymptoticFunction regularized_coulomb(int q, double charge) {
    AsymptoticFunction f(Kind::RegularizedCoulomb, q);
    f.a_ = charge;
    return f;
  }
  static AsymptoticFunction angular_profile(int q, double offset, Eigen::VectorXd coeffs) {
    if (coeffs.size() != q)
      throw std::invalid_argument("angular_profile: coefficient length != dimension");
    AsymptoticFunction f(Kind::AngularProfile, q);
    f.a_ = offset;
    f.coeffs_ = std::move(coeffs);
    return f;
  }
  static AsymptoticFunction sum(std::vector<AsymptoticFunction> terms) {
    return combine(Kind::Sum, std::move(terms));
  }
  static AsymptoticFunction product(std::vector<AsymptoticFunction> factors) {
    return combine(Kind::Product, std::move(factors));
  }

  Kind kind() const { return kind_; }
  int quotient_dim() const { return q_; }
  double param1() const { return a_; }
  double param2() const { return b_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  const std::vector<AsymptoticFunction>& children() const { return children_; }

  double value(const Eigen::VectorXd& z) const {
    if (z.size() != q_) throw std::invalid_argument("AsymptoticFunction: point dimension");
    switch (kind_) {
      case Kind::Constant:
        return a_;
      case Kind::GaussianWell:
        return -a_ * std::exp(-z.squaredNorm() / (b_ * b_));
      case Kind::PoschlTeller: {
        const double c = std::cosh(z[0]);
        return -a_ / (c * c);
      }
      case Kind::RegularizedCoulomb:
        return a_ / std::sqrt(1.0 + z.squaredNorm());
      case Kind::AngularProfile: {
        const double r = z.norm();
        if (r == 0.0) return 0.0;
        const double blend = r * r / (1.0 + r * r);
        return blend * (a_ + coeffs_.dot(z) / r);
      }
      case Kind::Sum: {
        double s = 0;
        for (const auto& c : children_) s += c.value(z);
        return s;
      }
      case Kind::Product: {
        double p = 1;
        for (const auto& c : children_) p *= c.value(z);
        return p;
      }
    }
    return 0;
  }

  /// Exact radial limit lim_{r->inf} v(r omega) for a unit vector omega.
  double radial_limit(const Eigen::VectorXd& omega) const {
    if (omega.size() != q_) throw std::invalid_argument("radial_limit: direction dimension");
    switch (kind_) {
      case Kind::Constant:
        return a_;
      case Kind::GaussianWell:
      case Kind::PoschlTeller:
      case Kind::RegularizedCoulomb:
        return 0.0;
      case Kind::AngularProfile:
        return a_ + coeffs_.dot(omega);
      case Kind::Sum: {
        double s = 0;
        for (const auto& c : children_) s += c.radial_limit(omega);
        return s;
      }
      case Kind::Product: {
        double p = 1;
        for (const auto& c : children_) p *= c.radial_limit(omega);
        return p;
      }
    }
    return 0;
  }

  /// Structurally zero radial limit (the function lies in C_0).
  bool vanishes_at_infinity() const {
    switch (kind_) {
      case Kind::Constant:
        return a_ == 0.0;
      case Kind::GaussianWell:
      case Kind::PoschlTeller:
      case Kind::RegularizedCoulomb:
        return true;
      case Kind::AngularProfile:
        return a_ == 0.0 && coeffs_.isZero(0.0);
      case Kind::Sum: {
        for (const auto& c : children_)
          if (!c.vanishes_at_infinity()) return false;
        return true;
      }
      case Kind::Product: {
        for (const auto& c : children_)
          if (c.vanishes_at_infinity()) return true;
        return false;
      }
    }
    return false;
  }

  /// v(-z) = v(z), decided structurally.
  bool is_even() const {
    switch (kind_) {
      case Kind::Constant:
      case Kind::GaussianWell:
      case Kind::PoschlTeller:
      case Kind::RegularizedCoulomb:
        return true;
      case Kind::AngularProfile:
        return coeffs_.isZero(0.0);
      case Kind::Sum:
      case Kind::Product: {
        for (const auto& c : children_)
          if (!c.is_even()) return false;
        return true;
      }
    }
    return false;
  }

  friend bool operator==(const AsymptoticFunction& x, const AsymptoticFunction& y) {
    return x.kind_ == y.kind_ && x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_ &&
           x.coeffs_ == y.coeffs_ && x.children_ == y.children_;
  }

 private:
  AsymptoticFunction(Kind k, int q) : kind_(k), q_(q) {
    if (q < 0) throw std::invalid_argument("AsymptoticFunction: negative dimension");
  }
  static AsymptoticFunction combine(Kind k, std::vector<AsymptoticFunction> children) {
    if (children.empty()) throw std::invalid_argument("sum/product of nothing");
    for (const auto& c : children)
      if (c.q_ != children[0].q_)
        throw std::invalid_argument("sum/product: mixed dimensions");
    AsymptoticFunction f(k, children[0].q_);
    f.children_ = std::move(children);
    return f;
  }

  Kind kind_;
  int q_;
  double a_ = 0;
  double b_ = 0;
  Eigen::VectorXd coeffs_;
  std::vector<AsymptoticFunction> children_;
};

}  // namespace limitspec
