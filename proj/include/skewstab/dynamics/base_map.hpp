#pragma once

#include <string>

namespace skewstab::dynamics {

/// Near-identity circle diffeomorphism sigma(x) = x + delta sin(2 pi x) / (2 pi).
struct Sigma {
  double delta = 0.0;

  double operator()(double x) const;
  double derivative(double x) const;
  /// Inverse on [0, 1]; sigma fixes 0 and 1.
  double inverse(double y) const;
  bool is_identity() const { return delta == 0.0; }
};

/// Full-branch piecewise expanding map T(x) = l sigma(x) mod 1 on [0, 1).
class BaseMap {
 public:
  static BaseMap linear(int l);
  static BaseMap linear_precomposed(int l, Sigma sigma);

  int branch_count() const { return l_; }
  const Sigma& sigma() const { return sigma_; }
  bool is_linear() const { return sigma_.is_identity(); }
  std::string kind() const { return is_linear() ? "linear" : "linear_precomposed"; }

  double apply(double x) const;
  /// Preimage of y in [0, 1] under branch b.
  double inverse(int b, double y) const;
  double derivative(double x) const;

  /// 1 / |T'| <= lambda.
  double lambda() const { return lambda_; }
  /// Hoelder constant (exponent xi) of 1 / |T' o T_b^-1|.
  double holder_constant() const { return c_h_; }
  double xi() const { return 1.0; }

 private:
  BaseMap(int l, Sigma sigma);
  int l_;
  Sigma sigma_;
  double lambda_;
  double c_h_;
};

}  // namespace skewstab::dynamics
