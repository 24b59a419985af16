// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_FIELD_HPP
#define GKQ_FIELD_HPP

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gkq/dual.hpp"
#include "gkq/error.hpp"

namespace gkq {

enum class FieldKind { Scalar, Vector, Form, Matrix, Section };

/// Component layout of a field on an m-dimensional chart.
///   Scalar: 1; Vector: m; Form of degree k: m^k full antisymmetric array
///   (row-major in the index tuple); Matrix: rows*cols row-major;
///   Section: 2m, vector part first then covector part.
struct FieldShape {
  FieldKind kind = FieldKind::Scalar;
  int dim = 0;
  int degree = 0;
  int rows = 0;
  int cols = 0;

  int size() const;
  bool operator==(const FieldShape&) const = default;

  static FieldShape scalar(int m) { return {FieldKind::Scalar, m, 0, 0, 0}; }
  static FieldShape vector(int m) { return {FieldKind::Vector, m, 0, 0, 0}; }
  static FieldShape form(int m, int k) { return {FieldKind::Form, m, k, 0, 0}; }
  static FieldShape matrix(int m, int r, int c) { return {FieldKind::Matrix, m, 0, r, c}; }
  static FieldShape section(int m) { return {FieldKind::Section, m, 0, 0, 0}; }
};

/// Immutable smooth map from chart coordinates to a component array,
/// evaluable over double and over nested dual numbers up to depth 3.
/// Fields built from other fields' derivatives lose one level of depth per
/// derivative taken; `order()` is the deepest dual nesting still available.
class Field {
 public:
  template <class S>
  using Fn = std::function<void(std::span<const S>, std::span<S>)>;

  Field() = default;

  /// Wraps a generic callable `fn(std::span<const S> x, std::span<S> out)`.
  /// The callable is instantiated for every scalar up to `MaxDepth`.
  template <int MaxDepth = 3, class Lambda>
  static Field make(FieldShape shape, Lambda fn, int order = MaxDepth) {
    auto impl = std::make_shared<Impl>();
    impl->shape = shape;
    impl->order = std::min(order, MaxDepth);
    impl->f0 = slot<double, MaxDepth>(fn);
    impl->f1 = slot<D1, MaxDepth>(fn);
    impl->f2 = slot<D2, MaxDepth>(fn);
    impl->f3 = slot<D3, MaxDepth>(fn);
    Field f;
    f.impl_ = std::move(impl);
    return f;
  }

  bool valid() const { return static_cast<bool>(impl_); }
  const FieldShape& shape() const { return impl_->shape; }
  int dim() const { return impl_->shape.dim; }
  int size() const { return impl_->shape.size(); }
  int order() const { return impl_->order; }

  template <class S>
  void eval(std::span<const S> x, std::span<S> out) const {
    constexpr int depth = ad_depth_v<S>;
    if (depth > impl_->order)
      throw Error(ErrorCode::EvaluationFailure, "field evaluated beyond its differentiable order");
    if constexpr (depth == 0) impl_->f0(x, out);
    else if constexpr (depth == 1) impl_->f1(x, out);
    else if constexpr (depth == 2) impl_->f2(x, out);
    else impl_->f3(x, out);
  }

  template <class S>
  std::vector<S> eval(std::span<const S> x) const {
    std::vector<S> out(static_cast<std::size_t>(size()), S(0.0));
    eval<S>(x, std::span<S>(out));
    return out;
  }

  /// Plain evaluation at a chart point.
  Eigen::VectorXd at(const Eigen::VectorXd& p) const;

 private:
  struct Impl {
    FieldShape shape;
    int order = 3;
    Fn<double> f0;
    Fn<D1> f1;
    Fn<D2> f2;
    Fn<D3> f3;
  };

  template <class S, int MaxDepth, class Lambda>
  static Fn<S> slot(const Lambda& fn) {
    if constexpr (ad_depth_v<S> <= MaxDepth) {
      return [fn](std::span<const S> x, std::span<S> out) { fn(x, out); };
    } else {
      return [](std::span<const S>, std::span<S>) {
        throw Error(ErrorCode::EvaluationFailure, "derivative depth exhausted");
      };
    }
  }

  std::shared_ptr<const Impl> impl_;
};

/// Value and Jacobian of `f` at `x`: jac[c*m + i] = d f_c / d x_i.
template <class S>
void jet(const Field& f, std::span<const S> x, std::vector<S>& val, std::vector<S>& jac) {
  const int m = f.dim();
  const int n = f.size();
  std::vector<Dual<S>> xd(static_cast<std::size_t>(m));
  std::vector<Dual<S>> out(static_cast<std::size_t>(n));
  val.assign(static_cast<std::size_t>(n), S(0.0));
  jac.assign(static_cast<std::size_t>(n * m), S(0.0));
  if (m == 0) {
    f.eval<S>(x, std::span<S>(val));
    return;
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) xd[k] = Dual<S>(x[k], S(k == i ? 1.0 : 0.0));
    f.eval<Dual<S>>(std::span<const Dual<S>>(xd), std::span<Dual<S>>(out));
    for (int c = 0; c < n; ++c) {
      if (i == 0) val[c] = out[c].re;
      jac[c * m + i] = out[c].eps;
    }
  }
}

/// Numeric Jacobian (size() x m) of `f` at a plain point.
Eigen::MatrixXd jacobian_at(const Field& f, const Eigen::VectorXd& p);

// Strongly typed views.  Each wraps a Field whose shape matches the kind.

class ScalarField : public Field {
 public:
  ScalarField() = default;
  explicit ScalarField(Field f);
};

class VectorField : public Field {
 public:
  VectorField() = default;
  explicit VectorField(Field f);
};

/// Differential form of degree k (k >= 1); 0-forms are ScalarFields.
class FormField : public Field {
 public:
  FormField() = default;
  explicit FormField(Field f);
  int degree() const { return shape().degree; }
};

class MatrixField : public Field {
 public:
  MatrixField() = default;
  explicit MatrixField(Field f);
  int rows() const { return shape().rows; }
  int cols() const { return shape().cols; }
  Eigen::MatrixXd matrix_at(const Eigen::VectorXd& p) const;
};

/// Section X + xi of TM + T*M.
class SectionField : public Field {
 public:
  SectionField() = default;
  explicit SectionField(Field f);
};

/// Flat index of a form component with index tuple `idx`.
inline int form_offset(int m, std::span<const int> idx) {
  int off = 0;
  for (int i : idx) off = off * m + i;
  return off;
}

int int_pow(int base, int exp);

}  // namespace gkq

#endif  // GKQ_FIELD_HPP
