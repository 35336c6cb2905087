// Copyright 2026 The STAD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Linear softmax relation classifier and its losses.
//
// All functions are templated on the scalar type so that oracles (finite
// differences in long double, for example) can reuse the exact same code.

#ifndef STAD_MODEL_HPP_
#define STAD_MODEL_HPP_

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace stad {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// log() arguments are clamped here so that p_i = 0 or 1 - p_i = 0 stay finite.
template <typename Scalar>
inline constexpr Scalar kProbabilityFloor = Scalar(1e-12);

// p = softmax(W h + b). W is M x D.
template <typename Scalar>
struct LinearModel {
  Mat<Scalar> W;
  Vec<Scalar> b;

  static LinearModel zeros(Eigen::Index relations, Eigen::Index features) {
    return {Mat<Scalar>::Zero(relations, features), Vec<Scalar>::Zero(relations)};
  }

  Eigen::Index num_relations() const { return W.rows(); }
  Eigen::Index feature_dim() const { return W.cols(); }

  template <typename Other>
  LinearModel<Other> cast() const {
    return {W.template cast<Other>(), b.template cast<Other>()};
  }

  bool operator==(const LinearModel& o) const {
    return W.rows() == o.W.rows() && W.cols() == o.W.cols() && W == o.W && b == o.b;
  }
};

// Label vector y with the partial-label flag z. Positive training (z = 0)
// accepts one-hot, fractional or averaged multi-hot y; with z = 1 the entries
// of y mark labels pushed down by set-negative training.
template <typename Scalar>
struct LabelVector {
  Vec<Scalar> y;
  bool z = false;

  static LabelVector one_hot(Eigen::Index m, Eigen::Index k, bool z = false) {
    LabelVector out{Vec<Scalar>::Zero(m), z};
    out.y[k] = Scalar(1);
    return out;
  }
};

// Max-subtracted softmax over a column vector.
template <typename Derived>
Vec<typename Derived::Scalar> softmax(const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  Vec<Scalar> e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

// Row-wise softmax of an N x M logit matrix.
template <typename Derived>
Mat<typename Derived::Scalar> softmax_rows(const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> e =
      (logits.colwise() - logits.rowwise().maxCoeff()).array().exp().matrix();
  return e.array().colwise() / e.rowwise().sum().array();
}

template <typename Scalar, typename Derived>
Vec<Scalar> predict_proba(const LinearModel<Scalar>& model,
                          const Eigen::MatrixBase<Derived>& h) {
  if (h.size() != model.feature_dim()) {
    throw std::invalid_argument("feature length " + std::to_string(h.size()) +
                                " does not match model width " +
                                std::to_string(model.feature_dim()));
  }
  return softmax(Vec<Scalar>(model.W * h + model.b));
}

// Rows of `features` are instances; returns an N x M probability matrix.
template <typename Scalar, typename Derived>
Mat<Scalar> predict_proba_rows(const LinearModel<Scalar>& model,
                               const Eigen::MatrixBase<Derived>& features) {
  if (features.cols() != model.feature_dim()) {
    throw std::invalid_argument("feature width does not match model width");
  }
  Mat<Scalar> logits = (features * model.W.transpose()).rowwise() +
                       model.b.transpose();
  return softmax_rows(logits);
}

// -sum_i y_i log p_i
template <typename Scalar>
Scalar loss_positive(const Vec<Scalar>& p, const Vec<Scalar>& y) {
  const Scalar floor = kProbabilityFloor<Scalar>;
  return -(y.array() * p.array().max(floor).log()).sum();
}

// -sum_i y_i log(1 - p_i)
template <typename Scalar>
Scalar loss_set_negative(const Vec<Scalar>& p, const Vec<Scalar>& y) {
  const Scalar floor = kProbabilityFloor<Scalar>;
  return -(y.array() * (Scalar(1) - p.array()).max(floor).log()).sum();
}

// -sum_i y_i log|z - p_i|: positive training for z = 0, set-negative
// training for z = 1.
template <typename Scalar>
Scalar loss_unified(const Vec<Scalar>& p, const LabelVector<Scalar>& label) {
  const Scalar floor = kProbabilityFloor<Scalar>;
  const Scalar z = label.z ? Scalar(1) : Scalar(0);
  return -(label.y.array() * (z - p.array()).abs().max(floor).log()).sum();
}

// d loss_unified / d logits.
//   z = 0:  p * sum(y) - y                       (p - y for one-hot y)
//   z = 1:  c - p * sum(c),  c_i = y_i p_i / (1 - p_i)
// For a one-hot negative label k the z = 1 case is (p_k / (1 - p_k)) (e_k - p),
// whose k-th entry is p_k.
template <typename Scalar>
Vec<Scalar> logit_gradient(const Vec<Scalar>& p, const LabelVector<Scalar>& label) {
  if (!label.z) return p * label.y.sum() - label.y;
  const Scalar floor = kProbabilityFloor<Scalar>;
  Vec<Scalar> c = (label.y.array() * p.array() /
                   (Scalar(1) - p.array()).max(floor)).matrix();
  return c - p * c.sum();
}

template <typename Scalar>
struct Gradient {
  Mat<Scalar> dW;
  Vec<Scalar> db;
};

// Mean gradient of loss_unified over the rows of `features` plus the
// (l2 / 2) ||W||^2 penalty. labels[i] belongs to row i.
template <typename Scalar, typename Derived>
Gradient<Scalar> gradient(const LinearModel<Scalar>& model,
                          const Eigen::MatrixBase<Derived>& features,
                          std::span<const LabelVector<Scalar>> labels,
                          Scalar l2 = Scalar(0)) {
  const auto n = features.rows();
  if (n == 0) throw std::invalid_argument("gradient of an empty batch");
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw std::invalid_argument("batch has mismatched features and labels");
  }
  const Mat<Scalar> probs = predict_proba_rows(model, features);
  Mat<Scalar> g(n, model.num_relations());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& label = labels[static_cast<std::size_t>(i)];
    if (label.y.size() != model.num_relations()) {
      throw std::invalid_argument("label length does not match relation count");
    }
    g.row(i) = logit_gradient<Scalar>(probs.row(i).transpose(), label).transpose();
  }
  const Scalar inv_n = Scalar(1) / static_cast<Scalar>(n);
  Gradient<Scalar> out;
  out.dW = inv_n * (g.transpose() * features);
  out.db = inv_n * g.colwise().sum().transpose();
  if (l2 != Scalar(0)) out.dW += l2 * model.W;
  return out;
}

// The objective `gradient` differentiates.
template <typename Scalar, typename Derived>
Scalar batch_objective(const LinearModel<Scalar>& model,
                       const Eigen::MatrixBase<Derived>& features,
                       std::span<const LabelVector<Scalar>> labels,
                       Scalar l2 = Scalar(0)) {
  const Mat<Scalar> probs = predict_proba_rows(model, features);
  Scalar total = 0;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    total += loss_unified<Scalar>(probs.row(i).transpose(),
                                  labels[static_cast<std::size_t>(i)]);
  }
  return total / static_cast<Scalar>(features.rows()) +
         l2 / Scalar(2) * model.W.squaredNorm();
}

template <typename Derived>
Eigen::Index argmax(const Eigen::MatrixBase<Derived>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;  // ties keep the lowest index
  }
  return best;
}

using Model = LinearModel<double>;
using Label = LabelVector<double>;

}  // namespace stad

#endif  // STAD_MODEL_HPP_
