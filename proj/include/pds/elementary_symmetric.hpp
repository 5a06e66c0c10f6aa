#pragma once

#include <Eigen/Dense>

#include "pds/errors.hpp"

namespace pds {

/// e_0..e_kmax of `values` by the O(n kmax) recurrence
/// e_j <- e_j + x e_{j-1}, processed from high j to low j for every x.
/// Only additions of nonnegative terms occur for nonnegative input.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
elementary_symmetric_all(const Eigen::MatrixBase<Derived>& values,
                         Eigen::Index kmax) {
  using Scalar = typename Derived::Scalar;
  if (kmax < 0 || kmax > values.size()) {
    throw InputError("elementary_symmetric: k must be in [0, length]");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(kmax + 1);
  e(0) = Scalar(1);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const Scalar x = values(i);
    for (Eigen::Index j = std::min<Eigen::Index>(i + 1, kmax); j >= 1; --j) {
      e(j) += x * e(j - 1);
    }
  }
  return e;
}

/// e_k(values) = sum over i_1 < ... < i_k of the product of the entries.
template <typename Derived>
typename Derived::Scalar elementary_symmetric(
    const Eigen::MatrixBase<Derived>& values, Eigen::Index k) {
  return elementary_symmetric_all(values, k)(k);
}

}  // namespace pds
