#pragma once

#include <initializer_list>
#include <vector>

#include "krein/riesz.hpp"

namespace testutil {

using krein::Complex;
using krein::ComplexMatrix;
using krein::KreinVector;

inline KreinVector vec(std::initializer_list<Complex> xs) {
  KreinVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (auto x : xs) v(k++) = x;
  return v;
}

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  ComplexMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (auto x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline krein::SpacePtr signature_space(std::size_t p, std::size_t q) {
  return krein::KreinSpace::create(krein::KreinMetric::from_signature(p, q));
}

inline krein::SpacePtr space_of(const ComplexMatrix& g) {
  return krein::KreinSpace::create(krein::KreinMetric(g));
}

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace testutil
