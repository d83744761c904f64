#pragma once

#include "oracle.hpp"
#include "qauth/qsim.hpp"

namespace qauth_test {

inline oracle::Vec to_eigen(const qauth::qsim::StateVector& s) {
  oracle::Vec v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

}  // namespace qauth_test
