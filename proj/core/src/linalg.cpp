#include "pframes/linalg.hpp"

#include <string>

#include "pframes/error.hpp"

namespace pframes {

void require_finite(const Eigen::Ref<const Matrix>& m, std::string_view what) {
  if (!m.allFinite()) throw Error(Errc::NonFinite, std::string(what) + " contains NaN or Inf");
}

void require_dim(Eigen::Index actual, Eigen::Index expected, std::string_view what) {
  if (actual != expected) {
    throw Error(Errc::DimensionMismatch, std::string(what) + ": expected length " +
                                             std::to_string(expected) + ", got " +
                                             std::to_string(actual));
  }
}

Vector symmetric_eigenvalues(const Matrix& m) {
  if (m.size() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(Errc::SolverFailure, "symmetric eigensolver did not converge");
  return es.eigenvalues();
}

double asymmetry(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace pframes
