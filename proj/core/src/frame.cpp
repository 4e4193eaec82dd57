#include "pframes/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pframes/error.hpp"

namespace pframes {

Frame::Frame(Matrix columns) : vectors_(std::move(columns)) {
  frame_operator_ = vectors_ * vectors_.transpose();
  // Exact symmetry; the product is symmetric only up to rounding.
  frame_operator_ = (0.5 * (frame_operator_ + frame_operator_.transpose())).eval();
  const Vector ev = symmetric_eigenvalues(frame_operator_);
  lower_ = std::max(0.0, ev(0));
  upper_ = ev(ev.size() - 1);
  if (!(upper_ > 0.0)) throw Error(Errc::NotAFrame, "all frame vectors are zero");
}

Frame Frame::build(std::span<const Vector> vectors) {
  if (vectors.empty()) throw Error(Errc::InvalidArgument, "frame needs at least one vector");
  const Eigen::Index n = vectors.front().size();
  if (n == 0) throw Error(Errc::InvalidArgument, "frame vectors must have positive dimension");
  Matrix cols(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    require_dim(vectors[k].size(), n, "frame vector " + std::to_string(k));
    cols.col(static_cast<Eigen::Index>(k)) = vectors[k];
  }
  return from_columns(std::move(cols));
}

Frame Frame::from_columns(Matrix columns) {
  if (columns.cols() == 0 || columns.rows() == 0) {
    throw Error(Errc::InvalidArgument, "frame needs at least one vector of positive dimension");
  }
  require_finite(columns, "frame vectors");
  return Frame(std::move(columns));
}

bool Frame::is_tight(double rel_tol) const noexcept {
  return is_frame() && (upper_ - lower_) <= rel_tol * upper_;
}

bool Frame::is_parseval(double tol) const noexcept {
  return std::abs(lower_ - 1.0) <= tol && std::abs(upper_ - 1.0) <= tol;
}

Vector analysis(const Frame& frame, const Vector& x) {
  require_dim(x.size(), frame.dim(), "analysis input");
  return frame.vectors().transpose() * x;
}

Vector synthesis(const Frame& frame, const Vector& c) {
  require_dim(c.size(), frame.size(), "synthesis coefficients");
  return frame.vectors() * c;
}

GramMatrix GramMatrix::from_matrix(Matrix entries) {
  if (entries.rows() != entries.cols()) throw Error(Errc::InvalidArgument, "Gramian must be square");
  require_finite(entries, "Gramian");
  if (asymmetry(entries) > 1e-12) throw Error(Errc::InvalidArgument, "Gramian is not symmetric");
  Vector ev = symmetric_eigenvalues(entries);
  if (ev.size() > 0 && ev(0) < -kTolPsd) {
    throw Error(Errc::InvalidArgument,
                "Gramian is not positive semidefinite (min eigenvalue " + std::to_string(ev(0)) + ")");
  }
  return GramMatrix(std::move(entries), std::move(ev));
}

GramMatrix GramMatrix::leading(Eigen::Index n) const {
  if (n < 1 || n > size()) throw Error(Errc::IndexOutOfRange, "leading block size out of range");
  return from_matrix(entries_.topLeftCorner(n, n));
}

Vector GramMatrix::leading_minors() const {
  Vector out(size());
  for (Eigen::Index n = 1; n <= size(); ++n) {
    out(n - 1) = entries_.topLeftCorner(n, n).partialPivLu().determinant();
  }
  return out;
}

GramMatrix gram(const Frame& frame) {
  Matrix g = frame.vectors().transpose() * frame.vectors();
  g = (0.5 * (g + g.transpose())).eval();
  return GramMatrix::from_matrix(std::move(g));
}

RieszCheck verify_riesz_upper(const Frame& frame, const Vector& c) {
  require_dim(c.size(), frame.size(), "Riesz coefficients");
  RieszCheck r;
  // c^T G c = |T^* c|^2, evaluated through the Gramian as written.
  const Matrix& phi = frame.vectors();
  r.lhs = c.dot((phi.transpose() * phi) * c);
  r.bound = frame.upper_bound() * c.squaredNorm();
  r.ok = r.lhs <= r.bound + kTolIneq;
  return r;
}

Frame dual_frame(const Frame& frame) {
  if (!frame.is_frame()) {
    throw Error(Errc::NotAFrame, "canonical dual requires a spanning family (alpha = " +
                                     std::to_string(frame.lower_bound()) + ")");
  }
  Eigen::LDLT<Matrix> ldlt(frame.frame_operator());
  return Frame::from_columns(ldlt.solve(frame.vectors()));
}

}  // namespace pframes
