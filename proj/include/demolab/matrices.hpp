#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "demolab/errors.hpp"
#include "demolab/index_set.hpp"
#include "demolab/rng.hpp"

namespace demolab {

/// Entry distribution of a generated measurement matrix. All three are scaled
/// so the entry variance is exactly 1/rows.
enum class Dist { gaussian, rademacher, uniform };

inline const char* to_string(Dist d) {
  switch (d) {
    case Dist::gaussian: return "gaussian";
    case Dist::rademacher: return "rademacher";
    case Dist::uniform: return "uniform";
  }
  return "?";
}

inline Dist dist_from_string(std::string_view s) {
  if (s == "gaussian") return Dist::gaussian;
  if (s == "rademacher") return Dist::rademacher;
  if (s == "uniform") return Dist::uniform;
  throw PreconditionError("unknown distribution tag: " + std::string(s));
}

/// Dense measurement matrix together with the metadata that generated it.
/// Identical (rows, cols, dist, seed) reproduce identical entries bit-for-bit.
template <class Scalar = double>
struct MeasurementMatrixT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix entries;
  Dist dist = Dist::gaussian;
  std::uint64_t seed = 0;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

using MeasurementMatrix = MeasurementMatrixT<double>;

/// Draws a rows x cols matrix with i.i.d. entries of variance 1/rows.
/// Entries are generated in row-major order from a single Rng(seed) stream.
template <class Scalar = double>
MeasurementMatrixT<Scalar> generate(Eigen::Index rows, Eigen::Index cols, Dist dist,
                                    std::uint64_t seed) {
  if (rows < 1) throw InvalidDimensionError("generate: rows must be >= 1");
  if (cols < 1) throw InvalidDimensionError("generate: cols must be >= 1");
  MeasurementMatrixT<Scalar> m;
  m.dist = dist;
  m.seed = seed;
  m.entries.resize(rows, cols);
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  const double ubound = std::sqrt(3.0 / static_cast<double>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double v = 0.0;
      switch (dist) {
        case Dist::gaussian: v = rng.normal() * scale; break;
        case Dist::rademacher: v = rng.uniform01() < 0.5 ? scale : -scale; break;
        case Dist::uniform: v = rng.uniform(-ubound, ubound); break;
      }
      m.entries(i, j) = static_cast<Scalar>(v);
    }
  }
  return m;
}

/// Rows of `a` indexed by gamma (1-based), in gamma order.
template <class Derived>
typename Derived::PlainObject select_rows(const Eigen::MatrixBase<Derived>& a,
                                          const IndexSet& gamma) {
  if (gamma.universe() != a.rows()) {
    throw IndexRangeError("select_rows: universe " + std::to_string(gamma.universe()) +
                          " does not match row count " + std::to_string(a.rows()));
  }
  typename Derived::PlainObject out(gamma.size(), a.cols());
  for (int k = 0; k < gamma.size(); ++k) {
    out.row(k) = a.row(gamma[static_cast<std::size_t>(k)] - 1);
  }
  return out;
}

/// Columns of `a` indexed by lambda (1-based), in lambda order.
template <class Derived>
typename Derived::PlainObject select_cols(const Eigen::MatrixBase<Derived>& a,
                                          const IndexSet& lambda) {
  if (lambda.universe() != a.cols()) {
    throw IndexRangeError("select_cols: universe " + std::to_string(lambda.universe()) +
                          " does not match column count " + std::to_string(a.cols()));
  }
  typename Derived::PlainObject out(a.rows(), lambda.size());
  for (int k = 0; k < lambda.size(); ++k) {
    out.col(k) = a.col(lambda[static_cast<std::size_t>(k)] - 1);
  }
  return out;
}

/// Entries of a vector indexed by the set (1-based).
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> select_entries(
    const Eigen::MatrixBase<Derived>& v, const IndexSet& s) {
  if (s.universe() != v.size()) {
    throw IndexRangeError("select_entries: universe does not match vector length");
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(s.size());
  for (int k = 0; k < s.size(); ++k) {
    out(k) = v(s[static_cast<std::size_t>(k)] - 1);
  }
  return out;
}

/// |gamma| x N submatrix keeping the rows of m indexed by gamma.
template <class Scalar>
MeasurementMatrixT<Scalar> row_submatrix(const MeasurementMatrixT<Scalar>& m,
                                         const IndexSet& gamma) {
  if (gamma.empty()) throw EmptySelectionError("row_submatrix: empty row selection");
  MeasurementMatrixT<Scalar> out{select_rows(m.entries, gamma), m.dist, m.seed};
  return out;
}

/// M x |lambda| submatrix keeping the columns of m indexed by lambda.
template <class Scalar>
MeasurementMatrixT<Scalar> col_submatrix(const MeasurementMatrixT<Scalar>& m,
                                         const IndexSet& lambda) {
  if (lambda.empty()) throw EmptySelectionError("col_submatrix: empty column selection");
  MeasurementMatrixT<Scalar> out{select_cols(m.entries, lambda), m.dist, m.seed};
  return out;
}

/// The M x (N+M) matrix [I | Phi] and the base Phi it was built from.
template <class Scalar = double>
struct AugmentedMatrixT {
  MeasurementMatrixT<Scalar> base;
  typename MeasurementMatrixT<Scalar>::Matrix full;

  Eigen::Index rows() const { return full.rows(); }
  Eigen::Index cols() const { return full.cols(); }
};

using AugmentedMatrix = AugmentedMatrixT<double>;

template <class Scalar>
AugmentedMatrixT<Scalar> augment_identity(MeasurementMatrixT<Scalar> m) {
  AugmentedMatrixT<Scalar> a;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  a.full.resize(rows, rows + cols);
  a.full.leftCols(rows).setIdentity();
  a.full.rightCols(cols) = m.entries;
  a.base = std::move(m);
  return a;
}

/// Threshold below which selected columns count as rank-deficient:
/// smallest singular value < kRankTol * largest.
inline constexpr double kRankTol = 1e-10;

/// Orthogonal projector onto the span of the columns of `a` indexed by
/// lambda, via a thin SVD of the selection. An empty lambda projects onto
/// {0}. Throws SingularSelectionError when the selection is rank-deficient.
template <class Derived>
Eigen::MatrixXd range_projector(const Eigen::MatrixBase<Derived>& a, const IndexSet& lambda,
                                double rank_tol = kRankTol) {
  const Eigen::Index m = a.rows();
  if (lambda.empty()) return Eigen::MatrixXd::Zero(m, m);
  const Eigen::MatrixXd sub = select_cols(a.derived().template cast<double>().eval(), lambda);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double smallest = sigma(sigma.size() - 1);
  const double largest = sigma(0);
  if (!(smallest > rank_tol * largest)) {
    throw SingularSelectionError(
        "range_projector: rank-deficient column selection (smallest singular value " +
            std::to_string(smallest) + ", largest " + std::to_string(largest) + ")",
        smallest, largest);
  }
  const Eigen::MatrixXd u = svd.matrixU();
  return u * u.transpose();
}

/// Frobenius-norm check that p is symmetric and idempotent within tol
/// (relative to max(1, ||p||_F)).
template <class Derived>
bool is_projector(const Eigen::MatrixBase<Derived>& p, double tol = 1e-8) {
  if (p.rows() != p.cols()) return false;
  const Eigen::MatrixXd pd = p.derived().template cast<double>();
  const double ref = std::max(1.0, pd.norm());
  if ((pd - pd.transpose()).norm() > tol * ref) return false;
  return (pd * pd - pd).norm() <= tol * ref;
}

/// I - p for a projector p; the complementary orthogonal projector.
template <class Derived>
Eigen::MatrixXd complement_projector(const Eigen::MatrixBase<Derived>& p, double tol = 1e-8) {
  if (p.rows() != p.cols()) {
    throw ContractViolationError("complement_projector: input is not square");
  }
  if (!is_projector(p, tol)) {
    throw ContractViolationError(
        "complement_projector: input is not symmetric/idempotent within tolerance");
  }
  return Eigen::MatrixXd::Identity(p.rows(), p.cols()) -
         p.derived().template cast<double>();
}

/// Copy of `a` with every row not indexed by gamma replaced by zeros, so that
/// ||masked_product(a, gamma) x|| == ||select_rows(a, gamma) x|| for all x.
template <class Derived>
typename Derived::PlainObject masked_product(const Eigen::MatrixBase<Derived>& a,
                                             const IndexSet& gamma) {
  if (gamma.universe() != a.rows()) {
    throw IndexRangeError("masked_product: universe does not match row count");
  }
  typename Derived::PlainObject out = a.derived();
  for (int i = 1; i <= gamma.universe(); ++i) {
    if (!gamma.contains(i)) out.row(i - 1).setZero();
  }
  return out;
}

}  // namespace demolab
