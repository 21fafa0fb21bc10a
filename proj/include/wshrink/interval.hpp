#ifndef WSHRINK_INTERVAL_HPP
#define WSHRINK_INTERVAL_HPP

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "wshrink/samples.hpp"

namespace wshrink {

/// A compactly supported row of the transform: entries offset..offset+size-1.
struct SparseRow {
  std::size_t offset = 0;
  std::vector<double> values;

  std::size_t end() const { return offset + values.size(); }
  double dot(std::span<const double> x) const;
};

double dot(const SparseRow& a, const SparseRow& b);

/// Boundary-adapted orthonormal wavelet transform on [0, 1] with N vanishing
/// moments, as an explicit orthogonal matrix W acting on n = 2^J samples.
///
/// Interior rows are discrete cascades of the Daubechies-N filters,
/// 2^{j/2} phi(2^j x - k) at sample resolution. Boundary rows start from the
/// polynomial combinations sum_h (-h)^i phi(2^j x + h) of the translates that
/// cross an endpoint and are orthonormalized against the interior rows.
/// Within each level rows are ordered left boundary (N), interior, right
/// boundary (N).
///
/// Rows of W are, in order: the 2^J0 scaling rows of level J0, then the 2^j
/// detail rows of each level j = J0 .. J-1. A system is immutable once built.
class IntervalSystem {
 public:
  int moments() const { return N_; }
  int coarse_level() const { return J0_; }
  int fine_level() const { return J_; }
  std::size_t size() const { return n_; }

  /// max |weight| over every scaling and detail row, floored at 1.
  double c_phi_estimate() const { return c_phi_; }

  /// Row r of W (scaled convention: W is orthogonal).
  const SparseRow& row(std::size_t r) const { return rows_[r]; }
  std::size_t row_count() const { return rows_.size(); }

  /// Orthonormal scaling rows of level j. Levels J0..J-1 are available for a
  /// freshly built system; a system read from a matrix cache only has J0.
  std::span<const SparseRow> scaling_rows(int j) const;
  std::span<const SparseRow> detail_rows(int j) const;
  bool has_scaling_rows(int j) const;

  /// Dense row-major n x n copy of W.
  std::vector<double> dense_matrix() const;

  /// max_{r,s} |(W W^T - I)_{rs}|.
  double orthogonality_error() const;

  /// Rebuilds a system from a dense orthogonal matrix (as stored in a cache).
  static IntervalSystem from_matrix(int N, int J0, std::size_t n, std::span<const double> dense);

 private:
  friend IntervalSystem build_interval_system(int N, std::size_t n, int J0);

  std::size_t detail_row_index(int j) const;
  void finalize();

  int N_ = 1;
  int J0_ = 0;
  int J_ = 0;
  std::size_t n_ = 0;
  double c_phi_ = 1.0;
  std::vector<SparseRow> rows_;
  std::vector<std::vector<SparseRow>> scaling_;  // indexed by j - J0
};

/// Builds and verifies the interval system. Requires N in [1, 5],
/// J0 >= 1 + ceil(log2(2N-1)), 2^J0 >= 2N and J0 < J.
/// Throws GeometryError for infeasible geometry.
IntervalSystem build_interval_system(int N, std::size_t n, int J0);

/// Weight representations
///   c_{j,k} = 2^{-J+j/2} sum_i alpha_i e_{offset+i+1}
///   d_{j,k} = 2^{-J+j/2} sum_i beta_i  e_{offset+i+1}
/// taken over the full support of the (j, k) rows.
struct WeightVector {
  std::size_t offset = 0;
  std::vector<double> weights;
};

struct RowWeights {
  WeightVector alphas;
  WeightVector betas;
};

/// Requires J0 <= j < J and 0 <= k < 2^j. Every |weight| is at most
/// system.c_phi_estimate().
RowWeights extract_weights(const IntervalSystem& system, int j, std::size_t k);

/// W y, returned in the scaled convention.
CoefficientPyramid interval_dwt(const SignalSamples& samples, const IntervalSystem& system);

/// W^T applied to the coefficients (either convention).
SignalSamples interval_idwt(const CoefficientPyramid& pyramid, const IntervalSystem& system);

/// Matrix cache: three little-endian int64 (N, J0, n) followed by n*n
/// little-endian float64 entries of W, row-major.
void write_matrix_cache(const std::filesystem::path& path, const IntervalSystem& system);
IntervalSystem read_matrix_cache(const std::filesystem::path& path);

/// Reads `dir/interval_N{N}_J0{J0}_n{n}.bin` when present and matching, else
/// builds the system and writes the cache file.
std::shared_ptr<const IntervalSystem> load_or_build_interval_system(
    int N, std::size_t n, int J0, const std::filesystem::path& dir);

}  // namespace wshrink

#endif  // WSHRINK_INTERVAL_HPP
