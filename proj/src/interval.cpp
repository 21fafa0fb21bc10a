#include "wshrink/interval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include "wshrink/daubechies.hpp"
#include "wshrink/threshold.hpp"

namespace wshrink {

double SparseRow::dot(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * x[offset + i];
  return s;
}

double dot(const SparseRow& a, const SparseRow& b) {
  const std::size_t lo = std::max(a.offset, b.offset);
  const std::size_t hi = std::min(a.end(), b.end());
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += a.values[i - a.offset] * b.values[i - b.offset];
  return s;
}

namespace {

// Line cascade of a single coefficient through `steps` refinement levels,
// starting with `first` and continuing with the lowpass filter.
std::vector<double> cascade_coefficients(const std::vector<double>& first,
                                         const std::vector<double>& lowpass, int steps) {
  std::vector<double> a{1.0};
  for (int s = 0; s < steps; ++s) {
    const auto& f = (s == 0) ? first : lowpass;
    std::vector<double> b(2 * a.size() + f.size() - 2, 0.0);
    for (std::size_t l = 0; l < a.size(); ++l) {
      for (std::size_t m = 0; m < f.size(); ++m) b[2 * l + m] += a[l] * f[m];
    }
    a = std::move(b);
  }
  return a;
}

// Working vector over [0, n) with a tracked nonzero window.
struct DenseWork {
  std::vector<double> v;
  std::size_t lo;
  std::size_t hi;

  explicit DenseWork(std::size_t n) : v(n, 0.0), lo(n), hi(0) {}

  void add(const SparseRow& row, double scale) {
    if (row.values.empty()) return;
    for (std::size_t i = 0; i < row.values.size(); ++i) v[row.offset + i] += scale * row.values[i];
    lo = std::min(lo, row.offset);
    hi = std::max(hi, row.end());
  }

  double dot(const SparseRow& row) const {
    if (row.end() <= lo || row.offset >= hi) return 0.0;
    return row.dot(v);
  }

  double norm() const {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i] * v[i];
    return std::sqrt(s);
  }

  void scale(double f) {
    for (std::size_t i = lo; i < hi; ++i) v[i] *= f;
  }

  // Entries below 1e-15 of the peak are treated as zero at the ends.
  SparseRow to_row() const {
    double peak = 0.0;
    for (std::size_t i = lo; i < hi; ++i) peak = std::max(peak, std::abs(v[i]));
    const double tiny = 1e-15 * peak;
    std::size_t a = lo;
    std::size_t b = hi;
    while (a < b && std::abs(v[a]) <= tiny) ++a;
    while (b > a && std::abs(v[b - 1]) <= tiny) --b;
    SparseRow r;
    r.offset = a;
    r.values.assign(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b));
    return r;
  }
};

// Two passes of modified Gram-Schmidt against each orthonormal set.
// Rounding-level coefficients are skipped so that supports stay compact.
void project_out(DenseWork& w, std::initializer_list<const std::vector<SparseRow>*> bases) {
  const double floor = 1e-13 * w.norm();
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto* basis : bases) {
      for (const auto& z : *basis) {
        const double c = w.dot(z);
        if (std::abs(c) > floor) w.add(z, -c);
      }
    }
  }
}

void orient_leftmost_positive(SparseRow& row) {
  double peak = 0.0;
  for (double x : row.values) peak = std::max(peak, std::abs(x));
  for (double x : row.values) {
    if (std::abs(x) > 1e-12 * peak) {
      if (x < 0.0) {
        for (double& y : row.values) y = -y;
      }
      return;
    }
  }
}

constexpr double kRankTolerance = 1e-6;

class Builder {
 public:
  Builder(int N, std::size_t n) : N_(N), n_(n), J_(exact_log2(n)), filter_(daubechies_filter(N)) {}

  // Discrete phi_{j,k} (or psi_{j,k}) restricted to the sample range.
  SparseRow translate(int j, long k, bool wavelet) const {
    const int steps = J_ - j;
    const auto coeffs =
        cascade_coefficients(wavelet ? filter_.highpass : filter_.lowpass, filter_.lowpass, steps);
    const long start = k * (1L << steps);
    SparseRow row;
    const long lo = std::max(0L, start);
    const long hi = std::min(static_cast<long>(n_), start + static_cast<long>(coeffs.size()));
    if (lo >= hi) return row;
    row.offset = static_cast<std::size_t>(lo);
    row.values.assign(coeffs.begin() + (lo - start), coeffs.begin() + (hi - start));
    return row;
  }

  SparseRow boundary_combination(int j, int power, long k_first, long k_last, long origin) const {
    DenseWork w(n_);
    for (long k = k_first; k <= k_last; ++k) {
      const double weight = std::pow(static_cast<double>(k - origin), power);
      if (weight != 0.0) w.add(translate(j, k, false), weight);
    }
    return w.to_row();
  }

  std::vector<SparseRow> scaling_level(int j) const {
    const long size = 1L << j;
    std::vector<SparseRow> interior;
    for (long k = 1; k <= size - 2 * N_; ++k) interior.push_back(translate(j, k, false));

    std::vector<SparseRow> left;
    std::vector<SparseRow> right;
    for (int m = 0; m < N_; ++m) {
      DenseWork w(n_);
      w.add(boundary_combination(j, m, -(2L * N_ - 2), 0, 0), 1.0);
      accept(w, {&interior, &left}, left, "left boundary scaling", j);
    }
    for (int m = 0; m < N_; ++m) {
      DenseWork w(n_);
      w.add(boundary_combination(j, m, size - 2L * N_ + 1, size - 1, size), 1.0);
      accept(w, {&interior, &left, &right}, right, "right boundary scaling", j);
    }

    std::vector<SparseRow> level = std::move(left);
    level.insert(level.end(), interior.begin(), interior.end());
    level.insert(level.end(), right.begin(), right.end());
    return level;
  }

  // Orthonormal basis of V_{j+1} minus V_j, given V_j and V_{j+1}.
  std::vector<SparseRow> detail_level(int j, const std::vector<SparseRow>& coarse,
                                      const std::vector<SparseRow>* fine) const {
    const long size = 1L << j;
    std::vector<SparseRow> interior;
    for (long k = 1; k <= size - 2 * N_; ++k) interior.push_back(translate(j, k, true));

    const std::size_t fine_count = std::size_t{1} << (j + 1);
    auto candidate = [&](std::size_t idx) {
      if (fine != nullptr) return (*fine)[idx];
      SparseRow delta;
      delta.offset = idx;
      delta.values = {1.0};
      return delta;
    };

    // Each side keeps the candidates near its own end; the two sides together
    // must contribute 2N functions, though not necessarily N each.
    const std::size_t needed = 2 * static_cast<std::size_t>(N_);
    const std::size_t reach = std::min(fine_count / 2, 8 * static_cast<std::size_t>(N_) + 8);
    std::vector<SparseRow> left;
    std::vector<SparseRow> right;
    for (std::size_t idx = 0; idx < reach && left.size() < needed; ++idx) {
      DenseWork w(n_);
      w.add(candidate(idx), 1.0);
      try_accept(w, {&coarse, &interior, &left}, left);
    }
    for (std::size_t i = 0; i < reach && left.size() + right.size() < needed; ++i) {
      DenseWork w(n_);
      w.add(candidate(fine_count - 1 - i), 1.0);
      try_accept(w, {&coarse, &interior, &left, &right}, right);
    }
    if (left.size() + right.size() != needed) {
      throw GeometryError("could not complete boundary wavelets at level " + std::to_string(j));
    }
    std::reverse(right.begin(), right.end());

    std::vector<SparseRow> level = std::move(left);
    level.insert(level.end(), interior.begin(), interior.end());
    level.insert(level.end(), right.begin(), right.end());
    return level;
  }

 private:
  static bool try_accept(DenseWork& w, std::initializer_list<const std::vector<SparseRow>*> bases,
                         std::vector<SparseRow>& out) {
    const double original = w.norm();
    project_out(w, bases);
    const double residual = w.norm();
    if (!(residual > kRankTolerance * original)) return false;
    w.scale(1.0 / residual);
    SparseRow row = w.to_row();
    orient_leftmost_positive(row);
    out.push_back(std::move(row));
    return true;
  }

  static void accept(DenseWork& w, std::initializer_list<const std::vector<SparseRow>*> bases,
                     std::vector<SparseRow>& out, const char* what, int j) {
    const double original = w.norm();
    project_out(w, bases);
    const double residual = w.norm();
    if (!(residual > kRankTolerance * original)) {
      throw GeometryError(std::string("degenerate ") + what + " function at level " + std::to_string(j));
    }
    w.scale(1.0 / residual);
    out.push_back(w.to_row());
  }

  int N_;
  std::size_t n_;
  int J_;
  const DaubechiesFilter& filter_;
};

double max_weight(const std::vector<SparseRow>& rows, int J, int j) {
  const double scale = std::pow(2.0, 0.5 * (J - j));
  double m = 0.0;
  for (const auto& r : rows) {
    for (double x : r.values) m = std::max(m, std::abs(x) * scale);
  }
  return m;
}

void check_index(const IntervalSystem& s, int j, std::size_t k) {
  if (j < s.coarse_level() || j >= s.fine_level()) {
    throw GeometryError("level " + std::to_string(j) + " outside [" + std::to_string(s.coarse_level()) +
                        ", " + std::to_string(s.fine_level()) + ")");
  }
  if (k >= (std::size_t{1} << j)) throw GeometryError("shift " + std::to_string(k) + " out of range");
}

}  // namespace

std::size_t IntervalSystem::detail_row_index(int j) const { return std::size_t{1} << j; }

std::span<const SparseRow> IntervalSystem::scaling_rows(int j) const {
  if (!has_scaling_rows(j)) {
    throw GeometryError("scaling rows of level " + std::to_string(j) + " are not available");
  }
  return scaling_[static_cast<std::size_t>(j - J0_)];
}

bool IntervalSystem::has_scaling_rows(int j) const {
  return j >= J0_ && static_cast<std::size_t>(j - J0_) < scaling_.size();
}

std::span<const SparseRow> IntervalSystem::detail_rows(int j) const {
  check_index(*this, j, 0);
  return std::span<const SparseRow>(rows_).subspan(detail_row_index(j), std::size_t{1} << j);
}

std::vector<double> IntervalSystem::dense_matrix() const {
  std::vector<double> dense(n_ * n_, 0.0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& row = rows_[r];
    std::copy(row.values.begin(), row.values.end(),
              dense.begin() + static_cast<std::ptrdiff_t>(r * n_ + row.offset));
  }
  return dense;
}

double IntervalSystem::orthogonality_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    worst = std::max(worst, std::abs(dot(rows_[r], rows_[r]) - 1.0));
    for (std::size_t s = r + 1; s < rows_.size(); ++s) {
      if (rows_[s].offset >= rows_[r].end() || rows_[r].offset >= rows_[s].end()) continue;
      worst = std::max(worst, std::abs(dot(rows_[r], rows_[s])));
    }
  }
  return worst;
}

void IntervalSystem::finalize() {
  c_phi_ = 1.0;
  for (std::size_t i = 0; i < scaling_.size(); ++i) {
    c_phi_ = std::max(c_phi_, max_weight(scaling_[i], J_, J0_ + static_cast<int>(i)));
  }
  for (int j = J0_; j < J_; ++j) {
    const auto rows = detail_rows(j);
    c_phi_ = std::max(c_phi_, max_weight(std::vector<SparseRow>(rows.begin(), rows.end()), J_, j));
  }
}

IntervalSystem IntervalSystem::from_matrix(int N, int J0, std::size_t n, std::span<const double> dense) {
  if (N < 1 || N > kMaxVanishingMoments) throw std::invalid_argument("unsupported moments in matrix");
  const int J = exact_log2(n);
  if (J0 < 0 || J0 >= J) throw GeometryError("coarse level out of range in matrix");
  if (dense.size() != n * n) throw GeometryError("matrix has wrong number of entries");
  IntervalSystem s;
  s.N_ = N;
  s.J0_ = J0;
  s.J_ = J;
  s.n_ = n;
  s.rows_.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t a = 0;
    std::size_t b = n;
    const double* row = dense.data() + r * n;
    while (a < b && row[a] == 0.0) ++a;
    while (b > a && row[b - 1] == 0.0) --b;
    SparseRow sr;
    sr.offset = a;
    sr.values.assign(row + a, row + b);
    s.rows_.push_back(std::move(sr));
  }
  s.scaling_.emplace_back(s.rows_.begin(), s.rows_.begin() + (std::ptrdiff_t{1} << J0));
  s.finalize();
  if (s.orthogonality_error() > 1e-8) throw GeometryError("cached matrix is not orthogonal");
  return s;
}

IntervalSystem build_interval_system(int N, std::size_t n, int J0) {
  if (N < 1 || N > kMaxVanishingMoments) {
    throw GeometryError("unsupported number of vanishing moments " + std::to_string(N));
  }
  const int J = exact_log2(n);
  const int min_level = interval_coarse_level(N);
  if (J0 < min_level) {
    throw GeometryError("coarse level " + std::to_string(J0) + " below 1 + ceil(log2(2N-1)) = " +
                        std::to_string(min_level));
  }
  if ((1L << J0) < 2L * N) throw GeometryError("2^J0 must be at least 2N");
  if (J0 >= J) throw GeometryError("coarse level must be below J = " + std::to_string(J));

  Builder builder(N, n);
  IntervalSystem s;
  s.N_ = N;
  s.J0_ = J0;
  s.J_ = J;
  s.n_ = n;
  for (int j = J0; j < J; ++j) s.scaling_.push_back(builder.scaling_level(j));

  s.rows_ = s.scaling_.front();
  for (int j = J0; j < J; ++j) {
    const auto& coarse = s.scaling_[static_cast<std::size_t>(j - J0)];
    const auto* fine = (j + 1 < J) ? &s.scaling_[static_cast<std::size_t>(j + 1 - J0)] : nullptr;
    auto level = builder.detail_level(j, coarse, fine);
    s.rows_.insert(s.rows_.end(), std::make_move_iterator(level.begin()),
                   std::make_move_iterator(level.end()));
  }
  s.finalize();

  const double ortho = s.orthogonality_error();
  if (ortho > 1e-8) {
    throw std::runtime_error("interval system failed orthogonality check: " + std::to_string(ortho));
  }
  for (int m = 0; m < N; ++m) {
    std::vector<double> poly(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      poly[i] = std::pow(static_cast<double>(i + 1) / static_cast<double>(n), m);
      norm += poly[i] * poly[i];
    }
    norm = std::sqrt(norm);
    for (std::size_t r = s.detail_row_index(J0); r < n; ++r) {
      if (std::abs(s.rows_[r].dot(poly)) > 1e-6 * norm) {
        throw std::runtime_error("detail row " + std::to_string(r) + " does not annihilate degree " +
                                 std::to_string(m));
      }
    }
  }
  return s;
}

RowWeights extract_weights(const IntervalSystem& system, int j, std::size_t k) {
  check_index(system, j, k);
  const double scale = std::pow(2.0, 0.5 * (system.fine_level() - j));
  auto weights = [scale](const SparseRow& row) {
    WeightVector w;
    w.offset = row.offset;
    w.weights = row.values;
    for (double& x : w.weights) x *= scale;
    return w;
  };
  RowWeights out;
  out.alphas = weights(system.scaling_rows(j)[k]);
  out.betas = weights(system.detail_rows(j)[k]);
  return out;
}

CoefficientPyramid interval_dwt(const SignalSamples& samples, const IntervalSystem& system) {
  if (samples.size() != system.size()) {
    throw GeometryError("signal length " + std::to_string(samples.size()) + " does not match system size " +
                        std::to_string(system.size()));
  }
  std::vector<double> flat(system.size());
  for (std::size_t r = 0; r < flat.size(); ++r) flat[r] = system.row(r).dot(samples.values());
  return CoefficientPyramid::unflatten(flat, system.coarse_level(), true);
}

SignalSamples interval_idwt(const CoefficientPyramid& pyramid, const IntervalSystem& system) {
  pyramid.validate();
  if (pyramid.sample_count() != system.size() || pyramid.coarse_level != system.coarse_level()) {
    throw GeometryError("pyramid geometry does not match the interval system");
  }
  const auto flat = pyramid.to_scaled().flatten();
  std::vector<double> out(system.size(), 0.0);
  for (std::size_t r = 0; r < flat.size(); ++r) {
    const auto& row = system.row(r);
    for (std::size_t i = 0; i < row.values.size(); ++i) out[row.offset + i] += flat[r] * row.values[i];
  }
  return SignalSamples(std::move(out));
}

namespace {

static_assert(std::endian::native == std::endian::little, "matrix cache assumes a little-endian host");

void write_i64(std::ofstream& out, std::int64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::int64_t read_i64(std::ifstream& in) {
  std::int64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("truncated matrix cache header");
  return v;
}

}  // namespace

void write_matrix_cache(const std::filesystem::path& path, const IntervalSystem& system) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_i64(out, system.moments());
    write_i64(out, system.coarse_level());
    write_i64(out, static_cast<std::int64_t>(system.size()));
    const auto dense = system.dense_matrix();
    out.write(reinterpret_cast<const char*>(dense.data()),
              static_cast<std::streamsize>(dense.size() * sizeof(double)));
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

IntervalSystem read_matrix_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const auto N = read_i64(in);
  const auto J0 = read_i64(in);
  const auto n = read_i64(in);
  if (N < 1 || N > kMaxVanishingMoments || J0 < 0 || n < 2 || n > (1 << 16) ||
      !is_power_of_two(static_cast<std::size_t>(n))) {
    throw std::runtime_error("invalid matrix cache header in " + path.string());
  }
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<double> dense(count);
  in.read(reinterpret_cast<char*>(dense.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw std::runtime_error("truncated matrix cache " + path.string());
  return IntervalSystem::from_matrix(static_cast<int>(N), static_cast<int>(J0), static_cast<std::size_t>(n),
                                     dense);
}

std::shared_ptr<const IntervalSystem> load_or_build_interval_system(int N, std::size_t n, int J0,
                                                                   const std::filesystem::path& dir) {
  const auto path = dir / ("interval_N" + std::to_string(N) + "_J0" + std::to_string(J0) + "_n" +
                           std::to_string(n) + ".bin");
  if (std::filesystem::exists(path)) {
    auto cached = read_matrix_cache(path);
    if (cached.moments() == N && cached.coarse_level() == J0 && cached.size() == n) {
      return std::make_shared<const IntervalSystem>(std::move(cached));
    }
  }
  auto built = std::make_shared<const IntervalSystem>(build_interval_system(N, n, J0));
  std::filesystem::create_directories(dir);
  write_matrix_cache(path, *built);
  return built;
}

}  // namespace wshrink
