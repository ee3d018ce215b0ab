#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

namespace eplab::fft {

using cplx = std::complex<double>;

namespace detail {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct PlanPair {
  Plan forward;
  Plan backward;
};

// Key: (rank, n). Plans are created once on scratch arrays and executed through
// the new-array interface; FFTW_ESTIMATE keeps the algorithm choice identical
// from run to run so outputs are bitwise reproducible.
inline const PlanPair& plans(int rank, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, PlanPair> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({rank, n});
  if (it != cache.end()) return it->second;
  std::size_t total = 1;
  for (int r = 0; r < rank; ++r) total *= static_cast<std::size_t>(n);
  std::vector<cplx> scratch(total);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int dims[3] = {n, n, n};
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair pp{Plan(fftw_plan_dft(rank, dims, buf, buf, FFTW_FORWARD, flags)),
              Plan(fftw_plan_dft(rank, dims, buf, buf, FFTW_BACKWARD, flags))};
  return cache.emplace(std::make_pair(rank, n), std::move(pp)).first->second;
}

}  // namespace detail

/// In-place 3D forward transform, normalized by 1/n^3 so that a constant
/// field 1 maps to a unit amplitude at the zero mode.
inline void forward3(std::span<cplx> data, int n) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(detail::plans(3, n).forward.get(), p, p);
  const double s = 1.0 / (static_cast<double>(n) * n * n);
  for (auto& v : data) v *= s;
}

/// In-place 3D inverse transform (unnormalized synthesis sum).
inline void backward3(std::span<cplx> data, int n) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(detail::plans(3, n).backward.get(), p, p);
}

/// In-place 1D unnormalized transform; sign -1 is forward.
inline void transform1(std::span<cplx> data, int sign) {
  const int n = static_cast<int>(data.size());
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  const auto& pp = detail::plans(1, n);
  fftw_execute_dft(sign < 0 ? pp.forward.get() : pp.backward.get(), p, p);
}

}  // namespace eplab::fft
