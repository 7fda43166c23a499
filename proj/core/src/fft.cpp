#include "heislac/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heislac {

namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

std::mutex g_plan_mutex;

// Plans are created on a scratch buffer and executed with fftw_execute_dft,
// which requires the same alignment; fftw_malloc'd scratch is 16-byte aligned
// and std::complex<double> buffers from std::vector are too on glibc.
fftw_plan plan_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, Plan> cache;
  std::lock_guard lock(g_plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  std::vector<std::complex<double>> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fft: plan creation failed");
  cache.emplace(key, Plan(p));
  return p;
}

}  // namespace

void dft_inplace(std::span<std::complex<double>> data, int sign) {
  if (data.empty()) return;
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft: sign must be +1 or -1");
  fftw_plan p = plan_for(data.size(), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, buf, buf);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace heislac
