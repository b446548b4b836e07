#include "se2recon/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace se2recon {
namespace {

// Plan cache keyed by (n, batch, sign). Plans are created with FFTW_UNALIGNED
// so they can execute on any caller buffer through the new-array interface;
// execution is re-entrant, only the planner needs the lock.
class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int batch, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(n, batch, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::vector<cplx> scratch(static_cast<std::size_t>(n) * n * batch);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int dims[2] = {n, n};
    fftw_plan plan =
        fftw_plan_many_dft(2, dims, batch, buf, nullptr, 1, n * n, buf, nullptr, 1, n * n,
                           sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }
  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute_inplace(std::vector<cplx>& data, int n, int batch, int sign) {
  fftw_plan plan = PlanCache::instance().get(n, batch, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

Spectrum dft2(const ComplexImage& img) {
  Spectrum out(img.n);
  out.data = img.data;
  execute_inplace(out.data, img.n, 1, FFTW_FORWARD);
  return out;
}

Spectrum dft2(const Image& img) { return dft2(ComplexImage(img)); }

ComplexImage idft2(const Spectrum& spec) {
  ComplexImage out(spec.n);
  out.data = spec.data;
  execute_inplace(out.data, spec.n, 1, FFTW_BACKWARD);
  const double scale = 1.0 / (static_cast<double>(spec.n) * spec.n);
  for (cplx& z : out.data) z *= scale;
  return out;
}

ComplexImage circ_convolve(const ComplexImage& f, const ComplexImage& g) {
  require_same_grid(f.n, g.n, "circ_convolve");
  Spectrum fh = dft2(f);
  const Spectrum gh = dft2(g);
  for (std::size_t i = 0; i < fh.data.size(); ++i) fh.data[i] *= gh.data[i];
  return idft2(fh);
}

ComplexImage circ_convolve(const Image& f, const Image& g) {
  return circ_convolve(ComplexImage(f), ComplexImage(g));
}

void dft2_planes(CoefficientStack& stack) {
  if (stack.m == 0 || stack.n == 0) return;
  execute_inplace(stack.data, stack.n, stack.m, FFTW_FORWARD);
}

void idft2_planes(CoefficientStack& stack) {
  if (stack.m == 0 || stack.n == 0) return;
  execute_inplace(stack.data, stack.n, stack.m, FFTW_BACKWARD);
  const double scale = 1.0 / (static_cast<double>(stack.n) * stack.n);
  for (cplx& z : stack.data) z *= scale;
}

}  // namespace se2recon
