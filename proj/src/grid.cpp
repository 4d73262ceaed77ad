#include "ptspec/grid.hpp"

namespace ptspec::grid {

std::vector<double> map(std::span<const double> xs, const std::function<double(double)>& f) {
  std::vector<double> out(xs.size());
  const std::int64_t n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) out[i] = f(xs[i]);
  return out;
}

std::vector<double> map_serial(std::span<const double> xs, const std::function<double(double)>& f) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

std::vector<Complex> map_complex(std::span<const Complex> zs,
                                 const std::function<Complex(Complex)>& f) {
  std::vector<Complex> out(zs.size());
  const std::int64_t n = static_cast<std::int64_t>(zs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) out[i] = f(zs[i]);
  return out;
}

std::vector<Complex> map_complex_serial(std::span<const Complex> zs,
                                        const std::function<Complex(Complex)>& f) {
  std::vector<Complex> out(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) out[i] = f(zs[i]);
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n + 1);
  for (int i = 0; i <= n; ++i) xs[i] = lo + (hi - lo) * (double(i) / n);
  return xs;
}

}  // namespace ptspec::grid
