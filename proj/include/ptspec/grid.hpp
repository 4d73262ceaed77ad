#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ptspec/types.hpp"

namespace ptspec::grid {

// Dense pointwise evaluation kernels. The OpenMP versions are the production
// path; the _serial twins are the reference implementations the tests compare
// against (results are bitwise identical: one pure evaluation per point,
// written by index). Callables must be safe for concurrent invocation.

std::vector<double> map(std::span<const double> xs, const std::function<double(double)>& f);
std::vector<double> map_serial(std::span<const double> xs, const std::function<double(double)>& f);

std::vector<Complex> map_complex(std::span<const Complex> zs,
                                 const std::function<Complex(Complex)>& f);
std::vector<Complex> map_complex_serial(std::span<const Complex> zs,
                                        const std::function<Complex(Complex)>& f);

// Uniform grid helper: n+1 points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace ptspec::grid
