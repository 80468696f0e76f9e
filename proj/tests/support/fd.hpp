#pragma once

#include <array>
#include <functional>
#include <vector>

namespace testsupport {

// Central finite differences with one Richardson extrapolation step. These
// serve as oracles that are independent of the jet arithmetic under test.

inline double richardson(const std::function<double(double)>& d, double h) {
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

inline double fd_partial(const std::function<double(std::vector<double>)>& f,
                         std::vector<double> x, int i, double h = 1e-3) {
  auto diff = [&](double step) {
    std::vector<double> xp = x, xm = x;
    xp[static_cast<std::size_t>(i)] += step;
    xm[static_cast<std::size_t>(i)] -= step;
    return (f(xp) - f(xm)) / (2.0 * step);
  };
  return richardson(diff, h);
}

inline double fd_partial2(const std::function<double(std::vector<double>)>& f,
                          std::vector<double> x, int i, int j, double h = 1e-3) {
  auto inner = [&](std::vector<double> y) { return fd_partial(f, std::move(y), i, h); };
  auto diff = [&](double step) {
    std::vector<double> xp = x, xm = x;
    xp[static_cast<std::size_t>(j)] += step;
    xm[static_cast<std::size_t>(j)] -= step;
    return (inner(xp) - inner(xm)) / (2.0 * step);
  };
  return richardson(diff, h);
}

inline double fd_partial3(const std::function<double(std::vector<double>)>& f,
                          std::vector<double> x, int i, int j, int k, double h = 1e-2) {
  auto inner = [&](std::vector<double> y) { return fd_partial2(f, std::move(y), i, j, h); };
  auto diff = [&](double step) {
    std::vector<double> xp = x, xm = x;
    xp[static_cast<std::size_t>(k)] += step;
    xm[static_cast<std::size_t>(k)] -= step;
    return (inner(xp) - inner(xm)) / (2.0 * step);
  };
  return richardson(diff, h);
}

}  // namespace testsupport
