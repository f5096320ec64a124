#pragma once

#include <algorithm>
#include <complex>
#include <span>
#include <vector>

#include "heightlab/poly.hpp"

namespace heightlab::detail {

// Sparse polynomial evaluated through per-variable power tables.
struct CompiledPoly {
  std::vector<double> coeffs;
  std::vector<std::vector<int>> exps;
  std::vector<int> max_exp;

  explicit CompiledPoly(const MultiPoly& f) : max_exp(f.nvars(), 0) {
    for (const auto& [e, c] : f.terms()) {
      coeffs.push_back(c.get_d());
      exps.push_back(e);
      for (std::size_t v = 0; v < e.size(); ++v) max_exp[v] = std::max(max_exp[v], e[v]);
    }
  }

  std::complex<double> eval(std::span<const std::complex<double>> x) const {
    std::vector<std::vector<std::complex<double>>> pw(max_exp.size());
    for (std::size_t v = 0; v < max_exp.size(); ++v) {
      pw[v].resize(static_cast<std::size_t>(max_exp[v]) + 1);
      pw[v][0] = 1.0;
      for (int k = 1; k <= max_exp[v]; ++k) pw[v][static_cast<std::size_t>(k)] = pw[v][static_cast<std::size_t>(k) - 1] * x[v];
    }
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      std::complex<double> m = coeffs[t];
      for (std::size_t v = 0; v < exps[t].size(); ++v) {
        if (exps[t][v]) m *= pw[v][static_cast<std::size_t>(exps[t][v])];
      }
      acc += m;
    }
    return acc;
  }
};


}  // namespace heightlab::detail
