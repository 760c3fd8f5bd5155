#pragma once

#include <vector>

#include "ustat/distribution.hpp"
#include "ustat/kernel.hpp"

namespace ustat {

// Decomposition of a symmetric kernel into centered components of increasing
// order: Y(x_1..x_m) = g0 + sum_{k=1}^{m} sum_{|S|=k} g_k(x_S). Each g_k with
// k >= 1 is degenerate under `law`, which is stored because degeneracy is a
// property of the (kernel, law) pair, not of the kernel alone.
struct ProjectionSet {
  double g0;
  std::vector<KernelTable> components;  // orders 1..m
  KernelTable base;
  FiniteDistribution law;

  const KernelTable& component(int k) const { return components.at(k - 1); }
};

// Closed-form inclusion-exclusion projection:
//   g_k(x_1..x_k) = sum_{j=0}^{k} (-1)^{k-j} sum_{|J|=j} E(Y | X_J = x_J).
ProjectionSet hoeffding_project(const KernelTable& kernel, const FiniteDistribution& dist);

// Max over ordered m-tuples of |Y - reassembled sum|; 0 certifies the
// decomposition reproduces the kernel pointwise.
double reconstruction_residual(const ProjectionSet& proj);

// Max over components k >= 1 of their degeneracy residual.
double max_component_degeneracy(const ProjectionSet& proj);

}  // namespace ustat
