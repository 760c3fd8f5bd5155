#pragma once

// Project-wide numeric gates. Inputs are O(1)-magnitude by convention
// (rescale kernels rather than loosening these).
namespace ustat::tol {

inline constexpr double equality = 1e-12;      // exact identities on finite spaces
inline constexpr double oracle_rel = 1e-10;    // agreement of independent computation routes
inline constexpr double lower_slack = 1e-10;   // constant-free lower bounds, normalized slack
inline constexpr double slope = 0.15;          // fitted log-log slope vs predicted exponent
inline constexpr double mc_z = 4.0;            // Monte Carlo z-score gate

}  // namespace ustat::tol
