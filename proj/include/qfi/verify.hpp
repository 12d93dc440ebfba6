#pragma once

#include <cstdint>
#include <vector>

#include "qfi/monotone.hpp"
#include "qfi/report.hpp"

namespace qfi::verify {

// Property sweeps, each returning a pass/fail certificate with the worst
// observed violation. Deterministic in (seed, counts).

Certificate function_standard(const StandardFunction& f, int n_samples, std::uint64_t seed);
Certificate metric_ordering(int n_instances, std::uint64_t seed);
Certificate commuting_universality(int n_instances, std::uint64_t seed);
Certificate metric_monotonicity(const StandardFunction& f, int n_triples,
                                std::uint64_t seed);
Certificate qfim_monotonicity(const StandardFunction& f, int n_families,
                              std::uint64_t seed);
Certificate supremum(int n_instances, int n_povms, std::uint64_t seed);
Certificate oracle_agreement(int n_instances, std::uint64_t seed);
Certificate cramer_rao(int n_trials, std::uint64_t seed);
Certificate skew_identity(int n_instances, std::uint64_t seed);
Certificate skew_bounds(int n_instances, std::uint64_t seed);
Certificate wyd_equivalence(int n_instances, std::uint64_t seed);
Certificate tilde_pointwise(std::uint64_t seed);
Certificate chi2_commuting(int n_instances, std::uint64_t seed);
Certificate chi2_metric_form(int n_instances, std::uint64_t seed);
Certificate extended_positivity(int n_specs, int n_instances, std::uint64_t seed);
Certificate degenerate_kernel();

// The whole battery at CLI scale.
std::vector<Certificate> verify_all(std::uint64_t seed);

}  // namespace qfi::verify
