#pragma once

#include <cstdint>

#include "reprdice/dataset.hpp"
#include "reprdice/mdp.hpp"

namespace reprdice {

// (Ppi_* d)(s',a') = pi(a'|s') sum_{s,a} P(s'|s,a) d(s,a)
OccupancyMeasure transpose_operator(const TabularMDP& mdp, const TabularPolicy& policy,
                                    const OccupancyMeasure& d);

// (Ppi Q)(s,a) = sum_{s'} P(s'|s,a) sum_{a'} pi(a'|s') Q(s',a'); the adjoint
// of transpose_operator under the standard inner product
Eigen::MatrixXd adjoint_operator(const TabularMDP& mdp, const TabularPolicy& policy,
                                 const Eigen::MatrixXd& q);

// (1-gamma) rho(s') pi(a'|s') + gamma (Ppi_* d)(s',a')
OccupancyMeasure occupancy_recursion_step(const TabularMDP& mdp, const TabularPolicy& policy,
                                          const OccupancyMeasure& d);

// Undiscounted rollouts from the initial distribution; num_trajectories *
// horizon transitions, bit-deterministic given the seed.
TransitionDataset sample_trajectories(const TabularMDP& mdp, const TabularPolicy& policy,
                                      int num_trajectories, int horizon, std::uint64_t seed,
                                      SourceTag tag = SourceTag::general,
                                      const std::string& env_id = "tabular");

} // namespace reprdice
