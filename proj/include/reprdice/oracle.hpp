#pragma once

#include <cstdint>

#include "reprdice/divergence.hpp"
#include "reprdice/mdp.hpp"

namespace reprdice {

/// Rank-k factorization P(s'|s,a) ~ phi(s,a)^T mu(s') pn(s') together with
/// the weighted squared error left by the truncation.
struct FactorizationTables {
    Eigen::MatrixXd phi;      // (S*A) x k
    Eigen::MatrixXd mu;       // S x k
    int k = 0;
    double residual = 0.0;    // sum of squared discarded singular values
    Eigen::VectorXd noise_dist;       // pn, S
    Eigen::VectorXd singular_values;  // full spectrum of the weighted matrix
};

// Direct linear solve of d = (1-gamma) rho pi + gamma Ppi_* d.
OccupancyMeasure exact_occupancy(const TabularMDP& mdp, const TabularPolicy& policy);

// nu*(s,a) = d_pi(s,a) / d_exp(s,a); throws on support violation.
Eigen::MatrixXd exact_density_ratio(const TabularMDP& mdp, const TabularPolicy& policy,
                                    const OccupancyMeasure& d_exp);

// Linear solve of Q = -f'(nu*) + gamma Ppi Q for the given policy.
Eigen::MatrixXd exact_dual_q(const TabularMDP& mdp, const TabularPolicy& policy,
                             const OccupancyMeasure& d_exp, const DivergenceSpec& spec);

// Best rank-k factorization of M[(s,a),s'] = sqrt(q) P / sqrt(pn), mapped
// back to unweighted phi, mu tables. k > min(S*A,S) clamps with a warning on
// stderr; a zero entry in pn is an error (full support required).
FactorizationTables svd_factorization(const TabularMDP& mdp, const Eigen::VectorXd& q_weights,
                                      const Eigen::VectorXd& noise_dist, int k);

// theta = sum_{s,a} phi(s,a) d(s,a)
Eigen::VectorXd exact_theta(const OccupancyMeasure& occupancy, const Eigen::MatrixXd& phi);

// Max abs error over states of the linear state-density-ratio identity
//   d_pi(s)/pn(s) = (1-gamma) rho(s)/pn(s) + gamma <mu(s), theta_pi>.
double verify_linear_density_identity(const FactorizationTables& fact, const TabularMDP& mdp,
                                      const TabularPolicy& policy);

// Max abs error over (s,a) of the dual-variable representation identity
//   Q*(s,a) = -log zeta(s,a) + phi(s,a)^T omega
//             - log((1-gamma) rho(s)/d_exp(s) + gamma mu(s)^T theta_pi)
// with omega computed from the exact Q* and pn = the d_exp state marginal.
// Requires d_exp = occupancy of expert_policy and an exact factorization.
double q_representation_identity_error(const FactorizationTables& fact, const TabularMDP& mdp,
                                       const TabularPolicy& policy,
                                       const TabularPolicy& expert_policy);

// Population value of the contrastive pre-training objective
//   J = -2 E_q[ sum_s' P phi^T mu ] + E_q[ sum_s' (phi^T mu)^2 pn ].
double population_repr_loss(const TabularMDP& mdp, const Eigen::MatrixXd& phi,
                            const Eigen::MatrixXd& mu, const Eigen::VectorXd& q_weights,
                            const Eigen::VectorXd& noise_dist);

// E_q[ sum_s' (P/sqrt(pn) - phi^T mu sqrt(pn))^2 ]; equals
// population_repr_loss + E_q[ sum_s' P^2/pn ].
double weighted_square_residual(const TabularMDP& mdp, const Eigen::MatrixXd& phi,
                                const Eigen::MatrixXd& mu, const Eigen::VectorXd& q_weights,
                                const Eigen::VectorXd& noise_dist);

// Seeded generators for oracle identity suites: full-support Dirichlet(1)
// rows, and an exactly rank-r transition tensor P = U V.
TabularMDP random_mdp(int num_states, int num_actions, double discount, std::uint64_t seed);
TabularMDP random_low_rank_mdp(int num_states, int num_actions, int rank, double discount,
                               std::uint64_t seed);
TabularPolicy random_policy(int num_states, int num_actions, std::uint64_t seed);

} // namespace reprdice
