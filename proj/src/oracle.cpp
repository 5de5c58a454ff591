#include "reprdice/oracle.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "reprdice/operators.hpp"
#include "reprdice/rng.hpp"

namespace reprdice {

namespace {

// T[(s',a'),(s,a)] = pi(a'|s') P(s'|s,a), the matrix of Ppi_*
Eigen::MatrixXd transpose_matrix(const TabularMDP& mdp, const TabularPolicy& policy) {
    const auto n = mdp.rows();
    Eigen::MatrixXd T(n, n);
    for (int s2 = 0; s2 < mdp.num_states; ++s2)
        for (int a2 = 0; a2 < mdp.num_actions; ++a2)
            T.row(sa_index(s2, a2, mdp.num_actions)) =
                policy.probs(s2, a2) * mdp.transition.col(s2).transpose();
    return T;
}

} // namespace

OccupancyMeasure exact_occupancy(const TabularMDP& mdp, const TabularPolicy& policy) {
    const auto n = mdp.rows();
    Eigen::MatrixXd T = transpose_matrix(mdp, policy);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - mdp.discount * T;
    Eigen::VectorXd b(n);
    for (int s = 0; s < mdp.num_states; ++s)
        for (int a = 0; a < mdp.num_actions; ++a)
            b(sa_index(s, a, mdp.num_actions)) =
                (1.0 - mdp.discount) * mdp.initial_dist(s) * policy.probs(s, a);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd d = lu.solve(b);
    double resid = (A * d - b).cwiseAbs().maxCoeff();
    if (!std::isfinite(resid) || resid > 1e-8)
        throw std::runtime_error("exact_occupancy: linear solve failed");
    // scrub sub-epsilon negatives produced by the solve
    d = d.cwiseMax(0.0);
    return OccupancyMeasure::from_flat(d, mdp.num_states, mdp.num_actions);
}

Eigen::MatrixXd exact_density_ratio(const TabularMDP& mdp, const TabularPolicy& policy,
                                    const OccupancyMeasure& d_exp) {
    OccupancyMeasure d_pi = exact_occupancy(mdp, policy);
    Eigen::MatrixXd ratio(mdp.num_states, mdp.num_actions);
    for (int s = 0; s < mdp.num_states; ++s)
        for (int a = 0; a < mdp.num_actions; ++a) {
            double num = d_pi.dist(s, a);
            double den = d_exp.dist(s, a);
            if (den == 0.0) {
                if (num > 0.0)
                    throw std::runtime_error("exact_density_ratio: support violation at (s=" +
                                             std::to_string(s) + ",a=" + std::to_string(a) + ")");
                ratio(s, a) = 0.0;
            } else {
                ratio(s, a) = num / den;
            }
        }
    return ratio;
}

Eigen::MatrixXd exact_dual_q(const TabularMDP& mdp, const TabularPolicy& policy,
                             const OccupancyMeasure& d_exp, const DivergenceSpec& spec) {
    Eigen::MatrixXd nu = exact_density_ratio(mdp, policy, d_exp);
    const auto n = mdp.rows();
    // M[(s,a),(s',a')] = P(s'|s,a) pi(a'|s'), the matrix of Ppi
    Eigen::MatrixXd M(n, n);
    for (int s2 = 0; s2 < mdp.num_states; ++s2)
        for (int a2 = 0; a2 < mdp.num_actions; ++a2)
            M.col(sa_index(s2, a2, mdp.num_actions)) =
                mdp.transition.col(s2) * policy.probs(s2, a2);
    Eigen::VectorXd reward(n);
    for (int s = 0; s < mdp.num_states; ++s)
        for (int a = 0; a < mdp.num_actions; ++a)
            reward(sa_index(s, a, mdp.num_actions)) = -spec.f_prime(nu(s, a));
    if (!reward.allFinite())
        throw std::runtime_error("exact_dual_q: f'(nu*) not finite (zero ratio on support?)");
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - mdp.discount * M;
    Eigen::VectorXd q = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(reward);
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(q.data(), mdp.num_states,
                                                            mdp.num_actions);
}

FactorizationTables svd_factorization(const TabularMDP& mdp, const Eigen::VectorXd& q_weights,
                                      const Eigen::VectorXd& noise_dist, int k) {
    if (k < 1) throw std::invalid_argument("svd_factorization: k must be >= 1");
    if (noise_dist.size() != mdp.num_states || q_weights.size() != mdp.rows())
        throw std::invalid_argument("svd_factorization: weight shape mismatch");
    if (noise_dist.minCoeff() <= 0.0)
        throw std::invalid_argument("svd_factorization: full support required for pn");

    const int max_k = static_cast<int>(std::min(mdp.rows(), Eigen::Index(mdp.num_states)));
    if (k > max_k) {
        std::cerr << "svd_factorization: clamping k=" << k << " to " << max_k << "\n";
        k = max_k;
    }

    Eigen::VectorXd inv_sqrt_pn = noise_dist.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd M = (mdp.transition.array().rowwise() *
                         inv_sqrt_pn.transpose().array())
                            .colwise() *
                        q_weights.cwiseSqrt().array();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();

    FactorizationTables fact;
    fact.k = k;
    fact.noise_dist = noise_dist;
    fact.singular_values = sv;
    fact.residual = sv.tail(sv.size() - k).squaredNorm();

    // Row-wise projection of t(s,a) = P/sqrt(pn) onto the top-k right singular
    // basis: phi = Sigma^{-1/2} V_k^T t. Coincides with the SVD factor where
    // q > 0 and completes rows with zero weight by least squares.
    Eigen::MatrixXd Vk = svd.matrixV().leftCols(k);
    Eigen::VectorXd sv_k = sv.head(k);
    for (int i = 0; i < k; ++i)
        if (sv_k(i) <= 0.0) sv_k(i) = 1.0;  // dead direction, projection is 0 anyway
    Eigen::MatrixXd targets =
        mdp.transition.array().rowwise() * inv_sqrt_pn.transpose().array();
    fact.phi = (targets * Vk).array().rowwise() *
               sv_k.cwiseSqrt().cwiseInverse().transpose().array();
    fact.mu = (Vk.array().rowwise() * sv_k.cwiseSqrt().transpose().array()).colwise() *
              inv_sqrt_pn.array();
    return fact;
}

Eigen::VectorXd exact_theta(const OccupancyMeasure& occupancy, const Eigen::MatrixXd& phi) {
    if (phi.rows() != occupancy.dist.size())
        throw std::invalid_argument("exact_theta: shape mismatch");
    return phi.transpose() * occupancy.flat();
}

double verify_linear_density_identity(const FactorizationTables& fact, const TabularMDP& mdp,
                                      const TabularPolicy& policy) {
    OccupancyMeasure d_pi = exact_occupancy(mdp, policy);
    Eigen::VectorXd theta = exact_theta(d_pi, fact.phi);
    Eigen::VectorXd marg = d_pi.state_marginal();
    double max_err = 0.0;
    for (int s = 0; s < mdp.num_states; ++s) {
        double lhs = marg(s) / fact.noise_dist(s);
        double rhs = (1.0 - mdp.discount) * mdp.initial_dist(s) / fact.noise_dist(s) +
                     mdp.discount * fact.mu.row(s).dot(theta);
        max_err = std::max(max_err, std::abs(lhs - rhs));
    }
    return max_err;
}

double q_representation_identity_error(const FactorizationTables& fact, const TabularMDP& mdp,
                                       const TabularPolicy& policy,
                                       const TabularPolicy& expert_policy) {
    OccupancyMeasure d_exp = exact_occupancy(mdp, expert_policy);
    Eigen::VectorXd pn = d_exp.state_marginal();
    if ((pn.array() <= 0.0).any())
        throw std::runtime_error("q_representation_identity_error: expert occupancy must have "
                                 "full state support");
    if ((fact.noise_dist - pn).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("q_representation_identity_error: factorization noise "
                                    "distribution must be the expert state marginal");

    auto spec = kl_divergence_spec(KLVariant::normalized);
    Eigen::MatrixXd q_star = exact_dual_q(mdp, policy, d_exp, spec);

    // omega = gamma sum_s' mu(s') pn(s') V(s'),  V(s') = sum_a' pi(a'|s') Q*(s',a')
    Eigen::VectorXd v = (policy.probs.array() * q_star.array()).rowwise().sum();
    Eigen::VectorXd omega =
        mdp.discount * fact.mu.transpose() * (fact.noise_dist.asDiagonal() * v);

    OccupancyMeasure d_pi = exact_occupancy(mdp, policy);
    Eigen::VectorXd theta = exact_theta(d_pi, fact.phi);

    double max_err = 0.0;
    for (int s = 0; s < mdp.num_states; ++s) {
        double log_arg = (1.0 - mdp.discount) * mdp.initial_dist(s) / pn(s) +
                         mdp.discount * fact.mu.row(s).dot(theta);
        for (int a = 0; a < mdp.num_actions; ++a) {
            double zeta = policy.probs(s, a) / expert_policy.probs(s, a);
            double rhs = -std::log(zeta) +
                         fact.phi.row(sa_index(s, a, mdp.num_actions)).dot(omega) -
                         std::log(log_arg);
            max_err = std::max(max_err, std::abs(q_star(s, a) - rhs));
        }
    }
    return max_err;
}

double population_repr_loss(const TabularMDP& mdp, const Eigen::MatrixXd& phi,
                            const Eigen::MatrixXd& mu, const Eigen::VectorXd& q_weights,
                            const Eigen::VectorXd& noise_dist) {
    Eigen::MatrixXd g = phi * mu.transpose();  // (S*A) x S
    double dyn_term =
        (q_weights.array() * (mdp.transition.array() * g.array()).rowwise().sum()).sum();
    double noise_term =
        (q_weights.array() *
         (g.array().square().rowwise() * noise_dist.transpose().array()).rowwise().sum())
            .sum();
    return -2.0 * dyn_term + noise_term;
}

double weighted_square_residual(const TabularMDP& mdp, const Eigen::MatrixXd& phi,
                                const Eigen::MatrixXd& mu, const Eigen::VectorXd& q_weights,
                                const Eigen::VectorXd& noise_dist) {
    Eigen::MatrixXd g = phi * mu.transpose();
    Eigen::ArrayXd sqrt_pn = noise_dist.array().sqrt();
    Eigen::MatrixXd err = (mdp.transition.array().rowwise() / sqrt_pn.transpose()) -
                          (g.array().rowwise() * sqrt_pn.transpose());
    return (q_weights.array() * err.array().square().rowwise().sum()).sum();
}

TabularMDP random_mdp(int num_states, int num_actions, double discount, std::uint64_t seed) {
    Rng rng(seed);
    TabularMDP mdp;
    mdp.num_states = num_states;
    mdp.num_actions = num_actions;
    mdp.discount = discount;
    mdp.transition.resize(mdp.rows(), num_states);
    for (Eigen::Index r = 0; r < mdp.rows(); ++r) {
        for (int s2 = 0; s2 < num_states; ++s2)
            mdp.transition(r, s2) = -std::log(rng.uniform01());  // Dirichlet(1,...,1)
        mdp.transition.row(r) /= mdp.transition.row(r).sum();
    }
    mdp.initial_dist.resize(num_states);
    for (int s = 0; s < num_states; ++s) mdp.initial_dist(s) = -std::log(rng.uniform01());
    mdp.initial_dist /= mdp.initial_dist.sum();
    return mdp;
}

TabularMDP random_low_rank_mdp(int num_states, int num_actions, int rank, double discount,
                               std::uint64_t seed) {
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(num_states) * num_actions;
    Eigen::MatrixXd mix(n, rank), proto(rank, num_states);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (int j = 0; j < rank; ++j) mix(r, j) = -std::log(rng.uniform01());
        mix.row(r) /= mix.row(r).sum();
    }
    for (int j = 0; j < rank; ++j) {
        for (int s2 = 0; s2 < num_states; ++s2) proto(j, s2) = -std::log(rng.uniform01());
        proto.row(j) /= proto.row(j).sum();
    }
    TabularMDP mdp;
    mdp.num_states = num_states;
    mdp.num_actions = num_actions;
    mdp.discount = discount;
    mdp.transition = mix * proto;  // stochastic rows, rank <= rank
    mdp.initial_dist.resize(num_states);
    for (int s = 0; s < num_states; ++s) mdp.initial_dist(s) = -std::log(rng.uniform01());
    mdp.initial_dist /= mdp.initial_dist.sum();
    return mdp;
}

TabularPolicy random_policy(int num_states, int num_actions, std::uint64_t seed) {
    Rng rng(seed);
    TabularPolicy pi;
    pi.probs.resize(num_states, num_actions);
    for (int s = 0; s < num_states; ++s) {
        for (int a = 0; a < num_actions; ++a) pi.probs(s, a) = -std::log(rng.uniform01());
        pi.probs.row(s) /= pi.probs.row(s).sum();
    }
    return pi;
}

} // namespace reprdice
