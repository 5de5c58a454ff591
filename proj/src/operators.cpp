#include "reprdice/operators.hpp"

#include <stdexcept>

#include "reprdice/rng.hpp"

namespace reprdice {

namespace {
void check_shapes(const TabularMDP& mdp, const TabularPolicy& policy, Eigen::Index rows,
                  Eigen::Index cols, const char* who) {
    if (policy.probs.rows() != mdp.num_states || policy.probs.cols() != mdp.num_actions)
        throw std::invalid_argument(std::string(who) + ": policy shape mismatch");
    if (rows != mdp.num_states || cols != mdp.num_actions)
        throw std::invalid_argument(std::string(who) + ": table shape mismatch");
}
} // namespace

OccupancyMeasure transpose_operator(const TabularMDP& mdp, const TabularPolicy& policy,
                                    const OccupancyMeasure& d) {
    check_shapes(mdp, policy, d.dist.rows(), d.dist.cols(), "transpose_operator");
    // state inflow: m(s') = sum_{s,a} P(s'|s,a) d(s,a)
    Eigen::VectorXd inflow = mdp.transition.transpose() * d.flat();
    OccupancyMeasure out;
    out.dist = policy.probs.array().colwise() * inflow.array();
    return out;
}

Eigen::MatrixXd adjoint_operator(const TabularMDP& mdp, const TabularPolicy& policy,
                                 const Eigen::MatrixXd& q) {
    check_shapes(mdp, policy, q.rows(), q.cols(), "adjoint_operator");
    Eigen::VectorXd vq = (policy.probs.array() * q.array()).rowwise().sum();
    Eigen::VectorXd flat = mdp.transition * vq;  // (S*A)
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(flat.data(), mdp.num_states,
                                                            mdp.num_actions);
}

OccupancyMeasure occupancy_recursion_step(const TabularMDP& mdp, const TabularPolicy& policy,
                                          const OccupancyMeasure& d) {
    OccupancyMeasure pushed = transpose_operator(mdp, policy, d);
    OccupancyMeasure out;
    out.dist = (1.0 - mdp.discount) *
                   (policy.probs.array().colwise() * mdp.initial_dist.array()).matrix() +
               mdp.discount * pushed.dist;
    return out;
}

TransitionDataset sample_trajectories(const TabularMDP& mdp, const TabularPolicy& policy,
                                      int num_trajectories, int horizon, std::uint64_t seed,
                                      SourceTag tag, const std::string& env_id) {
    if (num_trajectories < 0 || horizon < 1)
        throw std::invalid_argument("sample_trajectories: invalid counts");
    TransitionDataset ds;
    ds.state_dim = 1;
    ds.action_dim = 1;
    ds.env_id = env_id;
    ds.samples.reserve(static_cast<std::size_t>(num_trajectories) * horizon);
    Rng rng(seed);
    for (int traj = 0; traj < num_trajectories; ++traj) {
        int s = rng.categorical({mdp.initial_dist.data(),
                                 static_cast<std::size_t>(mdp.num_states)});
        for (int t = 0; t < horizon; ++t) {
            Eigen::VectorXd pi_row = policy.probs.row(s);
            int a = rng.categorical({pi_row.data(), static_cast<std::size_t>(mdp.num_actions)});
            Eigen::VectorXd p_row = mdp.transition.row(sa_index(s, a, mdp.num_actions));
            int s2 = rng.categorical({p_row.data(), static_cast<std::size_t>(mdp.num_states)});
            ds.samples.push_back(TransitionDataset::make_tabular(s, a, s2, tag));
            s = s2;
        }
    }
    return ds;
}

} // namespace reprdice
