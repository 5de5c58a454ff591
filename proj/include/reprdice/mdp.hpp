#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace reprdice {

inline int sa_index(int s, int a, int num_actions) { return s * num_actions + a; }

/// Finite MDP: transition rows are indexed (s,a) in s-major order.
struct TabularMDP {
    int num_states = 0;
    int num_actions = 0;
    Eigen::MatrixXd transition;    // (S*A) x S
    Eigen::VectorXd initial_dist;  // S
    double discount = 0.0;

    Eigen::Index rows() const { return static_cast<Eigen::Index>(num_states) * num_actions; }
    double p(int s, int a, int s2) const { return transition(sa_index(s, a, num_actions), s2); }
};

struct TabularPolicy {
    Eigen::MatrixXd probs;  // S x A, rows sum to 1

    static TabularPolicy uniform(int num_states, int num_actions) {
        TabularPolicy pi;
        pi.probs = Eigen::MatrixXd::Constant(num_states, num_actions, 1.0 / num_actions);
        return pi;
    }
};

/// Discounted stationary state-action distribution.
struct OccupancyMeasure {
    Eigen::MatrixXd dist;  // S x A

    Eigen::VectorXd state_marginal() const { return dist.rowwise().sum(); }

    // flat view in sa-index order
    Eigen::VectorXd flat() const {
        Eigen::MatrixXd t = dist.transpose();
        return Eigen::Map<const Eigen::VectorXd>(t.data(), t.size());
    }
    static OccupancyMeasure from_flat(const Eigen::VectorXd& v, int S, int A) {
        OccupancyMeasure d;
        d.dist = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                 Eigen::RowMajor>>(v.data(), S, A);
        return d;
    }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string msg) {
        ok = false;
        failures.push_back(std::move(msg));
    }
};

ValidationReport validate_mdp(const TabularMDP& mdp);
ValidationReport validate_policy(const TabularPolicy& policy);
ValidationReport validate_occupancy(const OccupancyMeasure& d);

// text format: header `tabular_mdp v1 S A gamma`, one line for the initial
// distribution, then S*A transition rows in s-major order; value-exact
// round trip via shortest-representation printing
std::string mdp_to_text(const TabularMDP& mdp);
TabularMDP mdp_from_text(const std::string& text);
void save_mdp(const TabularMDP& mdp, const std::string& path);
TabularMDP load_mdp(const std::string& path);

} // namespace reprdice
