#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace reprdice {

enum class SourceTag { expert, general };

/// One (s, a, s') transition. Tabular environments use length-1 vectors
/// holding the integer index; continuous ones use real vectors.
struct TransitionSample {
    Eigen::VectorXd state;
    Eigen::VectorXd action;
    Eigen::VectorXd next_state;
    SourceTag tag = SourceTag::general;

    int state_index() const { return static_cast<int>(state(0)); }
    int action_index() const { return static_cast<int>(action(0)); }
    int next_state_index() const { return static_cast<int>(next_state(0)); }
};

struct TransitionDataset {
    std::vector<TransitionSample> samples;
    int state_dim = 1;
    int action_dim = 1;
    std::string env_id;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    static TransitionSample make_tabular(int s, int a, int s2, SourceTag tag) {
        TransitionSample t;
        t.state = Eigen::VectorXd::Constant(1, s);
        t.action = Eigen::VectorXd::Constant(1, a);
        t.next_state = Eigen::VectorXd::Constant(1, s2);
        t.tag = tag;
        return t;
    }
};

// text format: header `transitions v1 env_id state_dim action_dim count`,
// then one comma-separated line per sample: tag, state, action, next state
std::string dataset_to_text(const TransitionDataset& ds);
TransitionDataset dataset_from_text(const std::string& text);
void save_dataset(const TransitionDataset& ds, const std::string& path);
TransitionDataset load_dataset(const std::string& path);

} // namespace reprdice
