#include "reprdice/mdp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "reprdice/io.hpp"

namespace reprdice {

namespace {
constexpr double kRowTol = 1e-12;
}

ValidationReport validate_mdp(const TabularMDP& mdp) {
    ValidationReport rep;
    if (mdp.num_states <= 0 || mdp.num_actions <= 0) {
        rep.fail("dimensions must be positive");
        return rep;
    }
    if (mdp.transition.rows() != mdp.rows() || mdp.transition.cols() != mdp.num_states)
        rep.fail("transition tensor shape mismatch");
    if (mdp.initial_dist.size() != mdp.num_states)
        rep.fail("initial distribution shape mismatch");
    if (!rep.ok) return rep;

    for (int s = 0; s < mdp.num_states; ++s) {
        for (int a = 0; a < mdp.num_actions; ++a) {
            auto row = mdp.transition.row(sa_index(s, a, mdp.num_actions));
            if (row.minCoeff() < 0.0)
                rep.fail("negative transition probability at (s=" + std::to_string(s) +
                         ",a=" + std::to_string(a) + ")");
            if (std::abs(row.sum() - 1.0) > kRowTol)
                rep.fail("transition row does not sum to 1 at (s=" + std::to_string(s) +
                         ",a=" + std::to_string(a) + "), sum=" + fmt_double(row.sum()));
        }
    }
    if (mdp.initial_dist.minCoeff() < 0.0)
        rep.fail("negative initial probability");
    if (std::abs(mdp.initial_dist.sum() - 1.0) > kRowTol)
        rep.fail("initial distribution does not sum to 1, sum=" +
                 fmt_double(mdp.initial_dist.sum()));
    if (!(mdp.discount > 0.0 && mdp.discount < 1.0))
        rep.fail("discount out of range (0,1): " + fmt_double(mdp.discount));
    return rep;
}

ValidationReport validate_policy(const TabularPolicy& policy) {
    ValidationReport rep;
    for (Eigen::Index s = 0; s < policy.probs.rows(); ++s) {
        if (policy.probs.row(s).minCoeff() < 0.0)
            rep.fail("negative action probability at s=" + std::to_string(s));
        if (std::abs(policy.probs.row(s).sum() - 1.0) > kRowTol)
            rep.fail("policy row does not sum to 1 at s=" + std::to_string(s));
    }
    return rep;
}

ValidationReport validate_occupancy(const OccupancyMeasure& d) {
    ValidationReport rep;
    if (d.dist.minCoeff() < 0.0)
        rep.fail("negative occupancy entry");
    if (std::abs(d.dist.sum() - 1.0) > 1e-10)
        rep.fail("occupancy does not sum to 1, sum=" + fmt_double(d.dist.sum()));
    return rep;
}

std::string mdp_to_text(const TabularMDP& mdp) {
    std::ostringstream out;
    out << "tabular_mdp v1 " << mdp.num_states << ' ' << mdp.num_actions << ' '
        << fmt_double(mdp.discount) << '\n';
    for (int s = 0; s < mdp.num_states; ++s)
        out << fmt_double(mdp.initial_dist(s)) << (s + 1 < mdp.num_states ? ' ' : '\n');
    for (Eigen::Index r = 0; r < mdp.rows(); ++r)
        for (int s2 = 0; s2 < mdp.num_states; ++s2)
            out << fmt_double(mdp.transition(r, s2)) << (s2 + 1 < mdp.num_states ? ' ' : '\n');
    return out.str();
}

TabularMDP mdp_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string magic, version;
    in >> magic >> version;
    if (magic != "tabular_mdp" || version != "v1")
        throw std::runtime_error("mdp_from_text: bad header '" + magic + " " + version + "'");
    TabularMDP mdp;
    std::string s_tok, a_tok, g_tok;
    in >> s_tok >> a_tok >> g_tok;
    mdp.num_states = static_cast<int>(parse_long(s_tok));
    mdp.num_actions = static_cast<int>(parse_long(a_tok));
    mdp.discount = parse_double(g_tok);
    if (mdp.num_states <= 0 || mdp.num_actions <= 0)
        throw std::runtime_error("mdp_from_text: bad dimensions");
    mdp.initial_dist.resize(mdp.num_states);
    std::string tok;
    for (int s = 0; s < mdp.num_states; ++s) {
        if (!(in >> tok)) throw std::runtime_error("mdp_from_text: truncated initial dist");
        mdp.initial_dist(s) = parse_double(tok);
    }
    mdp.transition.resize(mdp.rows(), mdp.num_states);
    for (Eigen::Index r = 0; r < mdp.rows(); ++r)
        for (int s2 = 0; s2 < mdp.num_states; ++s2) {
            if (!(in >> tok)) throw std::runtime_error("mdp_from_text: truncated transitions");
            mdp.transition(r, s2) = parse_double(tok);
        }
    return mdp;
}

void save_mdp(const TabularMDP& mdp, const std::string& path) {
    write_text_file(path, mdp_to_text(mdp));
}

TabularMDP load_mdp(const std::string& path) { return mdp_from_text(read_text_file(path)); }

} // namespace reprdice
