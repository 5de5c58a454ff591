#include "reprdice/dataset.hpp"

#include <sstream>
#include <stdexcept>

#include "reprdice/io.hpp"

namespace reprdice {

std::string dataset_to_text(const TransitionDataset& ds) {
    if (ds.env_id.find(' ') != std::string::npos)
        throw std::invalid_argument("dataset_to_text: env_id must not contain spaces");
    std::ostringstream out;
    out << "transitions v1 " << ds.env_id << ' ' << ds.state_dim << ' ' << ds.action_dim << ' '
        << ds.samples.size() << '\n';
    for (const auto& t : ds.samples) {
        out << (t.tag == SourceTag::expert ? "expert" : "general");
        for (int i = 0; i < ds.state_dim; ++i) out << ',' << fmt_double(t.state(i));
        for (int i = 0; i < ds.action_dim; ++i) out << ',' << fmt_double(t.action(i));
        for (int i = 0; i < ds.state_dim; ++i) out << ',' << fmt_double(t.next_state(i));
        out << '\n';
    }
    return out.str();
}

TransitionDataset dataset_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("dataset_from_text: empty input");
    auto h = split(header, ' ');
    if (h.size() != 6 || h[0] != "transitions" || h[1] != "v1")
        throw std::runtime_error("dataset_from_text: bad header");

    TransitionDataset ds;
    ds.env_id = h[2];
    ds.state_dim = static_cast<int>(parse_long(h[3]));
    ds.action_dim = static_cast<int>(parse_long(h[4]));
    const auto count = static_cast<std::size_t>(parse_long(h[5]));
    if (ds.state_dim <= 0 || ds.action_dim <= 0)
        throw std::runtime_error("dataset_from_text: bad dimensions");

    const std::size_t fields = 1 + 2 * ds.state_dim + ds.action_dim;
    ds.samples.reserve(count);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto toks = split(line, ',');
        if (toks.size() != fields)
            throw std::runtime_error("dataset_from_text: bad field count in line '" + line + "'");
        TransitionSample t;
        if (toks[0] == "expert")
            t.tag = SourceTag::expert;
        else if (toks[0] == "general")
            t.tag = SourceTag::general;
        else
            throw std::runtime_error("dataset_from_text: unknown tag '" + toks[0] + "'");
        t.state.resize(ds.state_dim);
        t.action.resize(ds.action_dim);
        t.next_state.resize(ds.state_dim);
        std::size_t i = 1;
        for (int j = 0; j < ds.state_dim; ++j) t.state(j) = parse_double(toks[i++]);
        for (int j = 0; j < ds.action_dim; ++j) t.action(j) = parse_double(toks[i++]);
        for (int j = 0; j < ds.state_dim; ++j) t.next_state(j) = parse_double(toks[i++]);
        ds.samples.push_back(std::move(t));
    }
    if (ds.samples.size() != count)
        throw std::runtime_error("dataset_from_text: sample count mismatch");
    return ds;
}

void save_dataset(const TransitionDataset& ds, const std::string& path) {
    write_text_file(path, dataset_to_text(ds));
}

TransitionDataset load_dataset(const std::string& path) {
    return dataset_from_text(read_text_file(path));
}

} // namespace reprdice
