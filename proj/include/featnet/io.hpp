#pragma once
// Plain-text serialization for the core types. All node and feature indices
// in files are 1-based.
//
// Feature matrix:   header "n L_n", then one line per node:
//                   "i N_i k1 k2 ..." with sorted feature indices.
// Graph:            header "# n=<N>", then TSV rows "i j phase" with
//                   phase in {0 = observed/unknown, 1 = first, 2 = second}.
// Estimation report: a single JSON object.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "featnet/graph.hpp"
#include "featnet/types.hpp"

namespace featnet {

namespace detail {
[[noreturn]] inline void parse_fail(const std::string& what, std::size_t line,
                                    const std::string& msg) {
    throw std::runtime_error(what + ": line " + std::to_string(line) + ": " + msg);
}
}  // namespace detail

inline void write_feature_matrix(std::ostream& os, const FeatureMatrix& f) {
    os << f.node_count() << ' ' << f.total_features() << '\n';
    for (std::size_t i = 0; i < f.node_count(); ++i) {
        os << (i + 1) << ' ' << f.new_counts[i];
        for (FeatureId k : f.rows[i]) os << ' ' << (k + 1);
        os << '\n';
    }
}

inline FeatureMatrix read_feature_matrix(std::istream& is) {
    const std::string what = "feature matrix";
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) detail::parse_fail(what, 1, "empty file");
    ++lineno;
    std::istringstream header(line);
    std::size_t n = 0;
    std::uint64_t ln = 0;
    if (!(header >> n >> ln)) detail::parse_fail(what, lineno, "expected header 'n L_n'");

    FeatureMatrix f;
    f.rows.resize(n);
    f.new_counts.resize(n);
    f.cum_counts.resize(n);
    std::uint64_t cum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(is, line))
            detail::parse_fail(what, lineno + 1, "missing row for node " + std::to_string(i + 1));
        ++lineno;
        std::istringstream row(line);
        std::size_t node = 0;
        std::uint32_t fresh = 0;
        if (!(row >> node >> fresh) || node != i + 1)
            detail::parse_fail(what, lineno, "expected 'i N_i k...' for node " + std::to_string(i + 1));
        std::uint64_t k;
        while (row >> k) {
            if (k == 0) detail::parse_fail(what, lineno, "feature indices are 1-based");
            f.rows[i].push_back(static_cast<FeatureId>(k - 1));
        }
        if (!row.eof()) detail::parse_fail(what, lineno, "non-numeric feature index");
        cum += fresh;
        f.new_counts[i] = fresh;
        f.cum_counts[i] = cum;
    }
    if (cum != ln) detail::parse_fail(what, 1, "header L_n disagrees with the sum of N_i");
    try {
        f.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(what + ": " + e.what());
    }
    return f;
}

inline void write_graph(std::ostream& os, const LabeledGraph& g) {
    os << "# n=" << g.n << '\n';
    for (const auto& e : g.edges)
        os << (e.u + 1) << '\t' << (e.v + 1) << '\t' << static_cast<int>(e.phase) << '\n';
}

inline LabeledGraph read_graph(std::istream& is) {
    const std::string what = "graph";
    std::string line;
    if (!std::getline(is, line)) detail::parse_fail(what, 1, "empty file");
    std::size_t lineno = 1;
    LabeledGraph g;
    if (line.rfind("# n=", 0) != 0)
        detail::parse_fail(what, 1, "expected header '# n=<count>'");
    g.n = static_cast<NodeId>(std::stoull(line.substr(4)));
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::uint64_t a = 0, b = 0;
        int phase = -1;
        if (!(row >> a >> b >> phase)) detail::parse_fail(what, lineno, "expected 'i j phase'");
        if (a == 0 || b == 0) detail::parse_fail(what, lineno, "node indices are 1-based");
        if (phase < 0 || phase > 2) detail::parse_fail(what, lineno, "phase must be 0, 1, or 2");
        try {
            g.add_edge(static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1),
                       static_cast<EdgePhase>(phase));
        } catch (const std::exception& e) {
            detail::parse_fail(what, lineno, e.what());
        }
    }
    return g;
}

inline nlohmann::json report_to_json(const EstimationReport& r) {
    nlohmann::json j;
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v;
    };
    put("alpha_hat", r.alpha_hat);
    put("beta_hat", r.beta_hat);
    put("delta_hat", r.delta_hat);
    put("p_hat", r.p_hat);
    put("k_hat", r.k_hat);
    put("theta_hat", r.theta_hat);
    j["diagnostics"] = r.diagnostics;
    return j;
}

inline EstimationReport report_from_json(const nlohmann::json& j) {
    EstimationReport r;
    auto get = [&](const char* key) -> std::optional<double> {
        if (j.contains(key)) return j.at(key).get<double>();
        return std::nullopt;
    };
    r.alpha_hat = get("alpha_hat");
    r.beta_hat = get("beta_hat");
    r.delta_hat = get("delta_hat");
    r.p_hat = get("p_hat");
    r.k_hat = get("k_hat");
    r.theta_hat = get("theta_hat");
    if (j.contains("diagnostics"))
        r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    r.validate();
    return r;
}

inline void write_report(std::ostream& os, const EstimationReport& r) {
    os << report_to_json(r).dump(2) << '\n';
}

inline EstimationReport read_report(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("report: ") + e.what());
    }
    return report_from_json(j);
}

// File-path conveniences.
template <typename T, typename Reader>
T read_file(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return reader(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

template <typename T, typename Writer>
void write_file(const std::string& path, const T& value, Writer writer) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    writer(out, value);
}

inline FeatureMatrix load_feature_matrix(const std::string& path) {
    return read_file<FeatureMatrix>(path, [](std::istream& is) { return read_feature_matrix(is); });
}
inline LabeledGraph load_graph(const std::string& path) {
    return read_file<LabeledGraph>(path, [](std::istream& is) { return read_graph(is); });
}
inline EstimationReport load_report(const std::string& path) {
    return read_file<EstimationReport>(path, [](std::istream& is) { return read_report(is); });
}
inline void save_feature_matrix(const std::string& path, const FeatureMatrix& f) {
    write_file(path, f, [](std::ostream& os, const FeatureMatrix& v) { write_feature_matrix(os, v); });
}
inline void save_graph(const std::string& path, const LabeledGraph& g) {
    write_file(path, g, [](std::ostream& os, const LabeledGraph& v) { write_graph(os, v); });
}
inline void save_report(const std::string& path, const EstimationReport& r) {
    write_file(path, r, [](std::ostream& os, const EstimationReport& v) { write_report(os, v); });
}

}  // namespace featnet
