// featnet command-line tool: simulate the model, estimate parameters,
// compute network metrics, ingest document corpora, and run parameter
// sweeps. See README.md for file formats.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "featnet/featnet.hpp"

namespace fs = std::filesystem;
using namespace featnet;

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("FEATNET_OUT_DIR");
    return env ? env : ".";
}

std::string realization_tag(std::size_t r, std::size_t total) {
    const int width = total >= 1000 ? 4 : 3;
    std::ostringstream os;
    os << 'r' << std::setw(width) << std::setfill('0') << r;
    return os.str();
}

struct SimulateOpts {
    std::size_t n = 1000;
    double alpha = 10, beta = 0.5, delta = 0.1, p = 0, k_steep = 1;
    std::optional<double> theta, ell;
    std::size_t realizations = 1;
    std::uint64_t seed = 1;
    std::string out_dir = default_out_dir();
};

int cmd_simulate(const SimulateOpts& o) {
    if (o.theta.has_value() == o.ell.has_value())
        throw std::runtime_error("simulate: give exactly one of --theta or --ell");
    const SimulationCell cell{o.n, ModelParams(o.alpha, o.beta, o.delta, o.p), o.k_steep, o.theta,
                              o.ell};
    fs::create_directories(o.out_dir);

    std::vector<RealizationResult> results(o.realizations);
    parallel_for(o.realizations, [&](std::size_t r) {
        results[r] = run_realization(cell, GenSeed{o.seed, r});
    });

    std::ofstream table(fs::path(o.out_dir) / "metrics.csv");
    if (!table) throw std::runtime_error("cannot write metrics.csv in " + o.out_dir);
    table << "realization,L_n,theta,total_links,first_phase_links,clustering,rp20,h_star,"
             "uniformity\n";
    double mean_links = 0, mean_cc = 0, mean_rp = 0;
    for (std::size_t r = 0; r < o.realizations; ++r) {
        const auto& res = results[r];
        const std::string tag = realization_tag(r, o.realizations);
        save_feature_matrix((fs::path(o.out_dir) / ("features_" + tag + ".txt")).string(),
                            res.features);
        save_graph((fs::path(o.out_dir) / ("graph_" + tag + ".tsv")).string(), res.graph);
        table << r << ',' << res.features.total_features() << ',' << res.theta_used << ','
              << res.total_links << ',' << res.first_phase_links << ',' << res.clustering << ','
              << res.rp_fraction << ',' << res.rp_h_star << ',' << res.uniformity << '\n';
        mean_links += static_cast<double>(res.total_links);
        mean_cc += res.clustering;
        mean_rp += res.rp_fraction;
    }
    const double inv = 1.0 / static_cast<double>(o.realizations);
    std::cout << "realizations " << o.realizations << "\nmean_total_links " << mean_links * inv
              << "\nmean_clustering " << mean_cc * inv << "\nmean_rp20 " << mean_rp * inv << "\n";
    return 0;
}

struct EstimateOpts {
    std::string features_path, graph_path, which = "all", out_path;
    double s_star = 10;
    std::optional<double> f_star, ell;
};

int cmd_estimate(const EstimateOpts& o) {
    const bool want_beta = o.which == "all" || o.which == "beta" || o.which == "alpha";
    const bool want_alpha = o.which == "all" || o.which == "alpha";
    const bool want_delta = o.which == "all" || o.which == "delta";
    const bool want_ktheta = o.which == "all" || o.which == "ktheta";
    const bool want_p = o.which == "all" || o.which == "p";
    if (!(want_beta || want_delta || want_ktheta || want_p))
        throw std::runtime_error("estimate: --which must be one of alpha,beta,delta,ktheta,p,all");
    if (o.features_path.empty()) throw std::runtime_error("estimate: --features is required");

    const FeatureMatrix f = load_feature_matrix(o.features_path);
    std::optional<LabeledGraph> g;
    if (!o.graph_path.empty()) g = load_graph(o.graph_path);

    EstimationReport rep;
    if (want_beta) rep.beta_hat = estimate_beta(f);
    if (want_alpha) rep.alpha_hat = estimate_alpha(f, *rep.beta_hat);
    if (want_delta) {
        rep.delta_hat = estimate_delta(f);
        rep.diagnostics["delta_loglikelihood"] = delta_loglikelihood(f, *rep.delta_hat);
    }
    if (want_ktheta) {
        SimilarityHistogram hist;
        double ell, f_star;
        if (o.f_star && o.ell) {
            hist = similarity_histogram(f);
            ell = *o.ell;
            f_star = *o.f_star;
        } else {
            if (!g) throw std::runtime_error(
                "estimate: ktheta needs --graph, or both --f-star and --ell");
            hist = similarity_histogram(f, &*g, /*first_phase_only=*/g->has_phase_labels());
            ell = o.ell ? *o.ell
                        : static_cast<double>(g->has_phase_labels() ? g->first_phase_count()
                                                                    : g->edge_count());
            f_star = o.f_star ? *o.f_star
                              : observed_f_star(hist, static_cast<std::uint32_t>(o.s_star));
        }
        const SigmoidParams sp = fit_k_theta(hist, ell, o.s_star, f_star);
        rep.k_hat = sp.k_steep;
        rep.theta_hat = sp.theta;
        rep.diagnostics["ktheta_f_star"] = f_star;
        rep.diagnostics["ktheta_ell"] = ell;
    }
    if (want_p) {
        if (!g) throw std::runtime_error("estimate: p needs --graph");
        if (!g->has_phase_labels())
            throw std::runtime_error("estimate: graph has untagged edges; p needs first/second "
                                     "phase labels");
        rep.p_hat = estimate_p(f, *g);
    }
    rep.validate();
    if (o.out_path.empty()) write_report(std::cout, rep);
    else save_report(o.out_path, rep);
    return 0;
}

struct MetricsOpts {
    std::string graph_path, features_path, out_prefix;
    std::uint32_t h = 20;
};

int cmd_metrics(const MetricsOpts& o) {
    const LabeledGraph g = load_graph(o.graph_path);
    const double cc = clustering_coefficient(g);
    const ReachablePairs rp = reachable_pairs(g, o.h);
    const ComponentSummary comp = component_summary(g);

    std::cout << "nodes " << g.n << "\nlinks " << g.edge_count() << "\nclustering_coefficient "
              << cc << "\nrp_" << o.h << ' ' << rp.fraction << "\nh_star " << rp.h_star
              << "\ncomponents " << comp.component_count << "\nlargest_component_nodes "
              << comp.largest_size << "\nlargest_component_links " << comp.largest_edges
              << "\nlargest_component_diameter " << comp.largest_diameter << "\nisolated_nodes "
              << comp.isolated_count << "\n";

    const std::string prefix = o.out_prefix.empty() ? "metrics" : o.out_prefix;
    {
        std::ofstream os(prefix + "_ccdf.csv");
        if (!os) throw std::runtime_error("cannot write " + prefix + "_ccdf.csv");
        os << "degree,ccdf\n";
        for (const auto& [d, frac] : degree_ccdf(g)) os << d << ',' << frac << '\n';
    }
    if (!o.features_path.empty()) {
        const FeatureMatrix f = load_feature_matrix(o.features_path);
        const SharedFeatureCurves curves = shared_feature_distributions(f, g);
        std::ofstream os(prefix + "_shared_features.csv");
        if (!os) throw std::runtime_error("cannot write " + prefix + "_shared_features.csv");
        os << "x,pairs,linked_pairs,linked_given_x,unlinked_given_x,link_prob_given_x\n";
        for (std::size_t x = 0; x < curves.pair_count.size(); ++x)
            os << x << ',' << curves.pair_count[x] << ',' << curves.linked_count[x] << ','
               << curves.linked_given_x[x] << ',' << curves.unlinked_given_x[x] << ','
               << curves.link_prob_given_x[x] << '\n';
    }
    return 0;
}

struct IngestOpts {
    std::string docs_path, stopwords_path, out_features, out_graph;
};

int cmd_ingest(const IngestOpts& o) {
    const auto docs = sort_chronologically(load_documents(o.docs_path));
    std::unordered_set<std::string> stop;
    if (o.stopwords_path.empty())
        stop = {default_stopwords().begin(), default_stopwords().end()};
    else
        stop = load_stopwords(o.stopwords_path);
    const FeatureMatrix f = build_feature_matrix(docs, stop);
    const LabeledGraph g = build_coauthorship_graph(docs);
    save_feature_matrix(o.out_features, f);
    save_graph(o.out_graph, g);
    std::cout << "documents " << docs.size() << "\nfeatures " << f.total_features() << "\nlinks "
              << g.edge_count() << "\n";
    return 0;
}

struct SweepOpts {
    std::string grid_path, out_path;
    std::size_t realizations = 1;
    std::uint64_t seed = 1;
};

// Grid file: CSV with header n,alpha,beta,delta,K,p,ell (or theta instead
// of ell). One simulation cell per row.
int cmd_sweep(const SweepOpts& o) {
    std::ifstream in(o.grid_path);
    if (!in) throw std::runtime_error("cannot open " + o.grid_path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("sweep: empty grid file");
    std::vector<std::string> cols;
    {
        std::istringstream hs(line);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    auto col_of = [&](const std::string& name) {
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (cols[t] == name) return static_cast<std::ptrdiff_t>(t);
        return static_cast<std::ptrdiff_t>(-1);
    };
    const auto c_n = col_of("n"), c_a = col_of("alpha"), c_b = col_of("beta"),
               c_d = col_of("delta"), c_k = col_of("K"), c_p = col_of("p"),
               c_ell = col_of("ell"), c_th = col_of("theta");
    if (c_a < 0 || c_b < 0 || c_d < 0 || c_k < 0 || c_p < 0 || (c_ell < 0 && c_th < 0))
        throw std::runtime_error("sweep: grid header needs alpha,beta,delta,K,p and ell or theta");

    std::ofstream out(o.out_path);
    if (!out) throw std::runtime_error("cannot write " + o.out_path);
    out << "n,alpha,beta,delta,K,p,ell,theta,mean_links,mean_first_phase_links,mean_clustering,"
           "mean_rp20,max_h_star,mean_uniformity,mean_L_n\n";
    std::size_t row = 1;
    std::uint64_t cell_index = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        auto value = [&](std::ptrdiff_t c) -> std::optional<double> {
            if (c < 0 || static_cast<std::size_t>(c) >= fields.size() || fields[c].empty())
                return std::nullopt;
            return std::stod(fields[c]);
        };
        try {
            SimulationCell cell{
                c_n >= 0 && value(c_n) ? static_cast<std::size_t>(*value(c_n)) : 1000,
                ModelParams(*value(c_a), *value(c_b), *value(c_d), *value(c_p)),
                *value(c_k), value(c_th), value(c_ell)};
            if (cell.theta.has_value() == cell.ell.has_value())
                throw std::runtime_error("exactly one of ell/theta per row");
            // disjoint stream block per cell so rows are schedule-independent
            const CellAggregate agg = aggregate_cell(cell, o.realizations,
                                                     GenSeed{o.seed, cell_index << 24});
            out << cell.n << ',' << cell.params.alpha << ',' << cell.params.beta << ','
                << cell.params.delta << ',' << cell.k_steep << ',' << cell.params.p << ','
                << (cell.ell ? std::to_string(*cell.ell) : "") << ','
                << (cell.theta ? std::to_string(*cell.theta) : "") << ',' << agg.mean_links << ','
                << agg.mean_first_phase_links << ',' << agg.mean_clustering << ',' << agg.mean_rp
                << ',' << agg.max_h_star << ',' << agg.mean_uniformity << ','
                << agg.mean_total_features << '\n';
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep: grid row " + std::to_string(row) + ": " + e.what());
        }
        ++cell_index;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growing feature-structure network model: simulation, estimation, metrics"};
    app.set_config("--config");
    app.require_subcommand(1);

    SimulateOpts so;
    auto* sim = app.add_subcommand("simulate", "generate feature matrices and networks");
    sim->add_option("--n", so.n, "number of nodes")->check(CLI::PositiveNumber);
    sim->add_option("--alpha", so.alpha, "new-feature rate (> 0)");
    sim->add_option("--beta", so.beta, "growth exponent in [0,1]");
    sim->add_option("--delta", so.delta, "i.i.d./preferential-attachment mix in [0,1]");
    sim->add_option("--p", so.p, "triadic-closure probability in [0,1]");
    sim->add_option("--K", so.k_steep, "sigmoid steepness (> 0)");
    auto* theta_opt = sim->add_option("--theta", so.theta, "sigmoid threshold");
    sim->add_option("--ell", so.ell, "expected first-phase link count; calibrates theta")
        ->excludes(theta_opt);
    sim->add_option("--realizations", so.realizations)->check(CLI::PositiveNumber);
    sim->add_option("--seed", so.seed, "root seed");
    sim->add_option("--out-dir", so.out_dir, "output directory (default $FEATNET_OUT_DIR or .)");

    EstimateOpts eo;
    auto* est = app.add_subcommand("estimate", "estimate model parameters from data");
    est->add_option("--features", eo.features_path, "feature matrix file")->required();
    est->add_option("--graph", eo.graph_path, "graph file (needed for ktheta/p)");
    est->add_option("--which", eo.which, "alpha,beta,delta,ktheta,p,all");
    est->add_option("--s-star", eo.s_star, "similarity pinned by the ktheta system");
    est->add_option("--f-star", eo.f_star, "link fraction at s-star (else observed)");
    est->add_option("--ell", eo.ell, "first-phase link count (else observed)");
    est->add_option("--out", eo.out_path, "write report JSON here instead of stdout");

    MetricsOpts mo;
    auto* met = app.add_subcommand("metrics", "network statistics");
    met->add_option("--graph", mo.graph_path)->required();
    met->add_option("--features", mo.features_path, "adds shared-feature curves");
    met->add_option("--hops", mo.h, "distance cutoff for reachable pairs")->check(CLI::PositiveNumber);
    met->add_option("--out-prefix", mo.out_prefix, "prefix for CSV outputs (default 'metrics')");

    IngestOpts io_;
    auto* ing = app.add_subcommand("ingest", "document corpus -> feature matrix + graph");
    ing->add_option("--docs", io_.docs_path, "JSON Lines document file")->required();
    ing->add_option("--stopwords", io_.stopwords_path, "one word per line (default built-in)");
    ing->add_option("--out-features", io_.out_features)->required();
    ing->add_option("--out-graph", io_.out_graph)->required();

    SweepOpts wo;
    auto* swp = app.add_subcommand("sweep", "run a grid of simulation cells");
    swp->add_option("--grid", wo.grid_path, "CSV grid file")->required();
    swp->add_option("--realizations", wo.realizations)->check(CLI::PositiveNumber);
    swp->add_option("--seed", wo.seed);
    swp->add_option("--out", wo.out_path, "aggregate CSV")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (sim->parsed()) return cmd_simulate(so);
        if (est->parsed()) return cmd_estimate(eo);
        if (met->parsed()) return cmd_metrics(mo);
        if (ing->parsed()) return cmd_ingest(io_);
        if (swp->parsed()) return cmd_sweep(wo);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
