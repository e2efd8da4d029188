// Command-line front end: state generation, simulated measurement, adaptive
// witness detection, the labeled-state summary table, tomographic
// reconstruction, and the restricted-witness detection-fraction study.
//
// Exit codes: 0 success, 2 command-line errors, 3 bad labels or malformed
// inputs, 4 solver failures, 5 unknown witness-coefficient subsets.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "entwit/entwit.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_file(path, content);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

entwit::Convention parse_convention(const std::string& name) {
    if (name == "table") return entwit::Convention::Table;
    if (name == "trace_norm") return entwit::Convention::TraceNorm;
    throw std::invalid_argument("unknown convention '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulated entanglement detection from partial measurements"};
    app.require_subcommand(1);

    std::string label, out_path, out_prefix;
    std::string labels_arg = "all", order_arg = "all";
    std::string convention = "table", domain = "rectangle", normalization = "projection";
    std::string subset_arg;
    double sigma = 0.0, tol = 1e-7;
    std::uint64_t seed = 1;
    int trials = 1, jobs = 1, resolution = 400, samples = 200000;
    bool monte_carlo = false;

    CLI::App* c_state = app.add_subcommand("state", "write a labeled state as JSON");
    c_state->add_option("--label", label, "state label (B1..B4, S1, S2, E1..E14, H:...)")
        ->required();
    c_state->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* c_measure = app.add_subcommand("measure", "simulate expectation values");
    c_measure->add_option("--label", label)->required();
    c_measure->add_option("--labels", labels_arg, "comma list of observables or 'all'");
    c_measure->add_option("--sigma", sigma, "Gaussian noise level");
    c_measure->add_option("--seed", seed);
    c_measure->add_option("--out", out_path);

    CLI::App* c_detect = app.add_subcommand("detect", "adaptive witness detection");
    c_detect->add_option("--label", label)->required();
    c_detect->add_option("--sigma", sigma);
    c_detect->add_option("--seed", seed);
    c_detect->add_option("--tol", tol, "duality-gap tolerance");
    c_detect->add_option("--order", order_arg, "measurement order (comma list or 'all')");
    c_detect->add_option("--out", out_path);

    CLI::App* c_table = app.add_subcommand("table2", "detection summary for labeled states");
    c_table->add_option("--sigma", sigma);
    c_table->add_option("--seed", seed);
    c_table->add_option("--trials", trials)->check(CLI::PositiveNumber);
    c_table->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    c_table->add_option("--convention", convention, "table or trace_norm");
    c_table->add_option("--tol", tol);
    c_table->add_option("--out", out_path);

    CLI::App* c_tomo = app.add_subcommand("tomo", "full reconstruction of a labeled state");
    c_tomo->add_option("--label", label)->required();
    c_tomo->add_option("--sigma", sigma);
    c_tomo->add_option("--seed", seed);
    c_tomo->add_option("--convention", convention);
    c_tomo->add_option("--out-prefix", out_prefix,
                       "write <prefix>_values.csv and <prefix>_summary.json");

    CLI::App* c_fig4 = app.add_subcommand("fig4", "detection fraction vs coefficients kept");
    c_fig4->add_option("--domain", domain, "rectangle or physical");
    c_fig4->add_flag("--mc", monte_carlo, "Monte Carlo instead of the midpoint grid");
    c_fig4->add_option("--resolution", resolution, "grid points per axis")
        ->check(CLI::PositiveNumber);
    c_fig4->add_option("--samples", samples)->check(CLI::PositiveNumber);
    c_fig4->add_option("--seed", seed);
    c_fig4->add_option("--subset", subset_arg, "evaluate one coefficient subset only");
    c_fig4->add_option("--normalization", normalization, "projection or tight");
    c_fig4->add_option("--out-prefix", out_prefix,
                       "write <prefix>_fractions.csv and <prefix>_surface_k<k>.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (c_state->parsed()) {
            emit(out_path, entwit::run_state(label));
        } else if (c_measure->parsed()) {
            const std::vector<std::string> obs = labels_arg == "all"
                                                     ? entwit::observable_set().default_order()
                                                     : split_list(labels_arg);
            emit(out_path, entwit::run_measure(label, obs, sigma, seed));
        } else if (c_detect->parsed()) {
            const std::vector<std::string> order =
                order_arg == "all" ? entwit::observable_set().default_order()
                                   : split_list(order_arg);
            emit(out_path, entwit::run_detect(label, sigma, seed, order, tol));
        } else if (c_table->parsed()) {
            entwit::TableOptions opts;
            opts.sigma = sigma;
            opts.seed = seed;
            opts.trials = trials;
            opts.jobs = jobs;
            opts.convention = parse_convention(convention);
            opts.tol = tol;
            emit(out_path, entwit::run_table2(opts));
        } else if (c_tomo->parsed()) {
            const entwit::TomoOutput out =
                entwit::run_tomo(label, sigma, seed, parse_convention(convention));
            if (out_prefix.empty()) {
                std::cout << out.values_csv << out.summary_json;
            } else {
                write_file(out_prefix + "_values.csv", out.values_csv);
                write_file(out_prefix + "_summary.json", out.summary_json);
            }
        } else if (c_fig4->parsed()) {
            entwit::FractionOptions opts;
            if (domain == "physical")
                opts.domain = entwit::Domain::Physical;
            else if (domain != "rectangle")
                throw std::invalid_argument("unknown domain '" + domain + "'");
            opts.monte_carlo = monte_carlo;
            opts.resolution = resolution;
            opts.samples = samples;
            opts.seed = seed;
            if (!subset_arg.empty()) {
                entwit::WitnessCandidate cand;
                try {
                    cand = entwit::restricted_witness(split_list(subset_arg), normalization);
                } catch (const std::invalid_argument& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return 5;
                }
                cand.fraction = entwit::detection_fraction(cand.op, opts);
                std::string csv = "k,subset,normalization,valid,fraction,worst\n";
                std::string subset;
                for (const auto& s : cand.support) {
                    if (!subset.empty()) subset += '+';
                    subset += s;
                }
                csv += std::to_string(cand.support.size()) + ',' + subset + ',' +
                       cand.normalization + ',' +
                       (cand.class_valid && cand.detecting ? '1' : '0') + ',' +
                       entwit::fmt_fixed(cand.fraction, 4) + ",0\n";
                emit(out_path, csv);
            } else {
                const entwit::Fig4Output out = entwit::run_fig4(opts);
                if (out_prefix.empty()) {
                    std::cout << out.fractions_csv;
                } else {
                    write_file(out_prefix + "_fractions.csv", out.fractions_csv);
                    for (const auto& [k, surf] : out.surfaces)
                        write_file(out_prefix + "_surface_k" + std::to_string(k) + ".csv",
                                   surf);
                }
            }
        }
        return 0;
    } catch (const entwit::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
