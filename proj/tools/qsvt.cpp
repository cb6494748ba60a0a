// Copyright 2026 The qsvt-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qsvt: command-line front end.
//
//   qsvt example  [--alpha A] [--tau T] [--alpha-method M] [--t-bits t] [--m-bits m]
//   qsvt alpha    (--sigma s1 s2 ... | --matrix FILE) --tau T
//   qsvt pipeline --matrix FILE --tau T [--alpha A | --alpha-method M] [--shots N]
//   qsvt sweep    [--n N] [--seed S] [--tau POLICY] [--simulate] [--jobs J] [--out CSV] [--plot SVG]
//
// Every subcommand accepts --config FILE with key=value lines mirroring the
// long flags; flags given on the command line win.

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "qsvt/error.hpp"
#include "qsvt/harness.hpp"

namespace {

constexpr const char *kMatrixHelp =
    "Plain-text matrix: first line 'p q', then p rows of q whitespace-separated numbers";

// Splices the contents of --config files in front of the remaining flags of
// the subcommand, so later (command-line) values take precedence.
std::vector<std::string> expand_config(int argc, char **argv) {
    std::vector<std::string> in(argv + 1, argv + argc);
    std::vector<std::string> out;
    std::vector<std::string> from_file;
    std::size_t insert_at = std::string::npos;
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::string &a = in[i];
        if (a == "--config" && i + 1 < in.size()) {
            const auto extra = qsvt::config_file_arguments(in[++i]);
            from_file.insert(from_file.end(), extra.begin(), extra.end());
            continue;
        }
        if (a.rfind("--config=", 0) == 0) {
            const auto extra = qsvt::config_file_arguments(a.substr(9));
            from_file.insert(from_file.end(), extra.begin(), extra.end());
            continue;
        }
        out.push_back(a);
        if (insert_at == std::string::npos && !a.empty() && a[0] != '-') {
            insert_at = out.size();  // right after the subcommand name
        }
    }
    if (!from_file.empty()) {
        const auto pos = insert_at == std::string::npos ? out.size() : insert_at;
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), from_file.begin(), from_file.end());
    }
    return out;
}

qsvt::AlphaMethod method_from(const std::string &name) {
    return qsvt::parse_alpha_method(name);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Singular value thresholding on a simulated quantum circuit"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", "qsvt 1.0.0");
    const std::vector<std::string> methods = {"intuitive", "taylor2", "taylor4", "numeric"};
    std::string config_placeholder;

    // example
    auto *example = app.add_subcommand("example", "Run the 2x3 reference instance and check its numbers");
    qsvt::ExampleOptions ex;
    std::string ex_method;
    std::uint64_t ex_seed = 0;
    example->add_option("--alpha", ex.alpha, "Rotation scale (switches to reporting mode)");
    example->add_option("--tau", ex.tau, "Threshold (switches to reporting mode)");
    example->add_option("--alpha-method", ex_method, "How to pick alpha")->check(CLI::IsMember(methods));
    example->add_option("--t-bits", ex.t_bits, "Phase register size")->capture_default_str();
    example->add_option("--m-bits", ex.m_bits, "Fixed-point register size")->capture_default_str();
    auto *ex_seed_opt = example->add_option("--seed", ex_seed, "Use random singular vectors drawn from this seed");
    example->add_option("--config", config_placeholder, "key=value file with defaults for these flags");

    // alpha
    auto *alpha = app.add_subcommand("alpha", "Compare the alpha selection rules on a spectrum");
    qsvt::AlphaOptions al;
    std::string al_matrix;
    alpha->add_option("--sigma", al.sigma, "Singular values (space or comma separated)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->delimiter(',');
    auto *al_matrix_opt = alpha->add_option("--matrix", al_matrix, kMatrixHelp);
    alpha->add_option("--tau", al.tau, "Threshold")->required();
    alpha->add_option("--config", config_placeholder, "key=value file with defaults for these flags");

    // pipeline
    auto *pipeline = app.add_subcommand("pipeline", "Simulate the thresholding circuit for one matrix");
    qsvt::PipelineOptions pl;
    std::string pl_method = "intuitive";
    pipeline->add_option("--matrix", pl.matrix_path, kMatrixHelp)->required();
    pipeline->add_option("--tau", pl.tau, "Threshold")->required();
    pipeline->add_option("--alpha", pl.alpha, "Rotation scale (default: from --alpha-method)");
    pipeline->add_option("--alpha-method", pl_method, "How to pick alpha")->check(CLI::IsMember(methods))->capture_default_str();
    pipeline->add_option("--t-bits", pl.t_bits, "Phase register size")->capture_default_str();
    pipeline->add_option("--m-bits", pl.m_bits, "Fixed-point register size")->capture_default_str();
    pipeline->add_option("--shots", pl.shots, "Also estimate P from this many sampled readouts");
    pipeline->add_option("--seed", pl.seed, "Seed for --shots")->capture_default_str();
    pipeline->add_option("--config", config_placeholder, "key=value file with defaults for these flags");

    // sweep
    auto *sweep = app.add_subcommand("sweep", "Random-input study of the alpha rules, written as CSV");
    qsvt::SweepOptions sw;
    auto &sc = sw.config;
    std::string sw_tau = "0.5";
    std::vector<std::string> sw_methods = {"intuitive", "taylor2"};
    std::string sw_plot;
    std::vector<double> sw_sigma;
    sweep->add_option("--n", sc.n_instances, "Number of random instances")->capture_default_str();
    sweep->add_option("--seed", sc.seed, "Sweep seed")->capture_default_str();
    sweep->add_option("--tau", sw_tau, "Threshold policy: fraction of sigma1 (e.g. 0.5) or fixed:VALUE")
        ->capture_default_str();
    sweep->add_option("--alpha-method", sw_methods, "Methods to compare")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->delimiter(',')
        ->check(CLI::IsMember(methods));
    std::vector<CLI::Option *> size_opts = {
        sweep->add_option("--p-min", sc.p_min, "Smallest row count")->capture_default_str(),
        sweep->add_option("--p-max", sc.p_max, "Largest row count")->capture_default_str(),
        sweep->add_option("--q-min", sc.q_min, "Smallest column count")->capture_default_str(),
        sweep->add_option("--q-max", sc.q_max, "Largest column count")->capture_default_str(),
        sweep->add_option("--r-min", sc.r_min, "Smallest rank")->capture_default_str(),
        sweep->add_option("--r-max", sc.r_max, "Largest rank")->capture_default_str(),
    };
    sweep->add_option("--t-bits", sc.t_bits, "Phase register size (--simulate)")->capture_default_str();
    sweep->add_option("--m-bits", sc.m_bits, "Fixed-point register size")->capture_default_str();
    sweep->add_option("--sigma", sw_sigma, "Use these singular values for every instance")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->delimiter(',');
    sweep->add_flag("--simulate", sc.simulate,
                    "Run the state-vector circuit per instance (sizes default to p, q <= 8 and rank <= 4)");
    sweep->add_option("--jobs", sc.jobs, "Worker threads")->capture_default_str();
    sweep->add_flag("--timing", sc.timing, "Fill the wall_time column");
    sweep->add_option("--out", sw.out_path, "CSV output path")->capture_default_str();
    sweep->add_option("--plot", sw_plot, "Also write an SVG plot here");
    sweep->add_option("--config", config_placeholder, "key=value file with defaults for these flags");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const qsvt::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return qsvt::exit_code_for(e.code());
    }
    std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qsvt::kExitInvalidInput;
    }

    try {
        if (*example) {
            if (!ex_method.empty()) {
                ex.alpha_method = method_from(ex_method);
            }
            if (*ex_seed_opt) {
                ex.seed = ex_seed;
            }
            return qsvt::cmd_example(ex, std::cout, std::cerr);
        }
        if (*alpha) {
            if (*al_matrix_opt) {
                al.matrix_path = al_matrix;
            }
            return qsvt::cmd_alpha(al, std::cout, std::cerr);
        }
        if (*pipeline) {
            pl.alpha_method = method_from(pl_method);
            return qsvt::cmd_pipeline(pl, std::cout, std::cerr);
        }
        if (*sweep) {
            if (sc.simulate) {
                // Smaller size defaults for the state-vector path; explicit flags still apply.
                qsvt::SweepConfig small;
                small.use_simulation_sizes();
                std::size_t *fields[] = {&sc.p_min, &sc.p_max, &sc.q_min, &sc.q_max, &sc.r_min, &sc.r_max};
                const std::size_t values[] = {small.p_min, small.p_max, small.q_min, small.q_max, small.r_min, small.r_max};
                for (std::size_t i = 0; i < 6; ++i) {
                    if (size_opts[i]->count() == 0) {
                        *fields[i] = values[i];
                    }
                }
            }
            sc.tau = qsvt::TauPolicy::parse(sw_tau);
            sc.methods.clear();
            for (const auto &m : sw_methods) {
                sc.methods.push_back(method_from(m));
            }
            if (!sw_sigma.empty()) {
                sc.sigma_override = sw_sigma;
            }
            if (!sw_plot.empty()) {
                sw.plot_path = sw_plot;
            }
            return qsvt::cmd_sweep(sw, std::cout, std::cerr);
        }
    } catch (const qsvt::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return qsvt::exit_code_for(e.code());
    }
    return qsvt::kExitInvalidInput;
}
