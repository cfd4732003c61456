#include "wva/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "wva/errors.hpp"
#include "wva/experiments.hpp"
#include "wva/montecarlo.hpp"
#include "wva/quantum.hpp"
#include "wva/report.hpp"
#include "wva/scenario_config.hpp"
#include "wva/stochastic.hpp"
#include "wva/svg.hpp"

namespace wva::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Ordered key/value report printed as text, csv or json.
class ScalarReport {
public:
    explicit ScalarReport(int precision) : precision_(precision) {}

    void add(const std::string& key, double value) {
        entries_.emplace_back(key, report::format_number(value, precision_));
        json_[key] = std::stod(entries_.back().second);
    }
    void add(const std::string& key, bool value) {
        entries_.emplace_back(key, value ? "true" : "false");
        json_[key] = value;
    }
    void add(const std::string& key, std::uint64_t value) {
        entries_.emplace_back(key, std::to_string(value));
        json_[key] = value;
    }
    void add(const std::string& key, const std::string& value) {
        entries_.emplace_back(key, value);
        json_[key] = value;
    }

    void write(std::ostream& out, const std::string& format) const {
        if (format == "json") {
            out << json_.dump(2) << '\n';
        } else if (format == "csv") {
            for (std::size_t i = 0; i < entries_.size(); ++i) out << (i ? "," : "") << entries_[i].first;
            out << '\n';
            for (std::size_t i = 0; i < entries_.size(); ++i) out << (i ? "," : "") << entries_[i].second;
            out << '\n';
        } else {
            for (const auto& [k, v] : entries_) out << k << ": " << v << '\n';
        }
    }

private:
    int precision_;
    std::vector<std::pair<std::string, std::string>> entries_;
    ordered_json json_ = ordered_json::object();
};

/// Writes to `path`, or to `fallback` when path is "-".
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
    if (path == "-") {
        body(fallback);
        return;
    }
    std::ostringstream buffer;
    body(buffer);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError("cannot write " + path);
    file << buffer.str();
}

const std::vector<std::string> kScalarFormats = {"text", "csv", "json"};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weak-value amplification: quantum and stochastic-optics predictions"};
    app.require_subcommand(1);
    app.fallthrough();
    int precision = report::kDefaultPrecision;
    app.add_option("--precision", precision, "decimal digits in numeric output")
        ->check(CLI::Range(0, 17))
        ->capture_default_str();

    std::function<void()> action;

    // weak-value
    auto* wv = app.add_subcommand("weak-value", "weak value of the arm-1 photon number");
    std::string wv_input = "fock";
    double wv_delta = 0.0;
    double wv_alpha = 1.0;
    std::string wv_mode = "first-order";
    std::string wv_format = "text";
    wv->add_option("--input", wv_input, "input state")->check(CLI::IsMember({"fock", "coherent"}))->capture_default_str();
    wv->add_option("--delta", wv_delta, "beamsplitter imbalance")->required();
    wv->add_option("--alpha", wv_alpha, "coherent amplitude")->capture_default_str();
    wv->add_option("--mode", wv_mode, "first-order or exact (fock oracle comparison)")->capture_default_str();
    wv->add_option("--format", wv_format)->check(CLI::IsMember(kScalarFormats))->capture_default_str();
    wv->callback([&] {
        action = [&] {
            const auto mode = parse_bs_mode(wv_mode);
            const auto params = InterferometerParams::make(wv_delta, mode);
            ScalarReport r(precision);
            r.add("input", wv_input);
            r.add("delta", wv_delta);
            r.add("mode", std::string(to_string(mode)));
            if (wv_input == "fock") {
                r.add("weak_value", quantum::weak_value_fock(wv_delta));
                r.add("arm2_weak_value", quantum::arm2_weak_value_fock(wv_delta));
                r.add("anomalous", quantum::is_anomalous(0.0, wv_delta));
            } else {
                const CoherentAmplitude alpha(wv_alpha);
                r.add("alpha", wv_alpha);
                r.add("weak_value", quantum::weak_value_coherent(alpha, wv_delta));
                r.add("arm2_weak_value", quantum::arm2_weak_value_coherent(alpha, wv_delta));
                r.add("anomalous", quantum::is_anomalous(wv_alpha, wv_delta));
            }
            r.add("shift_all_orders", quantum::quantum_shift_all_orders(params));
            r.add("first_order_valid", quantum::first_order_valid(wv_delta));
            r.write(out, wv_format);
        };
    });

    // shift
    auto* sh = app.add_subcommand("shift", "post-selected intensity shift D_I");
    std::string sh_method = "exact";
    double sh_delta = 0.0;
    double sh_e0 = 10.0;
    double sh_sigma = stochastic::kVacuumSigma;
    double sh_sigma2 = 0.0;
    std::string sh_bs = "first-order";
    std::string sh_format = "text";
    sh->add_option("--method", sh_method)
        ->check(CLI::IsMember({"quantum", "exact", "approx", "quadrature", "vacuum", "two-arm"}))
        ->capture_default_str();
    sh->add_option("--delta", sh_delta)->required();
    sh->add_option("--e0", sh_e0, "input field amplitude")->capture_default_str();
    sh->add_option("--sigma", sh_sigma, "arm-1 fluctuation width")->capture_default_str();
    sh->add_option("--sigma2", sh_sigma2, "arm-2 fluctuation width")->capture_default_str();
    sh->add_option("--bs", sh_bs, "first-order or exact beamsplitter")->capture_default_str();
    sh->add_option("--format", sh_format)->check(CLI::IsMember(kScalarFormats))->capture_default_str();
    sh->callback([&] {
        action = [&] {
            const auto params = InterferometerParams::make(sh_delta, parse_bs_mode(sh_bs));
            const auto prior = stochastic::NoisePrior::centered(sh_e0, sh_sigma, sh_sigma2);
            double value = 0.0;
            if (sh_method == "quantum") {
                value = quantum::quantum_shift(sh_delta);
            } else if (sh_method == "vacuum") {
                value = stochastic::intensity_shift_vacuum(sh_delta);
            } else if (sh_method == "approx") {
                value = stochastic::intensity_shift_approx(params, prior);
            } else if (sh_method == "quadrature") {
                value = stochastic::intensity_shift_quadrature(params, prior);
            } else if (sh_method == "two-arm" || sh_sigma2 > 0.0) {
                value = stochastic::intensity_shift_two_arm(params, prior);
            } else {
                value = stochastic::intensity_shift_exact(params, prior);
            }
            ScalarReport r(precision);
            r.add("method", sh_method);
            r.add("delta", sh_delta);
            r.add("bs_mode", std::string(to_string(params.bs_mode)));
            r.add("shift", value);
            if (sh_method != "quantum" && sh_method != "vacuum") {
                const auto v = stochastic::validity(params, prior);
                r.add("validity_ratio", v.ratio);
                r.add("regime", std::string(stochastic::to_string(v.regime)));
            }
            r.add("first_order_valid", quantum::first_order_valid(sh_delta));
            r.write(out, sh_format);
        };
    });

    // mc
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate of D_I");
    double mc_delta = 0.1;
    double mc_e0 = 10.0;
    double mc_sigma = stochastic::kVacuumSigma;
    double mc_sigma2 = 0.0;
    std::uint64_t mc_trials = 1'000'000;
    std::uint64_t mc_seed = 1;
    std::string mc_estimator = "weighted";
    int mc_workers = 0;
    std::optional<double> mc_eta;
    std::string mc_bs = "first-order";
    std::string mc_format = "text";
    mc_cmd->add_option("--delta", mc_delta)->capture_default_str();
    mc_cmd->add_option("--e0", mc_e0)->capture_default_str();
    mc_cmd->add_option("--sigma", mc_sigma)->capture_default_str();
    mc_cmd->add_option("--sigma2", mc_sigma2)->capture_default_str();
    mc_cmd->add_option("--trials", mc_trials)->check(CLI::PositiveNumber)->capture_default_str();
    mc_cmd->add_option("--seed", mc_seed)->capture_default_str();
    mc_cmd->add_option("--estimator", mc_estimator)
        ->check(CLI::IsMember({"rejection", "weighted"}))
        ->capture_default_str();
    mc_cmd->add_option("--workers", mc_workers, std::string("threads; 0 uses $") + mc::kWorkersEnv)
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    mc_cmd->add_option("--eta", mc_eta, "detector efficiency; default keeps the click rate at or below 25%");
    mc_cmd->add_option("--bs", mc_bs)->capture_default_str();
    mc_cmd->add_option("--format", mc_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    mc_cmd->callback([&] {
        action = [&] {
            auto params = InterferometerParams::make(mc_delta, parse_bs_mode(mc_bs));
            const auto prior = stochastic::NoisePrior::centered(mc_e0, mc_sigma, mc_sigma2);
            params = InterferometerParams::make(mc_delta, params.bs_mode,
                                                mc_eta ? *mc_eta : stochastic::default_eta(params, prior));
            const mc::RunOptions options{mc_trials, mc_seed, mc_workers};
            const auto est = mc::estimate_shift(mc::parse_estimator(mc_estimator), params, prior, options);
            if (mc_format == "json") {
                report::write_estimate_json(out, est, precision);
            } else {
                report::write_estimate_text(out, est, precision);
            }
        };
    });

    // figures
    auto* fig = app.add_subcommand("figures", "theory curves and posterior densities");
    std::string fig_which;
    std::string fig_out = "-";
    std::string fig_format = "csv";
    int fig_workers = 0;
    fig->add_option("--which", fig_which)->required()->check(CLI::IsMember({"fig2", "fig3", "fig4a", "fig4b"}));
    fig->add_option("--out", fig_out, "output file, - for stdout")->capture_default_str();
    fig->add_option("--format", fig_format)->check(CLI::IsMember({"csv", "json", "svg"}))->capture_default_str();
    fig->add_option("--workers", fig_workers)->check(CLI::NonNegativeNumber)->capture_default_str();
    fig->callback([&] {
        action = [&] {
            if (fig_which == "fig3") {
                const auto panels = experiments::fig3_densities(experiments::scenario_fig3());
                emit(fig_out, out, [&](std::ostream& os) {
                    if (fig_format == "svg") {
                        os << svg::render(svg::fig3_plot(panels));
                    } else if (fig_format == "json") {
                        report::write_densities_json(os, panels, precision);
                    } else {
                        report::write_densities_csv(os, panels, precision);
                    }
                });
                return;
            }
            experiments::ScenarioSpec spec;
            std::optional<experiments::Fig4Axis> axis;
            if (fig_which == "fig2") {
                spec = experiments::scenario_fig2();
            } else {
                axis = fig_which == "fig4a" ? experiments::Fig4Axis::VsDelta
                                            : experiments::Fig4Axis::VsDarkportIntensity;
                spec = experiments::scenario_fig4(*axis);
            }
            const auto rows = experiments::run_scenario(spec, fig_workers);
            emit(fig_out, out, [&](std::ostream& os) {
                if (fig_format == "svg") {
                    os << svg::render(axis ? svg::fig4_plot(rows, *axis) : svg::fig2_plot(rows));
                } else if (fig_format == "json") {
                    report::write_rows_json(os, spec, rows, precision);
                } else {
                    report::write_rows_csv(os, rows, precision);
                }
            });
        };
    });

    // scenario
    auto* sc = app.add_subcommand("scenario", "run a scenario file");
    std::string sc_config;
    std::string sc_out = "-";
    std::string sc_format = "csv";
    int sc_workers = 0;
    sc->add_option("--config", sc_config, "scenario file")->required();
    sc->add_option("--out", sc_out, "output file, - for stdout")->capture_default_str();
    sc->add_option("--format", sc_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sc->add_option("--workers", sc_workers)->check(CLI::NonNegativeNumber)->capture_default_str();
    sc->callback([&] {
        action = [&] {
            const auto spec = experiments::load_scenario(sc_config);
            const auto rows = experiments::run_scenario(spec, sc_workers);
            if (spec.runs(experiments::Method::MonteCarlo)) err << "mc seed: " << spec.mc.seed << '\n';
            emit(sc_out, out, [&](std::ostream& os) {
                if (sc_format == "json") {
                    report::write_rows_json(os, spec, rows, precision);
                } else {
                    report::write_rows_csv(os, rows, precision);
                }
            });
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (action) action();
        return kExitOk;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace wva::cli
