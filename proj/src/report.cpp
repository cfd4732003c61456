#include "wva/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

namespace wva::report {

namespace {

using nlohmann::ordered_json;

std::string opt(const std::optional<double>& v, int precision) {
    return v ? format_number(*v, precision) : std::string();
}

// JSON numbers rounded to the requested decimals so output matches the CSV content.
ordered_json rounded(double v, int precision) {
    if (!std::isfinite(v)) return nullptr;
    return std::stod(format_number(v, precision));
}

ordered_json rounded(const std::optional<double>& v, int precision) {
    return v ? rounded(*v, precision) : ordered_json(nullptr);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_number(double value, int precision) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::string s = fmt::format("{:.{}f}", value, precision);
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);  // no "-0.000"
    return s;
}

void write_rows_csv(std::ostream& out, const std::vector<experiments::SweepRow>& rows, int precision) {
    out << "index,label,delta,E0,sigma,sigma2,bs_mode,darkport_intensity,D_quantum,D_exact,D_approx,"
           "D_quadrature,D_mc,D_mc_stderr,validity_ratio,regime,first_order_valid,amplifying,error\n";
    for (const auto& r : rows) {
        out << r.index << ',' << csv_escape(r.label) << ',' << format_number(r.delta, precision) << ','
            << format_number(r.E0, precision) << ',' << format_number(r.sigma, precision) << ','
            << format_number(r.sigma2, precision) << ',' << to_string(r.bs_mode) << ','
            << format_number(r.darkport_intensity, precision) << ',' << opt(r.D_quantum, precision) << ','
            << opt(r.D_exact, precision) << ',' << opt(r.D_approx, precision) << ','
            << opt(r.D_quadrature, precision) << ',' << opt(r.D_mc, precision) << ','
            << opt(r.D_mc_stderr, precision) << ',' << format_number(r.validity_ratio, precision) << ','
            << stochastic::to_string(r.regime) << ',' << (r.first_order_valid ? "true" : "false") << ','
            << (r.amplifying ? "true" : "false") << ',' << csv_escape(r.error) << '\n';
    }
}

void write_rows_json(std::ostream& out, const experiments::ScenarioSpec& spec,
                     const std::vector<experiments::SweepRow>& rows, int precision) {
    ordered_json doc;
    doc["scenario"] = spec.name;
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : spec.metadata) meta[k] = v;
    doc["metadata"] = meta;
    if (spec.runs(experiments::Method::MonteCarlo)) {
        doc["mc"] = {{"estimator", std::string(mc::to_string(spec.mc.estimator))},
                     {"n_trials", spec.mc.n_trials},
                     {"seed", spec.mc.seed}};
    }
    ordered_json list = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["index"] = r.index;
        j["label"] = r.label;
        j["delta"] = rounded(r.delta, precision);
        j["E0"] = rounded(r.E0, precision);
        j["sigma"] = rounded(r.sigma, precision);
        j["sigma2"] = rounded(r.sigma2, precision);
        j["bs_mode"] = std::string(to_string(r.bs_mode));
        j["darkport_intensity"] = rounded(r.darkport_intensity, precision);
        j["D_quantum"] = rounded(r.D_quantum, precision);
        j["D_exact"] = rounded(r.D_exact, precision);
        j["D_approx"] = rounded(r.D_approx, precision);
        j["D_quadrature"] = rounded(r.D_quadrature, precision);
        j["D_mc"] = rounded(r.D_mc, precision);
        j["D_mc_stderr"] = rounded(r.D_mc_stderr, precision);
        j["validity_ratio"] = rounded(r.validity_ratio, precision);
        j["regime"] = std::string(stochastic::to_string(r.regime));
        j["first_order_valid"] = r.first_order_valid;
        j["amplifying"] = r.amplifying;
        j["error"] = r.error;
        list.push_back(std::move(j));
    }
    doc["rows"] = std::move(list);
    out << doc.dump(2) << '\n';
}

void write_densities_csv(std::ostream& out, const std::vector<experiments::DensityPanel>& panels, int precision) {
    out << "delta,E1,prior,likelihood,posterior,approx,marker_prior_mean,marker_posterior_mean,"
           "marker_likelihood_zero\n";
    for (const auto& p : panels) {
        const std::string markers = format_number(p.prior_mean, precision) + ',' +
                                    format_number(p.posterior_mean, precision) + ',' +
                                    format_number(p.likelihood_zero, precision);
        for (const auto& s : p.samples) {
            out << format_number(p.delta, precision) << ',' << format_number(s.E1, precision) << ','
                << format_number(s.prior, precision) << ',' << format_number(s.likelihood, precision) << ','
                << format_number(s.posterior, precision) << ',' << format_number(s.approx, precision) << ','
                << markers << '\n';
        }
    }
}

void write_densities_json(std::ostream& out, const std::vector<experiments::DensityPanel>& panels, int precision) {
    ordered_json list = ordered_json::array();
    for (const auto& p : panels) {
        ordered_json j;
        j["delta"] = rounded(p.delta, precision);
        j["marker_prior_mean"] = rounded(p.prior_mean, precision);
        j["marker_posterior_mean"] = rounded(p.posterior_mean, precision);
        j["marker_likelihood_zero"] = rounded(p.likelihood_zero, precision);
        j["likelihood_zero_first_order"] = rounded(p.likelihood_zero_first_order, precision);
        j["kolmogorov_distance"] = rounded(p.kolmogorov_distance, precision);
        j["validity_ratio"] = rounded(p.validity.ratio, precision);
        j["regime"] = std::string(stochastic::to_string(p.validity.regime));
        ordered_json samples = ordered_json::array();
        for (const auto& s : p.samples) {
            samples.push_back({rounded(s.E1, precision), rounded(s.prior, precision), rounded(s.likelihood, precision),
                               rounded(s.posterior, precision), rounded(s.approx, precision)});
        }
        j["columns"] = {"E1", "prior", "likelihood", "posterior", "approx"};
        j["samples"] = std::move(samples);
        list.push_back(std::move(j));
    }
    out << ordered_json{{"scenario", "fig3"}, {"panels", std::move(list)}}.dump(2) << '\n';
}

void write_estimate_text(std::ostream& out, const mc::ShiftEstimate& est, int precision) {
    out << "estimator: " << mc::to_string(est.method) << '\n'
        << "value: " << format_number(est.value, precision) << '\n'
        << "stderr: " << format_number(est.std_error, precision) << '\n'
        << "n_trials: " << est.n_trials << '\n'
        << "n_accepted: " << est.n_accepted << '\n'
        << "eta: " << format_number(est.eta, precision) << '\n'
        << "seed: " << est.seed << '\n'
        << "degenerate_stderr: " << (est.degenerate_error ? "true" : "false") << '\n';
}

void write_estimate_json(std::ostream& out, const mc::ShiftEstimate& est, int precision) {
    ordered_json j;
    j["estimator"] = std::string(mc::to_string(est.method));
    j["value"] = rounded(est.value, precision);
    j["stderr"] = rounded(est.std_error, precision);
    j["n_trials"] = est.n_trials;
    j["n_accepted"] = est.n_accepted;
    j["eta"] = rounded(est.eta, precision);
    j["seed"] = est.seed;
    j["degenerate_stderr"] = est.degenerate_error;
    j["unconditioned_moment"] = est.method == mc::Estimator::Rejection ? "analytic" : "empirical";
    out << j.dump(2) << '\n';
}

}  // namespace wva::report
