#include "wva/scenario_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "wva/errors.hpp"

namespace wva::experiments {

namespace {

double to_number(const std::string& token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + token + "'");
    }
    if (used != token.size()) throw DomainError("not a number: '" + token + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(","));
    for (auto& p : parts) boost::trim(p);
    return parts;
}

std::vector<double> range(const std::string& fn, const std::string& args) {
    const auto parts = split_list(args);
    if (parts.size() != 3) throw DomainError(fn + " takes (start, stop, count)");
    const double a = to_number(parts[0]);
    const double b = to_number(parts[1]);
    const double n_real = to_number(parts[2]);
    if (n_real < 1 || n_real != std::floor(n_real)) throw DomainError(fn + " count must be a positive integer");
    const auto n = static_cast<std::size_t>(n_real);
    const bool log = fn == "logspace";
    if (log && (a <= 0.0 || b <= 0.0)) throw DomainError("logspace bounds must be positive");
    const double lo = log ? std::log10(a) : a;
    const double hi = log ? std::log10(b) : b;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = log ? std::pow(10.0, x) : x;
    }
    return out;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
    std::string s(text);
    boost::trim(s);
    for (const char* fn : {"linspace", "logspace"}) {
        const std::string prefix = std::string(fn) + "(";
        if (boost::starts_with(s, prefix) && boost::ends_with(s, ")")) {
            return range(fn, s.substr(prefix.size(), s.size() - prefix.size() - 1));
        }
    }
    std::vector<double> out;
    for (const auto& part : split_list(s)) {
        if (!part.empty()) out.push_back(to_number(part));
    }
    if (out.empty()) throw DomainError("empty number list");
    return out;
}

ScenarioSpec parse_scenario(std::istream& in) {
    namespace pt = boost::property_tree;
    std::ostringstream cleaned;
    for (std::string line; std::getline(in, line);) {
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        cleaned << line << '\n';
    }
    std::istringstream source(cleaned.str());
    pt::ptree tree;
    try {
        pt::read_ini(source, tree);
    } catch (const pt::ini_parser_error& e) {
        throw DomainError(std::string("scenario file: ") + e.what());
    }

    auto get = [&](const char* key, const std::string& fallback) {
        return tree.get<std::string>(key, fallback);
    };

    ScenarioSpec spec;
    spec.name = get("name", "scenario");

    const auto deltas = parse_number_list(get("delta", ""));
    const auto sigmas = parse_number_list(get("sigma", "0.5"));
    const auto sigma2s = parse_number_list(get("sigma2", "0"));
    const BeamSplitterMode mode = parse_bs_mode(get("bs_mode", "first-order"));

    const int amplitude_keys = (tree.count("e0") ? 1 : 0) + (tree.count("alpha") ? 1 : 0) +
                               (tree.count("darkport_intensity") ? 1 : 0);
    if (amplitude_keys != 1) {
        throw DomainError("scenario needs exactly one of e0, alpha, darkport_intensity");
    }
    const bool by_intensity = tree.count("darkport_intensity") > 0;
    const auto amplitudes = parse_number_list(
        tree.count("e0") ? get("e0", "") : tree.count("alpha") ? get("alpha", "") : get("darkport_intensity", ""));

    for (double delta : deltas) {
        for (double amp : amplitudes) {
            const double e0 = by_intensity ? std::sqrt(amp) / delta : amp;
            for (double sigma : sigmas) {
                for (double sigma2 : sigma2s) {
                    ScenarioPoint p;
                    p.delta = delta;
                    p.E0 = e0;
                    p.sigma = sigma;
                    p.sigma2 = sigma2;
                    p.bs_mode = mode;
                    p.id = spec.grid.size();
                    spec.grid.push_back(p);
                }
            }
        }
    }

    for (const auto& m : split_list(get("methods", "quantum, exact, quadrature"))) {
        if (!m.empty()) spec.methods.push_back(parse_method(m));
    }
    const double trials = to_number(boost::trim_copy(get("mc_trials", "200000")));
    if (trials < 1 || trials != std::floor(trials)) throw DomainError("mc_trials must be a positive integer");
    spec.mc.n_trials = static_cast<std::uint64_t>(trials);
    const std::string seed_text = boost::trim_copy(get("mc_seed", "20180101"));
    try {
        std::size_t used = 0;
        spec.mc.seed = std::stoull(seed_text, &used);
        if (seed_text.empty() || used != seed_text.size() || seed_text.front() == '-') throw std::invalid_argument(seed_text);
    } catch (const std::exception&) {
        throw DomainError("mc_seed must be a non-negative integer: '" + seed_text + "'");
    }
    spec.mc.estimator = mc::parse_estimator(get("mc_estimator", "weighted"));

    if (const auto meta = tree.get_child_optional("metadata")) {
        for (const auto& [key, node] : *meta) spec.metadata.emplace_back(key, node.data());
    }
    validate(spec);
    return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open scenario file " + path.string());
    return parse_scenario(in);
}

}  // namespace wva::experiments
