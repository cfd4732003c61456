#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "wva/experiments.hpp"
#include "wva/montecarlo.hpp"

/// Serialisation of sweep rows, density tables and Monte Carlo estimates.
///
/// CSV columns (fixed order):
///   index,label,delta,E0,sigma,sigma2,bs_mode,darkport_intensity,D_quantum,D_exact,
///   D_approx,D_quadrature,D_mc,D_mc_stderr,validity_ratio,regime,first_order_valid,
///   amplifying,error
/// Absent values are empty fields. Numbers are fixed-point with `precision` decimals.
namespace wva::report {

inline constexpr int kDefaultPrecision = 9;

std::string format_number(double value, int precision = kDefaultPrecision);

void write_rows_csv(std::ostream& out, const std::vector<experiments::SweepRow>& rows,
                    int precision = kDefaultPrecision);

/// {"scenario": ..., "metadata": {...}, "rows": [{...}, ...]}; row keys match the CSV header.
void write_rows_json(std::ostream& out, const experiments::ScenarioSpec& spec,
                     const std::vector<experiments::SweepRow>& rows, int precision = kDefaultPrecision);

/// Long format, one line per (delta, E1):
///   delta,E1,prior,likelihood,posterior,approx,marker_prior_mean,marker_posterior_mean,marker_likelihood_zero
void write_densities_csv(std::ostream& out, const std::vector<experiments::DensityPanel>& panels,
                         int precision = kDefaultPrecision);

void write_densities_json(std::ostream& out, const std::vector<experiments::DensityPanel>& panels,
                          int precision = kDefaultPrecision);

void write_estimate_text(std::ostream& out, const mc::ShiftEstimate& est, int precision = kDefaultPrecision);
void write_estimate_json(std::ostream& out, const mc::ShiftEstimate& est, int precision = kDefaultPrecision);

}  // namespace wva::report
