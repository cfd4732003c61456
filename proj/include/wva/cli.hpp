#pragma once

#include <ostream>

/// Command-line front end.
///
///     wva weak-value --input fock|coherent --delta D [--alpha A] [--mode first-order|exact]
///     wva shift      --method quantum|exact|approx|quadrature|vacuum|two-arm --delta D [--e0 --sigma --sigma2 --bs]
///     wva mc         --delta --e0 --sigma [--sigma2 --trials --seed --estimator --workers --eta --bs]
///     wva figures    --which fig2|fig3|fig4a|fig4b [--out PATH] [--format csv|json|svg]
///     wva scenario   --config FILE [--out PATH] [--format csv|json]
///
/// Exit codes: 0 success, 2 usage, 3 domain error, 4 numerical or statistics failure.
namespace wva::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumerical = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wva::cli
