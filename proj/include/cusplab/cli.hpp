#pragma once

#include "cusplab/geometry.hpp"
#include "cusplab/serialization.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace cusplab {

/// Everything a subcommand reads. JSON keys equal the long flag names with
/// '-' replaced by '_'.
struct RunConfig {
    CuspGeometry geom;
    double h = 0.05;
    double grading = 1.0;
    double eps = 1e-2;
    double eps_min = 1e-3;
    double eps_max = 1e-1;
    int per_decade = 30;
    int count = 12;
    bool odd_sector = false;
    std::optional<double> lambda_flat; ///< default 2λ†
    std::optional<double> theta;       ///< phase seed for predict; default the reduced model's
    std::string out = "cusplab_out";
    int jobs = 0;
    unsigned seed = 1;
    // reduced
    int grid_points = 10000;
    // layer
    int modes = 40;
    std::optional<double> strip_length; ///< default 8a
    // scatter
    double lambda_min = 0.3;
    double lambda_max = 1.2;
    int lambda_points = 10;
    std::optional<double> delta; ///< default eps
    std::optional<double> z1;    ///< fit window, default 1.5·delta
    std::optional<double> z2;    ///< default 0.3·d
};

Json config_to_json(const RunConfig& c);
/// Overlays the keys present in `j` on `base`; unknown keys are rejected
/// with InvalidArgument.
RunConfig config_from_json(const Json& j, RunConfig base = {});

/// Entry point of the `cusplab` executable. Exit codes: 0 success, 1 usage
/// error, 2 numerical failure, 3 I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cusplab
