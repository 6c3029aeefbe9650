#pragma once

#include "cusplab/eigensolve.hpp"
#include "cusplab/geometry.hpp"
#include "cusplab/serialization.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cusplab {

struct SweepSettings {
    double eps_min = 1e-3;
    double eps_max = 1e-1;
    int per_decade = 30;
    int count = 12;
    MeshOptions mesh;
    bool odd_sector = false;
    int jobs = 0; ///< 0: hardware concurrency
};

/// Eigenvalues of one ε with their diagnostics; eigenvectors are not kept.
struct SweepPoint {
    double epsilon = 0.0;
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    std::vector<int> parities; ///< +1 even, −1 odd, 0 undetermined or not symmetric
    std::string mesh_id;
    std::string error; ///< nonempty when the solve failed
};

struct SweepResult {
    CuspGeometry geom;
    SweepSettings settings;
    std::vector<SweepPoint> points; ///< strictly decreasing ε

    std::vector<double> epsilons() const;
    std::size_t failures() const;
};

/// eps_max·10^{−i/per_decade} down to eps_min, strictly decreasing.
std::vector<double> sweep_grid(double eps_min, double eps_max, int per_decade);

/// The single-ε solve used by the sweep.
SweepPoint solve_point(const CuspGeometry& geom, double epsilon, int count, const MeshOptions& mesh, bool odd_sector);

/// Solves every grid point (concurrently with `jobs` workers). With a
/// cache directory each point is persisted atomically as it finishes and
/// reused on restart when its settings match. Failed solves are recorded;
/// more than 10% failures raise NumericalError.
SweepResult sweep_epsilon(const CuspGeometry& geom, const SweepSettings& settings,
                          const std::optional<std::filesystem::path>& cache_dir = std::nullopt,
                          const std::function<void(const std::string&)>& log = {});

/// Same bookkeeping around an arbitrary per-ε spectrum, used for the reduced
/// model and synthetic tests.
SweepResult sweep_from_function(const CuspGeometry& geom, const std::vector<double>& epsilons,
                                const std::function<std::vector<double>(double)>& spectrum);

Json sweep_to_json(const SweepResult& sweep);
SweepResult sweep_from_json(const Json& j);

enum class BranchLabel { Gliding, Stable, Unclassified };
std::string to_string(BranchLabel label);

struct BranchPoint {
    double epsilon = 0.0;
    double lambda = 0.0;
    int sweep_index = 0; ///< index into SweepResult::points
    int level = 0;       ///< index into that point's eigenvalues
    double slope = 0.0;  ///< dλ/dε by centered differences in ε
};

struct Branch {
    int id = 0;
    int parity = 0;
    std::vector<BranchPoint> points; ///< decreasing ε
    BranchLabel label = BranchLabel::Unclassified;
    bool split_from_ambiguity = false;
};

struct TrackingOptions {
    double ambiguity = 0.1;  ///< second-best cost within this fraction of the best ⇒ split
    double max_jump = 0.25;  ///< relative to the predicted λ
};

/// Greedy nearest-neighbour matching of consecutive spectra against the
/// slope-extrapolated (in ln ε) previous value; eigenvalues of different
/// parity are never matched. Labels: Stable when λ moves less than 1e-3
/// relative over at least a decade, Gliding when the slope ratio to the
/// predicted descent speed stays in [0.3, 3] for five or more points.
std::vector<Branch> track_branches(const SweepResult& sweep, const TrackingOptions& options = {});

struct CrossingSet {
    double lambda_flat = 0.0;
    std::vector<double> crossings;     ///< decreasing
    std::vector<int> branch_ids;       ///< branch of each crossing
    std::vector<double> log_gaps;      ///< ln ε*_k − ln ε*_{k+1}
    double predicted_gap = 0.0;        ///< π/τ₀(λ♭)
};

/// Sign changes of λ − λ♭ along each branch, refined by a local cubic in
/// (ln ε, λ) when it is monotone on the bracket, linearly otherwise.
/// DomainError for λ♭ ≤ λ†.
CrossingSet detect_crossings(const SweepResult& sweep, const std::vector<Branch>& branches, double lambda_flat,
                             std::optional<int> parity = std::nullopt);

struct GlidingRow {
    int branch_id = 0;
    double epsilon = 0.0;
    double lambda = 0.0;
    double observed = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
};

/// Rows for every point above λ† on branches labelled gliding.
std::vector<GlidingRow> gliding_report(const std::vector<Branch>& branches, const CuspGeometry& geom);

struct TrappedMode {
    double lambda = 0.0;      ///< odd-sector eigenvalue at ε
    double lambda_half = 0.0; ///< at ε/2
    double relative_change = 0.0;
};

/// Odd-sector (Dirichlet on the symmetry plane) eigenvalues at ε and ε/2.
std::vector<TrappedMode> trapped_modes(const CuspGeometry& geom, const MeshOptions& mesh, double epsilon, int count);

struct StableRow {
    double epsilon = 0.0;
    double nearest = 0.0;
    int parity = 0;
    double gap = 0.0;
    double spectral_gap = 0.0; ///< distance from the nearest eigenvalue to its closest neighbour
    std::optional<double> beta_obs; ///< ln(gap_i/gap_{i−1}) / ln(ε_i/ε_{i−1})
    bool flagged = false;           ///< gap > 0.5·spectral_gap
};

std::vector<StableRow> stable_report(const CuspGeometry& geom, double lambda_tr, const std::vector<double>& eps_list,
                                     const MeshOptions& mesh, int count);

/// "epsilon,lambda,branch_id,parity,slope,label"
void write_branch_csv(std::ostream& out, const std::vector<Branch>& branches);
/// "branch_id,epsilon,lambda,observed,predicted,ratio"
void write_gliding_csv(std::ostream& out, const std::vector<GlidingRow>& rows);
/// λ against ln ε with the predicted crossings of λ♭ as vertical lines.
void write_sweep_svg(std::ostream& out, const SweepResult& sweep, const std::vector<Branch>& branches,
                     double lambda_flat, const std::vector<double>& predicted_crossings);

} // namespace cusplab
