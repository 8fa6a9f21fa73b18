#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perslap/io.hpp"
#include "perslap/pipelines.hpp"
#include "perslap/point_cloud.hpp"
#include "perslap/spectral.hpp"

// One function per CLI subcommand: turn a parsed input plus options into a
// finished report string. The C ABI wraps these one-to-one, so the CLI stays
// a thin argument parser.

namespace perslap {

struct ScheduleSpec {
    double r_min = 0;
    double r_max = 0;
    double dr = 0;
};

struct SpectraOptions {
    ScheduleSpec schedule;                         // ignored in pair mode
    int q = 0;
    WeightMode mode{};
    bool strict_overlap = false;
    double tau = kDefaultZeroTau;
    std::optional<std::pair<double, double>> pair; // single (t, p) record
    std::optional<double> offset;                  // (r, r+p) records over the schedule
    PersistenceRule rule = PersistenceRule::Truncated;
    ReportFormat format = ReportFormat::Csv;
};

std::string run_spectra(const PointCloud& cloud, const SpectraOptions& opt,
                        const ConfigItems& config);

struct CurveOptions {
    Stat alpha = Stat::Sec;
    bool betti = false;                   // Betti-number curve instead of a statistic
    int q = 0;
    std::optional<ScheduleSpec> schedule; // default: 0 .. diameter/2 + dr, spacing dr
    double dr = 0.01;
    WeightMode mode{};
    bool strict_overlap = false;
    ReportFormat format = ReportFormat::Csv;
};

std::string run_curve(const PointCloud& cloud, const CurveOptions& opt,
                      const ConfigItems& config);

std::vector<int> run_rips_counts(const PointCloud& cloud, double r, int q_max,
                                 bool strict_overlap);
std::string run_rips(const PointCloud& cloud, double r, int q_max, bool strict_overlap,
                     ReportFormat format, const ConfigItems& config);

struct FullereneOptions {
    Stat alpha = Stat::Max;
    double dr = 0.01;
    std::optional<ScheduleSpec> schedule; // default: per-structure
    ReportFormat format = ReportFormat::Csv;
};

struct FullereneResult {
    std::string report;
    double pearson = 0;
};

// dir: directory of .xyz structures, joined by basename (sans extension)
// against the `name,energy_ev_per_atom` rows of the energies CSV.
FullereneResult run_fullerene(const std::string& dir, const std::string& energies_csv_path,
                              const FullereneOptions& opt, const ConfigItems& config);

struct BFactorOptions {
    ScheduleSpec schedule{2.0, 12.0, 1.0};
    ReportFormat format = ReportFormat::Csv;
};

struct BFactorResult {
    std::string report;
    double pearson = 0;
};

// Needs experimental B-factors on every point (i.e. a PDB-parsed cloud).
BFactorResult run_bfactor(const PointCloud& cloud, const BFactorOptions& opt,
                          const ConfigItems& config);

struct ValidateOptions {
    std::optional<ScheduleSpec> schedule; // default: derived from pairwise distances
    int q_max = 2;
    PersistenceRule rule = PersistenceRule::Kernel;
    ReportFormat format = ReportFormat::Csv;
    int random_clouds = 0; // > 0: validate that many generated clouds instead
    int random_points = 6;
    int random_dim = 2;
    unsigned seed = 0;
};

struct ValidateResult {
    std::string report;
    int mismatches = 0;
    // informational, e.g. 2-torsion making the field choice matter; not part
    // of the report bytes so reports stay deterministic
    std::vector<std::string> warnings;
};

// Cross-checks Laplacian nullity against the exact-rank homology oracle for
// every snapshot pair (t <= t+p) of the schedule and every q <= q_max.
// `cloud` may be null when random_clouds > 0.
ValidateResult run_validate(const PointCloud* cloud, const ValidateOptions& opt,
                            const ConfigItems& config);

} // namespace perslap
