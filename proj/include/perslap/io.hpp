#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perslap/pipelines.hpp"
#include "perslap/point_cloud.hpp"

namespace perslap {

// Standard XYZ (count line, comment line, then `element x y z`), with a
// fallback for bare `x y z` rows when the first line is not an atom count.
// Parse errors carry 1-based line numbers.
PointCloud parse_xyz(const std::string& text);

// Inverse of parse_xyz at full double precision, so parse(write(c)) == c to
// well below 1e-9.
std::string write_xyz(const PointCloud& cloud, const std::string& comment = "");

// Alpha-carbon extraction from fixed-column ATOM records (PDB v3.3 layout):
// atom name columns 13-16, altLoc 17 (blank or 'A' kept), coordinates
// 31-54, B-factor 61-66. Only the first model is read. Throws when the file
// has no matching atoms.
PointCloud parse_pdb_ca(const std::string& text);

// `name,energy_ev_per_atom` rows, optional header line, order preserved.
std::vector<std::pair<std::string, double>> parse_energies_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// All report numbers go through this: 6 significant digits, fixed formatting
// so identical runs emit identical bytes.
std::string format_g6(double x);

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(const std::string& name);

// Echo of the effective run configuration, emitted verbatim into reports.
using ConfigItems = std::vector<std::pair<std::string, std::string>>;

struct SpectraRecord {
    double r = 0;
    double p = 0;
    int q = 0;
    int betti = 0;
    std::optional<double> lambda2; // absent when the spectrum has no nonzero part
    SpectralStats stats;
};

std::string rips_report(const ConfigItems& config, const std::vector<int>& counts,
                        ReportFormat fmt);
std::string spectra_report(const ConfigItems& config,
                           const std::vector<SpectraRecord>& records, ReportFormat fmt);
std::string curve_report(const ConfigItems& config, const SpectralCurve& curve,
                         double area, ReportFormat fmt);
std::string betti_curve_report(const ConfigItems& config, const BettiCurve& curve,
                               ReportFormat fmt);
std::string fullerene_report(const ConfigItems& config, const StabilityModel& model,
                             ReportFormat fmt);
std::string bfactor_report(const ConfigItems& config, const BFactorModel& model,
                           const std::vector<double>& b_exp, ReportFormat fmt);

struct ValidationRecord {
    double t = 0;
    double p = 0;
    int q = 0;
    int laplacian_nullity = 0;
    int oracle_betti = 0;
};

std::string validation_report(const ConfigItems& config,
                              const std::vector<ValidationRecord>& records,
                              ReportFormat fmt);
int count_mismatches(const std::vector<ValidationRecord>& records);

} // namespace perslap
