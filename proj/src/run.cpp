#include "perslap/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "perslap/error.hpp"
#include "perslap/homology.hpp"

namespace perslap {

namespace {

SpectraRecord zero_record(double r, double p, int q) {
    SpectraRecord rec;
    rec.r = r;
    rec.p = p;
    rec.q = q;
    return rec; // betti 0, no lambda2, all-zero stats: no q-simplices yet
}

SpectraRecord record_of(double r, double p, int q, const Spectrum& s) {
    SpectraRecord rec;
    rec.r = r;
    rec.p = p;
    rec.q = q;
    rec.betti = s.nullity();
    rec.lambda2 = s.smallest_nonzero();
    rec.stats = s.stats();
    return rec;
}

std::vector<double> expand(const ScheduleSpec& s) {
    return uniform_schedule(s.r_min, s.r_max, s.dr);
}

} // namespace

std::string run_spectra(const PointCloud& cloud, const SpectraOptions& opt,
                        const ConfigItems& config) {
    if (opt.q < 0) throw input_error("q must be non-negative");
    const DistanceMatrix d = build_distance_matrix(cloud);
    std::vector<SpectraRecord> records;

    if (opt.pair) {
        const auto [t, p] = *opt.pair;
        if (t < 0 || p < 0) throw input_error("t and p must be non-negative");
        Filtration f(d, t + p, opt.q + 1, opt.strict_overlap);
        const SimplicialComplex K_t = f.snapshot(t);
        const SimplicialComplex K_tp = f.snapshot(t + p);
        const Laplacian L = persistent_laplacian(K_t, K_tp, opt.q, opt.mode, opt.rule, &d);
        records.push_back(record_of(t, p, opt.q, Spectrum(eigvalsh(L.m), opt.tau)));
        return spectra_report(config, records, opt.format);
    }

    const std::vector<double> sched = expand(opt.schedule);
    const double p_off = opt.offset.value_or(0.0);
    if (p_off < 0) throw input_error("persistence offset p must be non-negative");
    records.assign(sched.size(), SpectraRecord{});
    parallel_for(static_cast<int>(sched.size()), [&](int i) {
        const double r = sched[static_cast<std::size_t>(i)];
        const SimplicialComplex K_t = rips_complex(d, r, opt.q + 1, opt.strict_overlap);
        if (K_t.count(opt.q) == 0) {
            records[static_cast<std::size_t>(i)] = zero_record(r, p_off, opt.q);
            return;
        }
        Laplacian L;
        if (p_off > 0) {
            const SimplicialComplex K_tp =
                rips_complex(d, r + p_off, opt.q + 1, opt.strict_overlap);
            L = persistent_laplacian(K_t, K_tp, opt.q, opt.mode, opt.rule, &d);
        } else {
            L = laplacian_q(K_t, opt.q, opt.mode, &d);
        }
        records[static_cast<std::size_t>(i)] =
            record_of(r, p_off, opt.q, Spectrum(eigvalsh(L.m), opt.tau));
    });
    return spectra_report(config, records, opt.format);
}

std::string run_curve(const PointCloud& cloud, const CurveOptions& opt,
                      const ConfigItems& config) {
    if (opt.q < 0) throw input_error("q must be non-negative");
    const DistanceMatrix d = build_distance_matrix(cloud);
    std::vector<double> sched;
    if (opt.schedule) {
        sched = expand(*opt.schedule);
    } else {
        if (opt.dr <= 0) throw input_error("schedule spacing must be positive");
        sched = uniform_schedule(0.0, cloud_diameter(d) / 2.0 + opt.dr, opt.dr);
    }
    if (opt.betti)
        return betti_curve_report(config, betti_curve(d, sched, opt.q, opt.strict_overlap),
                                  opt.format);
    const SpectralCurve c =
        spectral_curve(d, sched, opt.q, opt.alpha, opt.mode, opt.strict_overlap);
    return curve_report(config, c, area_under_curve(c), opt.format);
}

std::vector<int> run_rips_counts(const PointCloud& cloud, double r, int q_max,
                                 bool strict_overlap) {
    if (q_max < 0) throw input_error("qmax must be non-negative");
    if (r < 0) throw input_error("radius must be non-negative");
    const DistanceMatrix d = build_distance_matrix(cloud);
    const SimplicialComplex K = rips_complex(d, r, q_max, strict_overlap);
    std::vector<int> counts(static_cast<std::size_t>(q_max) + 1, 0);
    for (int q = 0; q <= q_max; ++q) counts[static_cast<std::size_t>(q)] = K.count(q);
    return counts;
}

std::string run_rips(const PointCloud& cloud, double r, int q_max, bool strict_overlap,
                     ReportFormat format, const ConfigItems& config) {
    return rips_report(config, run_rips_counts(cloud, r, q_max, strict_overlap), format);
}

FullereneResult run_fullerene(const std::string& dir, const std::string& energies_csv_path,
                              const FullereneOptions& opt, const ConfigItems& config) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw input_error("not a directory: " + dir);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".xyz") files.push_back(entry.path());
    }
    if (files.empty()) throw input_error("no .xyz structures in " + dir);
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    std::map<std::string, double> energy_by_name;
    for (const auto& [name, energy] : parse_energies_csv(read_text_file(energies_csv_path))) {
        if (!energy_by_name.emplace(name, energy).second)
            throw input_error("duplicate energy row for '" + name + "'");
    }

    std::vector<Structure> structures;
    std::vector<double> energies;
    for (const auto& file : files) {
        const std::string name = file.stem().string();
        const auto it = energy_by_name.find(name);
        if (it == energy_by_name.end())
            throw input_error("no energy row for structure '" + name + "'");
        structures.push_back({name, parse_xyz(read_text_file(file.string()))});
        energies.push_back(it->second);
    }

    std::vector<double> sched;
    if (opt.schedule) sched = expand(*opt.schedule);
    const StabilityModel model = fullerene_pipeline(structures, energies, opt.alpha, opt.dr,
                                                    opt.schedule ? &sched : nullptr);
    return {fullerene_report(config, model, opt.format), model.pearson_r};
}

BFactorResult run_bfactor(const PointCloud& cloud, const BFactorOptions& opt,
                          const ConfigItems& config) {
    std::vector<double> b_exp;
    b_exp.reserve(cloud.points.size());
    for (const auto& p : cloud.points) {
        if (!p.bfactor)
            throw input_error(
                "input carries no experimental B-factors (parse a PDB with B-factor columns)");
        b_exp.push_back(*p.bfactor);
    }
    const BFactorFeatures features = bfactor_features(cloud, expand(opt.schedule));
    const BFactorModel model = bfactor_fit(features, b_exp);
    return {bfactor_report(config, model, b_exp, opt.format), model.pearson_r};
}

namespace {

// Schedule for a single cloud: the radii where the complex can change (half
// the pairwise distances), thinned to at most eight probes.
std::vector<double> derived_schedule(const DistanceMatrix& d) {
    std::vector<double> radii{0.0};
    for (int i = 0; i < d.rows(); ++i)
        for (int j = i + 1; j < d.cols(); ++j) radii.push_back(d(i, j) / 2.0);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    const std::size_t m = radii.size();
    const std::size_t keep = 8;
    if (m <= keep) return radii;
    std::vector<double> out;
    for (std::size_t k = 0; k < keep; ++k)
        out.push_back(radii[k * (m - 1) / (keep - 1)]);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void validate_one_cloud(const DistanceMatrix& d, const ValidateOptions& opt,
                        const std::vector<double>& sched, int cloud_index,
                        std::vector<ValidationRecord>& records,
                        std::vector<std::string>& warnings) {
    Filtration f(d, sched.back(), opt.q_max + 1);
    for (std::size_t i = 0; i < sched.size(); ++i) {
        const SimplicialComplex K_t = f.snapshot(sched[i]);
        for (std::size_t j = i; j < sched.size(); ++j) {
            const SimplicialComplex K_tp = f.snapshot(sched[j]);
            for (int q = 0; q <= opt.q_max; ++q) {
                ValidationRecord rec;
                rec.t = sched[i];
                rec.p = sched[j] - sched[i];
                rec.q = q;
                rec.oracle_betti = persistent_betti_oracle(K_t, K_tp, q);
                if (K_t.count(q) == 0) {
                    rec.laplacian_nullity = 0; // no q-chains: nullity of the empty map
                } else {
                    const Laplacian L =
                        persistent_laplacian(K_t, K_tp, q, WeightMode{}, opt.rule, &d);
                    rec.laplacian_nullity = spectrum_of(L).nullity();
                }
                records.push_back(rec);
            }
        }
    }
    const auto torsion = torsion_dimensions(f.snapshot(sched.back()), opt.q_max);
    if (!torsion.empty()) {
        std::ostringstream msg;
        msg << "cloud " << cloud_index
            << ": rational and mod-2 Betti numbers disagree in dimension(s)";
        for (int q : torsion) msg << " " << q;
        msg << " (2-torsion present; the oracle reports the rational count)";
        warnings.push_back(msg.str());
    }
}

} // namespace

ValidateResult run_validate(const PointCloud* cloud, const ValidateOptions& opt,
                            const ConfigItems& config) {
    if (opt.q_max < 0) throw input_error("qmax must be non-negative");
    ValidateResult result;
    std::vector<ValidationRecord> records;

    if (opt.random_clouds > 0) {
        if (opt.random_points < 2) throw input_error("random clouds need at least 2 points");
        if (opt.random_points > 64) throw input_error("random clouds capped at 64 points");
        if (opt.random_dim < 1) throw input_error("random cloud dimension must be positive");
        std::mt19937 rng(opt.seed);
        std::uniform_real_distribution<double> coord(0.0, 1.0);
        for (int c = 0; c < opt.random_clouds; ++c) {
            PointCloud pc;
            for (int i = 0; i < opt.random_points; ++i) {
                Point p;
                p.coords.resize(opt.random_dim);
                for (int k = 0; k < opt.random_dim; ++k) p.coords[k] = coord(rng);
                pc.points.push_back(std::move(p));
            }
            const DistanceMatrix d = build_distance_matrix(pc);
            const std::vector<double> sched =
                opt.schedule ? expand(*opt.schedule) : derived_schedule(d);
            validate_one_cloud(d, opt, sched, c, records, result.warnings);
        }
    } else {
        if (!cloud) throw input_error("validate needs an input cloud or --random");
        const DistanceMatrix d = build_distance_matrix(*cloud);
        const std::vector<double> sched =
            opt.schedule ? expand(*opt.schedule) : derived_schedule(d);
        validate_one_cloud(d, opt, sched, 0, records, result.warnings);
    }

    result.mismatches = count_mismatches(records);
    result.report = validation_report(config, records, opt.format);
    return result;
}

} // namespace perslap
