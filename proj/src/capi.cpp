#include "perslap.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "perslap/error.hpp"
#include "perslap/homology.hpp"
#include "perslap/io.hpp"
#include "perslap/run.hpp"

struct perslap_cloud {
    perslap::PointCloud cloud;
    std::string origin; // file path or "<memory>", echoed into reports
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename F>
int guarded(F&& fn) noexcept {
    try {
        fn();
        return PERSLAP_OK;
    } catch (const perslap::input_error& e) {
        set_error(e.what());
        return PERSLAP_ERR_INPUT;
    } catch (const perslap::domain_error& e) {
        set_error(e.what());
        return PERSLAP_ERR_DOMAIN;
    } catch (const std::exception& e) {
        set_error(e.what());
        return PERSLAP_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown failure");
        return PERSLAP_ERR_INTERNAL;
    }
}

int fail_input(const char* msg) {
    set_error(msg);
    return PERSLAP_ERR_INPUT;
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string or_default(const char* s, const char* dflt) { return s && *s ? s : dflt; }

perslap::WeightMode parse_weight(const char* weight, int literal) {
    perslap::WeightMode mode;
    const std::string w = or_default(weight, "none");
    if (w == "none")
        mode.kind = perslap::WeightKind::Unweighted;
    else if (w == "vol")
        mode.kind = perslap::WeightKind::Volume;
    else if (w == "inv")
        mode.kind = perslap::WeightKind::InverseVolume;
    else
        throw perslap::input_error("unknown weight '" + w + "' (expected none|vol|inv)");
    mode.convention = literal ? perslap::WeightConvention::Literal
                              : perslap::WeightConvention::Consistent;
    return mode;
}

perslap::PersistenceRule parse_rule(const char* rule, const char* dflt) {
    const std::string r = or_default(rule, dflt);
    if (r == "truncated") return perslap::PersistenceRule::Truncated;
    if (r == "kernel") return perslap::PersistenceRule::Kernel;
    throw perslap::input_error("unknown rule '" + r + "' (expected truncated|kernel)");
}

std::string schedule_string(double r_min, double r_max, double dr) {
    std::ostringstream out;
    out << perslap::format_g6(r_min) << ":" << perslap::format_g6(r_max) << ":"
        << perslap::format_g6(dr);
    return out.str();
}

} // namespace

extern "C" {

const char* perslap_version(void) { return "1.0.0"; }

const char* perslap_last_error(void) { return g_last_error.c_str(); }

void perslap_string_free(char* s) { std::free(s); }
void perslap_doubles_free(double* p) { std::free(p); }

int perslap_cloud_from_xyz_file(const char* path, perslap_cloud** out) {
    if (!path || !out) return fail_input("null argument");
    return guarded([&] {
        auto handle = new perslap_cloud{perslap::parse_xyz(perslap::read_text_file(path)), path};
        *out = handle;
    });
}

int perslap_cloud_from_pdb_ca_file(const char* path, perslap_cloud** out) {
    if (!path || !out) return fail_input("null argument");
    return guarded([&] {
        auto handle =
            new perslap_cloud{perslap::parse_pdb_ca(perslap::read_text_file(path)), path};
        *out = handle;
    });
}

int perslap_cloud_from_coords(const double* coords, int n, int dim, perslap_cloud** out) {
    if (!coords || !out) return fail_input("null argument");
    if (n < 1 || dim < 1) return fail_input("need at least one point and one dimension");
    return guarded([&] {
        perslap::PointCloud cloud;
        cloud.points.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            auto& p = cloud.points[static_cast<std::size_t>(i)];
            p.coords.resize(dim);
            for (int k = 0; k < dim; ++k) p.coords[k] = coords[i * dim + k];
        }
        *out = new perslap_cloud{std::move(cloud), "<memory>"};
    });
}

void perslap_cloud_free(perslap_cloud* cloud) { delete cloud; }

int perslap_cloud_size(const perslap_cloud* cloud) { return cloud ? cloud->cloud.size() : -1; }

int perslap_cloud_dim(const perslap_cloud* cloud) { return cloud ? cloud->cloud.dim() : -1; }

int perslap_cloud_diameter(const perslap_cloud* cloud, double* out) {
    if (!cloud || !out) return fail_input("null argument");
    return guarded([&] {
        *out = perslap::cloud_diameter(perslap::build_distance_matrix(cloud->cloud));
    });
}

int perslap_cloud_write_xyz(const perslap_cloud* cloud, const char* comment, char** out) {
    if (!cloud || !out) return fail_input("null argument");
    return guarded([&] {
        *out = copy_string(perslap::write_xyz(cloud->cloud, comment ? comment : ""));
    });
}

int perslap_rips_counts(const perslap_cloud* cloud, double r, int q_max, int strict_overlap,
                        int* counts) {
    if (!cloud || !counts) return fail_input("null argument");
    return guarded([&] {
        const auto c = perslap::run_rips_counts(cloud->cloud, r, q_max, strict_overlap != 0);
        for (std::size_t q = 0; q < c.size(); ++q) counts[q] = c[q];
    });
}

int perslap_persistent_spectrum(const perslap_cloud* cloud, double t, double p, int q,
                                const char* weight, int literal_weights, const char* rule,
                                int strict_overlap, double tau, double** eigs_out, int* n_out,
                                int* betti_out, double* lambda2_out, int* has_lambda2_out) {
    if (!cloud) return fail_input("null cloud handle");
    return guarded([&] {
        if (t < 0 || p < 0) throw perslap::input_error("t and p must be non-negative");
        if (q < 0) throw perslap::input_error("q must be non-negative");
        const perslap::WeightMode mode = parse_weight(weight, literal_weights);
        const perslap::PersistenceRule prule = parse_rule(rule, "truncated");
        const double eff_tau = tau > 0 ? tau : perslap::kDefaultZeroTau;

        const perslap::DistanceMatrix d = perslap::build_distance_matrix(cloud->cloud);
        perslap::Filtration f(d, t + p, q + 1, strict_overlap != 0);
        const perslap::SimplicialComplex K_t = f.snapshot(t);
        const perslap::SimplicialComplex K_tp = f.snapshot(t + p);
        const perslap::Laplacian L =
            perslap::persistent_laplacian(K_t, K_tp, q, mode, prule, &d);
        const perslap::Spectrum s(perslap::eigvalsh(L.m), eff_tau);

        if (eigs_out && n_out) {
            const auto& e = s.eigenvalues();
            double* buf = static_cast<double*>(
                std::malloc(sizeof(double) * static_cast<std::size_t>(e.size())));
            if (!buf) throw std::bad_alloc();
            for (int i = 0; i < e.size(); ++i) buf[i] = e[i];
            *eigs_out = buf;
            *n_out = static_cast<int>(e.size());
        } else if (n_out) {
            *n_out = s.size();
        }
        if (betti_out) *betti_out = s.nullity();
        const auto l2 = s.smallest_nonzero();
        if (has_lambda2_out) *has_lambda2_out = l2 ? 1 : 0;
        if (lambda2_out) *lambda2_out = l2.value_or(0.0);
    });
}

int perslap_betti_oracle(const perslap_cloud* cloud, double t, double p, int q,
                         const char* field, int strict_overlap, int* betti_out) {
    if (!cloud || !betti_out) return fail_input("null argument");
    return guarded([&] {
        if (t < 0 || p < 0) throw perslap::input_error("t and p must be non-negative");
        if (q < 0) throw perslap::input_error("q must be non-negative");
        const std::string fname = or_default(field, "rational");
        perslap::Field f_enum;
        if (fname == "rational")
            f_enum = perslap::Field::Rational;
        else if (fname == "z2")
            f_enum = perslap::Field::Z2;
        else
            throw perslap::input_error("unknown field '" + fname + "' (expected rational|z2)");
        const perslap::DistanceMatrix d = perslap::build_distance_matrix(cloud->cloud);
        perslap::Filtration f(d, t + p, q + 1, strict_overlap != 0);
        *betti_out = perslap::persistent_betti_oracle(f.snapshot(t), f.snapshot(t + p), q, f_enum);
    });
}

int perslap_report_rips(const perslap_cloud* cloud, double r, int q_max, int strict_overlap,
                        const char* format, char** report_out) {
    if (!cloud || !report_out) return fail_input("null argument");
    return guarded([&] {
        const perslap::ReportFormat fmt = perslap::parse_format(or_default(format, "csv"));
        const perslap::ConfigItems config{{"command", "rips"},
                                          {"input", cloud->origin},
                                          {"r", perslap::format_g6(r)},
                                          {"qmax", std::to_string(q_max)},
                                          {"strict_overlap", strict_overlap ? "1" : "0"}};
        *report_out = copy_string(
            perslap::run_rips(cloud->cloud, r, q_max, strict_overlap != 0, fmt, config));
    });
}

void perslap_spectra_config_init(perslap_spectra_config* cfg) {
    if (!cfg) return;
    *cfg = perslap_spectra_config{};
    cfg->r_min = 0;
    cfg->r_max = 0;
    cfg->dr = 0.01;
    cfg->q = 0;
    cfg->weight = "none";
    cfg->rule = "truncated";
    cfg->format = "csv";
    cfg->tau = 0; // default tolerance
}

int perslap_report_spectra(const perslap_cloud* cloud, const perslap_spectra_config* cfg,
                           char** report_out) {
    if (!cloud || !cfg || !report_out) return fail_input("null argument");
    return guarded([&] {
        perslap::SpectraOptions opt;
        opt.schedule = {cfg->r_min, cfg->r_max, cfg->dr};
        opt.q = cfg->q;
        opt.mode = parse_weight(cfg->weight, cfg->literal_weights);
        opt.strict_overlap = cfg->strict_overlap != 0;
        if (cfg->tau > 0) opt.tau = cfg->tau;
        if (cfg->has_pair) opt.pair = std::make_pair(cfg->t, cfg->p);
        if (cfg->has_offset) opt.offset = cfg->offset_p;
        opt.rule = parse_rule(cfg->rule, "truncated");
        opt.format = perslap::parse_format(or_default(cfg->format, "csv"));

        perslap::ConfigItems config{{"command", "spectra"},
                                    {"input", cloud->origin},
                                    {"q", std::to_string(cfg->q)},
                                    {"weight", or_default(cfg->weight, "none")},
                                    {"convention", cfg->literal_weights ? "literal" : "consistent"},
                                    {"strict_overlap", cfg->strict_overlap ? "1" : "0"},
                                    {"rule", or_default(cfg->rule, "truncated")},
                                    {"tau", perslap::format_g6(opt.tau)}};
        if (cfg->has_pair) {
            config.emplace_back("t", perslap::format_g6(cfg->t));
            config.emplace_back("p", perslap::format_g6(cfg->p));
        } else {
            config.emplace_back("schedule", schedule_string(cfg->r_min, cfg->r_max, cfg->dr));
            if (cfg->has_offset) config.emplace_back("p", perslap::format_g6(cfg->offset_p));
        }
        *report_out = copy_string(perslap::run_spectra(cloud->cloud, opt, config));
    });
}

void perslap_curve_config_init(perslap_curve_config* cfg) {
    if (!cfg) return;
    *cfg = perslap_curve_config{};
    cfg->alpha = "sec";
    cfg->q = 0;
    cfg->dr = 0.01;
    cfg->weight = "none";
    cfg->format = "csv";
}

int perslap_report_curve(const perslap_cloud* cloud, const perslap_curve_config* cfg,
                         char** report_out) {
    if (!cloud || !cfg || !report_out) return fail_input("null argument");
    return guarded([&] {
        perslap::CurveOptions opt;
        const std::string alpha = or_default(cfg->alpha, "sec");
        if (alpha == "betti")
            opt.betti = true;
        else
            opt.alpha = perslap::parse_stat(alpha);
        opt.q = cfg->q;
        opt.dr = cfg->dr;
        if (cfg->has_schedule) opt.schedule = perslap::ScheduleSpec{cfg->r_min, cfg->r_max, cfg->dr};
        opt.mode = parse_weight(cfg->weight, cfg->literal_weights);
        opt.strict_overlap = cfg->strict_overlap != 0;
        opt.format = perslap::parse_format(or_default(cfg->format, "csv"));

        perslap::ConfigItems config{{"command", "curve"},
                                    {"input", cloud->origin},
                                    {"alpha", alpha},
                                    {"q", std::to_string(cfg->q)},
                                    {"weight", or_default(cfg->weight, "none")},
                                    {"strict_overlap", cfg->strict_overlap ? "1" : "0"}};
        if (cfg->has_schedule)
            config.emplace_back("schedule", schedule_string(cfg->r_min, cfg->r_max, cfg->dr));
        else
            config.emplace_back("dr", perslap::format_g6(cfg->dr));
        *report_out = copy_string(perslap::run_curve(cloud->cloud, opt, config));
    });
}

void perslap_fullerene_config_init(perslap_fullerene_config* cfg) {
    if (!cfg) return;
    *cfg = perslap_fullerene_config{};
    cfg->alpha = "max";
    cfg->dr = 0.01;
    cfg->format = "csv";
}

int perslap_report_fullerene(const char* dir, const char* energies_csv,
                             const perslap_fullerene_config* cfg, char** report_out,
                             double* pearson_out) {
    if (!dir || !energies_csv || !cfg || !report_out) return fail_input("null argument");
    return guarded([&] {
        perslap::FullereneOptions opt;
        opt.alpha = perslap::parse_stat(or_default(cfg->alpha, "max"));
        opt.dr = cfg->dr;
        if (cfg->has_schedule)
            opt.schedule = perslap::ScheduleSpec{cfg->r_min, cfg->r_max, cfg->dr};
        opt.format = perslap::parse_format(or_default(cfg->format, "csv"));

        perslap::ConfigItems config{{"command", "fullerene"},
                                    {"input", dir},
                                    {"energies", energies_csv},
                                    {"alpha", or_default(cfg->alpha, "max")},
                                    {"dr", perslap::format_g6(cfg->dr)}};
        const perslap::FullereneResult res =
            perslap::run_fullerene(dir, energies_csv, opt, config);
        *report_out = copy_string(res.report);
        if (pearson_out) *pearson_out = res.pearson;
    });
}

void perslap_bfactor_config_init(perslap_bfactor_config* cfg) {
    if (!cfg) return;
    *cfg = perslap_bfactor_config{};
    cfg->r_min = 2.0;
    cfg->r_max = 12.0;
    cfg->dr = 1.0;
    cfg->format = "csv";
}

int perslap_report_bfactor(const perslap_cloud* cloud, const perslap_bfactor_config* cfg,
                           char** report_out, double* pearson_out) {
    if (!cloud || !cfg || !report_out) return fail_input("null argument");
    return guarded([&] {
        perslap::BFactorOptions opt;
        opt.schedule = {cfg->r_min, cfg->r_max, cfg->dr};
        opt.format = perslap::parse_format(or_default(cfg->format, "csv"));

        perslap::ConfigItems config{
            {"command", "bfactor"},
            {"input", cloud->origin},
            {"schedule", schedule_string(cfg->r_min, cfg->r_max, cfg->dr)}};
        const perslap::BFactorResult res = perslap::run_bfactor(cloud->cloud, opt, config);
        *report_out = copy_string(res.report);
        if (pearson_out) *pearson_out = res.pearson;
    });
}

void perslap_validate_config_init(perslap_validate_config* cfg) {
    if (!cfg) return;
    *cfg = perslap_validate_config{};
    cfg->q_max = 2;
    cfg->rule = "kernel";
    cfg->format = "csv";
    cfg->random_points = 6;
    cfg->random_dim = 2;
}

int perslap_report_validate(const perslap_cloud* cloud, const perslap_validate_config* cfg,
                            char** report_out, int* mismatches_out, char** warnings_out) {
    if (!cfg || !report_out) return fail_input("null argument");
    if (!cloud && cfg->random_clouds <= 0)
        return fail_input("validate needs an input cloud or random_clouds > 0");
    return guarded([&] {
        perslap::ValidateOptions opt;
        if (cfg->has_schedule)
            opt.schedule = perslap::ScheduleSpec{cfg->r_min, cfg->r_max, cfg->dr};
        opt.q_max = cfg->q_max;
        opt.rule = parse_rule(cfg->rule, "kernel");
        opt.format = perslap::parse_format(or_default(cfg->format, "csv"));
        opt.random_clouds = cfg->random_clouds;
        opt.random_points = cfg->random_points;
        opt.random_dim = cfg->random_dim;
        opt.seed = cfg->seed;

        perslap::ConfigItems config{{"command", "validate"},
                                    {"input", cloud ? cloud->origin.c_str() : "<random>"},
                                    {"qmax", std::to_string(cfg->q_max)},
                                    {"rule", or_default(cfg->rule, "kernel")}};
        if (cfg->has_schedule)
            config.emplace_back("schedule", schedule_string(cfg->r_min, cfg->r_max, cfg->dr));
        if (cfg->random_clouds > 0) {
            config.emplace_back("random_clouds", std::to_string(cfg->random_clouds));
            config.emplace_back("random_points", std::to_string(cfg->random_points));
            config.emplace_back("random_dim", std::to_string(cfg->random_dim));
            config.emplace_back("seed", std::to_string(cfg->seed));
        }

        const perslap::ValidateResult res =
            perslap::run_validate(cloud ? &cloud->cloud : nullptr, opt, config);
        *report_out = copy_string(res.report);
        if (mismatches_out) *mismatches_out = res.mismatches;
        if (warnings_out) {
            if (res.warnings.empty()) {
                *warnings_out = nullptr;
            } else {
                std::string joined;
                for (std::size_t i = 0; i < res.warnings.size(); ++i) {
                    if (i) joined += "\n";
                    joined += res.warnings[i];
                }
                *warnings_out = copy_string(joined);
            }
        }
    });
}

} // extern "C"
