#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "perslap.h"

namespace {

// status code -> process exit code (input/usage 2, math/domain 1)
int exit_for(int status) {
    if (status == PERSLAP_OK) return 0;
    std::fprintf(stderr, "error: %s\n", perslap_last_error());
    return status == PERSLAP_ERR_INPUT ? 2 : 1;
}

bool ends_with_icase(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        const char a = static_cast<char>(std::tolower(static_cast<unsigned char>(
            s[s.size() - suffix.size() + i])));
        if (a != suffix[i]) return false;
    }
    return true;
}

// .pdb inputs go through the alpha-carbon parser, everything else through XYZ
int load_cloud(const std::string& path, perslap_cloud** out) {
    if (ends_with_icase(path, ".pdb")) return perslap_cloud_from_pdb_ca_file(path.c_str(), out);
    return perslap_cloud_from_xyz_file(path.c_str(), out);
}

bool parse_schedule(const std::string& text, double& r_min, double& r_max, double& dr) {
    char extra;
    return std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r_min, &r_max, &dr, &extra) == 3;
}

int emit(char* report, const std::string& output_path) {
    int code = 0;
    if (output_path.empty()) {
        std::fputs(report, stdout);
    } else {
        FILE* f = std::fopen(output_path.c_str(), "wb");
        if (!f) {
            std::fprintf(stderr, "error: cannot open output file: %s\n", output_path.c_str());
            code = 2;
        } else {
            std::fputs(report, f);
            std::fclose(f);
        }
    }
    perslap_string_free(report);
    return code;
}

struct CommonOpts {
    std::string format = "csv";
    std::string output;
};

void add_common(CLI::App* sub, CommonOpts& common) {
    sub->add_option("--format", common.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("-o,--output", common.output, "write the report to a file instead of stdout");
}

struct CloudGuard {
    perslap_cloud* handle = nullptr;
    ~CloudGuard() { perslap_cloud_free(handle); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent spectral graph toolkit: Vietoris-Rips filtrations, "
                 "persistent Laplacian spectra, and the stability/B-factor pipelines"};
    app.require_subcommand(1);
    app.set_version_flag("--version", perslap_version());

    // ---- rips ----
    std::string rips_input;
    double rips_r = 0;
    int rips_qmax = 3;
    bool rips_strict = false;
    CommonOpts rips_common;
    CLI::App* rips = app.add_subcommand("rips", "simplex counts of the clique complex at radius r");
    rips->add_option("input", rips_input, "XYZ (or .pdb) point cloud")->required();
    rips->add_option("--r", rips_r, "filtration radius (balls of radius r overlap at distance 2r)")
        ->required();
    rips->add_option("--qmax", rips_qmax, "largest simplex dimension to enumerate")
        ->capture_default_str();
    rips->add_flag("--strict", rips_strict, "open overlap rule d < 2r instead of d <= 2r");
    add_common(rips, rips_common);

    // ---- spectra ----
    std::string sp_input, sp_schedule, sp_weight = "none", sp_rule = "truncated";
    int sp_q = 0;
    bool sp_strict = false, sp_literal = false;
    double sp_t = 0, sp_p = 0, sp_tau = 0;
    CommonOpts sp_common;
    CLI::App* spectra = app.add_subcommand(
        "spectra", "per-radius spectra of the (persistent) q-Laplacian");
    spectra->add_option("input", sp_input, "XYZ (or .pdb) point cloud")->required();
    CLI::Option* sp_sched_opt =
        spectra->add_option("--schedule", sp_schedule, "radius grid min:max:step");
    spectra->add_option("--q", sp_q, "chain dimension")->capture_default_str();
    spectra->add_option("--weight", sp_weight, "simplex weights: none, vol, or inv")
        ->check(CLI::IsMember({"none", "vol", "inv"}))
        ->capture_default_str();
    spectra->add_flag("--literal", sp_literal,
                      "apply weights literally instead of the consistent convention");
    spectra->add_flag("--strict", sp_strict, "open overlap rule d < 2r");
    CLI::Option* sp_t_opt = spectra->add_option(
        "--t", sp_t, "earlier radius: report the single pair (t, t+p); requires --p");
    CLI::Option* sp_p_opt = spectra->add_option(
        "--p", sp_p, "persistence offset; with --schedule, reports (r, r+p) per radius");
    spectra->add_option("--rule", sp_rule,
                        "persistent boundary columns: truncated or kernel")
        ->check(CLI::IsMember({"truncated", "kernel"}))
        ->capture_default_str();
    spectra->add_option("--tau", sp_tau, "relative zero tolerance (default 1e-9)");
    add_common(spectra, sp_common);

    // ---- curve ----
    std::string cv_input, cv_alpha = "sec", cv_schedule, cv_weight = "none";
    int cv_q = 0;
    double cv_dr = 0.01;
    bool cv_strict = false, cv_literal = false;
    CommonOpts cv_common;
    CLI::App* curve = app.add_subcommand(
        "curve", "one spectral statistic per radius (plot-ready r,value table)");
    curve->add_option("input", cv_input, "XYZ (or .pdb) point cloud")->required();
    curve->add_option("--alpha", cv_alpha,
                      "statistic: sum, avg, max, std, var, sec, or betti")
        ->check(CLI::IsMember({"sum", "avg", "max", "std", "var", "sec", "betti"}))
        ->capture_default_str();
    curve->add_option("--q", cv_q, "chain dimension")->capture_default_str();
    curve->add_option("--schedule", cv_schedule,
                      "radius grid min:max:step (default 0 to diameter/2 + dr)");
    curve->add_option("--dr", cv_dr, "grid spacing for the default schedule")
        ->capture_default_str();
    curve->add_option("--weight", cv_weight, "simplex weights: none, vol, or inv")
        ->check(CLI::IsMember({"none", "vol", "inv"}))
        ->capture_default_str();
    curve->add_flag("--literal", cv_literal, "literal weight convention");
    curve->add_flag("--strict", cv_strict, "open overlap rule d < 2r");
    add_common(curve, cv_common);

    // ---- fullerene ----
    std::string fl_dir, fl_energies, fl_alpha = "max", fl_schedule;
    double fl_dr = 0.01;
    CommonOpts fl_common;
    CLI::App* fullerene = app.add_subcommand(
        "fullerene", "heat-of-formation regression from spectral-curve areas");
    fullerene->add_option("dir", fl_dir, "directory of .xyz structures")->required();
    fullerene->add_option("--energies", fl_energies, "CSV with name,energy_ev_per_atom rows")
        ->required();
    fullerene->add_option("--alpha", fl_alpha, "statistic integrated per structure")
        ->check(CLI::IsMember({"sum", "avg", "max", "std", "var", "sec"}))
        ->capture_default_str();
    fullerene->add_option("--dr", fl_dr, "radius grid spacing")->capture_default_str();
    fullerene->add_option("--schedule", fl_schedule,
                          "fixed radius grid min:max:step (default per-structure)");
    add_common(fullerene, fl_common);

    // ---- bfactor ----
    std::string bf_input, bf_schedule = "2:12:1";
    CommonOpts bf_common;
    CLI::App* bfactor = app.add_subcommand(
        "bfactor", "per-residue B-factor fit from Laplacian pseudoinverse diagonals");
    bfactor->add_option("pdb", bf_input, "PDB file (alpha carbons of the first model)")
        ->required();
    bfactor->add_option("--schedule", bf_schedule, "radius grid min:max:step in Angstrom")
        ->capture_default_str();
    add_common(bfactor, bf_common);

    // ---- validate ----
    std::string va_input, va_schedule, va_rule = "kernel";
    int va_qmax = 2, va_random = 0, va_points = 6, va_dim = 2;
    unsigned va_seed = 0;
    CommonOpts va_common;
    CLI::App* validate = app.add_subcommand(
        "validate", "cross-check Laplacian nullities against the exact homology oracle");
    validate->add_option("input", va_input, "XYZ (or .pdb) point cloud");
    validate->add_option("--schedule", va_schedule,
                         "radius grid min:max:step (default: half pairwise distances)");
    validate->add_option("--qmax", va_qmax, "check dimensions 0..qmax")->capture_default_str();
    validate->add_option("--rule", va_rule, "persistent boundary columns: truncated or kernel")
        ->check(CLI::IsMember({"truncated", "kernel"}))
        ->capture_default_str();
    validate->add_option("--random", va_random,
                         "validate this many generated clouds instead of an input file");
    validate->add_option("--points", va_points, "points per generated cloud")
        ->capture_default_str();
    validate->add_option("--dim", va_dim, "ambient dimension of generated clouds")
        ->capture_default_str();
    validate->add_option("--seed", va_seed, "seed for the generated clouds")
        ->capture_default_str();
    add_common(validate, va_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the diagnostic
        return 2;
    }

    if (*rips) {
        CloudGuard cloud;
        int status = load_cloud(rips_input, &cloud.handle);
        if (status != PERSLAP_OK) return exit_for(status);
        char* report = nullptr;
        status = perslap_report_rips(cloud.handle, rips_r, rips_qmax, rips_strict ? 1 : 0,
                                     rips_common.format.c_str(), &report);
        if (status != PERSLAP_OK) return exit_for(status);
        return emit(report, rips_common.output);
    }

    if (*spectra) {
        if (*sp_t_opt && !*sp_p_opt) {
            std::fprintf(stderr, "error: --t requires --p (the persistence offset)\n");
            return 2;
        }
        perslap_spectra_config cfg;
        perslap_spectra_config_init(&cfg);
        if (*sp_sched_opt) {
            if (!parse_schedule(sp_schedule, cfg.r_min, cfg.r_max, cfg.dr)) {
                std::fprintf(stderr, "error: --schedule expects min:max:step, got '%s'\n",
                             sp_schedule.c_str());
                return 2;
            }
        } else if (!*sp_t_opt) {
            std::fprintf(stderr, "error: spectra needs --schedule (or a --t/--p pair)\n");
            return 2;
        }
        cfg.q = sp_q;
        cfg.weight = sp_weight.c_str();
        cfg.literal_weights = sp_literal ? 1 : 0;
        cfg.strict_overlap = sp_strict ? 1 : 0;
        cfg.tau = sp_tau;
        cfg.rule = sp_rule.c_str();
        cfg.format = sp_common.format.c_str();
        if (*sp_t_opt) {
            cfg.has_pair = 1;
            cfg.t = sp_t;
            cfg.p = sp_p;
        } else if (*sp_p_opt) {
            cfg.has_offset = 1;
            cfg.offset_p = sp_p;
        }
        CloudGuard cloud;
        int status = load_cloud(sp_input, &cloud.handle);
        if (status != PERSLAP_OK) return exit_for(status);
        char* report = nullptr;
        status = perslap_report_spectra(cloud.handle, &cfg, &report);
        if (status != PERSLAP_OK) return exit_for(status);
        return emit(report, sp_common.output);
    }

    if (*curve) {
        perslap_curve_config cfg;
        perslap_curve_config_init(&cfg);
        cfg.alpha = cv_alpha.c_str();
        cfg.q = cv_q;
        cfg.dr = cv_dr;
        if (!cv_schedule.empty()) {
            if (!parse_schedule(cv_schedule, cfg.r_min, cfg.r_max, cfg.dr)) {
                std::fprintf(stderr, "error: --schedule expects min:max:step, got '%s'\n",
                             cv_schedule.c_str());
                return 2;
            }
            cfg.has_schedule = 1;
        }
        cfg.weight = cv_weight.c_str();
        cfg.literal_weights = cv_literal ? 1 : 0;
        cfg.strict_overlap = cv_strict ? 1 : 0;
        cfg.format = cv_common.format.c_str();
        CloudGuard cloud;
        int status = load_cloud(cv_input, &cloud.handle);
        if (status != PERSLAP_OK) return exit_for(status);
        char* report = nullptr;
        status = perslap_report_curve(cloud.handle, &cfg, &report);
        if (status != PERSLAP_OK) return exit_for(status);
        return emit(report, cv_common.output);
    }

    if (*fullerene) {
        perslap_fullerene_config cfg;
        perslap_fullerene_config_init(&cfg);
        cfg.alpha = fl_alpha.c_str();
        cfg.dr = fl_dr;
        if (!fl_schedule.empty()) {
            if (!parse_schedule(fl_schedule, cfg.r_min, cfg.r_max, cfg.dr)) {
                std::fprintf(stderr, "error: --schedule expects min:max:step, got '%s'\n",
                             fl_schedule.c_str());
                return 2;
            }
            cfg.has_schedule = 1;
        }
        cfg.format = fl_common.format.c_str();
        char* report = nullptr;
        const int status =
            perslap_report_fullerene(fl_dir.c_str(), fl_energies.c_str(), &cfg, &report, nullptr);
        if (status != PERSLAP_OK) return exit_for(status);
        return emit(report, fl_common.output);
    }

    if (*bfactor) {
        perslap_bfactor_config cfg;
        perslap_bfactor_config_init(&cfg);
        if (!parse_schedule(bf_schedule, cfg.r_min, cfg.r_max, cfg.dr)) {
            std::fprintf(stderr, "error: --schedule expects min:max:step, got '%s'\n",
                         bf_schedule.c_str());
            return 2;
        }
        cfg.format = bf_common.format.c_str();
        CloudGuard cloud;
        int status = perslap_cloud_from_pdb_ca_file(bf_input.c_str(), &cloud.handle);
        if (status != PERSLAP_OK) return exit_for(status);
        char* report = nullptr;
        status = perslap_report_bfactor(cloud.handle, &cfg, &report, nullptr);
        if (status != PERSLAP_OK) return exit_for(status);
        return emit(report, bf_common.output);
    }

    if (*validate) {
        perslap_validate_config cfg;
        perslap_validate_config_init(&cfg);
        if (!va_schedule.empty()) {
            if (!parse_schedule(va_schedule, cfg.r_min, cfg.r_max, cfg.dr)) {
                std::fprintf(stderr, "error: --schedule expects min:max:step, got '%s'\n",
                             va_schedule.c_str());
                return 2;
            }
            cfg.has_schedule = 1;
        }
        cfg.q_max = va_qmax;
        cfg.rule = va_rule.c_str();
        cfg.format = va_common.format.c_str();
        cfg.random_clouds = va_random;
        cfg.random_points = va_points;
        cfg.random_dim = va_dim;
        cfg.seed = va_seed;
        if (va_input.empty() && va_random <= 0) {
            std::fprintf(stderr, "error: validate needs an input file or --random N\n");
            return 2;
        }

        CloudGuard cloud;
        if (!va_input.empty()) {
            const int status = load_cloud(va_input, &cloud.handle);
            if (status != PERSLAP_OK) return exit_for(status);
        }
        char* report = nullptr;
        char* warnings = nullptr;
        int mismatches = 0;
        const int status =
            perslap_report_validate(cloud.handle, &cfg, &report, &mismatches, &warnings);
        if (status != PERSLAP_OK) return exit_for(status);
        if (warnings) {
            std::fprintf(stderr, "warning: %s\n", warnings);
            perslap_string_free(warnings);
        }
        const int emit_code = emit(report, va_common.output);
        if (emit_code != 0) return emit_code;
        if (mismatches > 0) {
            std::fprintf(stderr, "validation failed: %d mismatching record(s)\n", mismatches);
            return 1;
        }
        return 0;
    }

    return 2; // unreachable: require_subcommand(1)
}
