#include "perslap/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "perslap/error.hpp"

namespace perslap {

namespace {

using nlohmann::json;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool parse_double(const std::string& tok, double& out) {
    if (tok.empty()) return false;
    char* end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size();
}

bool parse_count(const std::string& tok, long& out) {
    if (tok.empty()) return false;
    char* end = nullptr;
    out = std::strtol(tok.c_str(), &end, 10);
    return end == tok.c_str() + tok.size() && out >= 0;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    std::ostringstream msg;
    msg << "line " << line_no << ": " << what;
    throw input_error(msg.str());
}

Point make_point(double x, double y, double z, std::string element) {
    Point p;
    p.coords.resize(3);
    p.coords << x, y, z;
    p.element = std::move(element);
    return p;
}

PointCloud parse_plain_rows(const std::vector<std::string>& lines) {
    PointCloud cloud;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto toks = tokenize(lines[i]);
        if (toks.empty()) continue;
        double x, y, z;
        if (toks.size() != 3 || !parse_double(toks[0], x) || !parse_double(toks[1], y) ||
            !parse_double(toks[2], z))
            parse_fail(i + 1, "expected an atom count (standard format) or three coordinates "
                              "per line (plain format), got '" + lines[i] + "'");
        cloud.points.push_back(make_point(x, y, z, "X"));
    }
    if (cloud.points.empty()) throw input_error("no atoms found in input");
    return cloud;
}

} // namespace

PointCloud parse_xyz(const std::string& text) {
    const auto lines = split_lines(text);
    std::size_t first = 0;
    while (first < lines.size() && trim(lines[first]).empty()) ++first;
    if (first == lines.size()) throw input_error("line 1: empty input, expected an atom count");

    long count = 0;
    const auto head = tokenize(lines[first]);
    if (head.size() != 1 || !parse_count(head[0], count))
        return parse_plain_rows(lines); // bare x y z rows, no header

    PointCloud cloud;
    std::size_t line_no = first + 2; // skip the comment line
    for (long atom = 0; atom < count; ++atom) {
        ++line_no;
        if (line_no > lines.size())
            parse_fail(lines.size(), "expected " + std::to_string(count) + " atom lines, found " +
                                         std::to_string(atom));
        const auto toks = tokenize(lines[line_no - 1]);
        if (toks.size() < 4)
            parse_fail(line_no, "expected `element x y z`, got '" + lines[line_no - 1] + "'");
        double x, y, z;
        if (!parse_double(toks[1], x) || !parse_double(toks[2], y) || !parse_double(toks[3], z))
            parse_fail(line_no, "non-numeric coordinate in '" + lines[line_no - 1] + "'");
        cloud.points.push_back(make_point(x, y, z, toks[0]));
    }
    for (std::size_t i = line_no; i < lines.size(); ++i)
        if (!trim(lines[i]).empty())
            parse_fail(i + 1, "trailing content after the declared " + std::to_string(count) +
                                  " atoms");
    return cloud;
}

std::string write_xyz(const PointCloud& cloud, const std::string& comment) {
    std::ostringstream out;
    out << cloud.size() << "\n" << comment << "\n";
    char buf[64];
    for (const auto& p : cloud.points) {
        if (p.coords.size() > 3) throw input_error("cannot write a >3-dimensional cloud as XYZ");
        out << (p.element.empty() ? "X" : p.element);
        for (int k = 0; k < 3; ++k) {
            const double v = k < p.coords.size() ? p.coords[k] : 0.0;
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << " " << buf;
        }
        out << "\n";
    }
    return out.str();
}

PointCloud parse_pdb_ca(const std::string& text) {
    const auto lines = split_lines(text);
    PointCloud cloud;
    int models_seen = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.rfind("MODEL", 0) == 0) {
            if (++models_seen >= 2) break;
            continue;
        }
        if (line.rfind("ENDMDL", 0) == 0) break;
        if (line.rfind("ATOM", 0) != 0) continue;
        if (line.size() < 54) parse_fail(i + 1, "ATOM record shorter than the coordinate fields");
        if (trim(line.substr(12, 4)) != "CA") continue;
        const char alt = line[16];
        if (alt != ' ' && alt != 'A') continue;
        double x, y, z;
        if (!parse_double(trim(line.substr(30, 8)), x) ||
            !parse_double(trim(line.substr(38, 8)), y) ||
            !parse_double(trim(line.substr(46, 8)), z))
            parse_fail(i + 1, "non-numeric coordinate in ATOM record");
        Point p = make_point(x, y, z, "C");
        if (line.size() >= 66) {
            const std::string b = trim(line.substr(60, 6));
            double bf;
            if (!b.empty()) {
                if (!parse_double(b, bf)) parse_fail(i + 1, "non-numeric B-factor field");
                p.bfactor = bf;
            }
        }
        cloud.points.push_back(std::move(p));
    }
    if (cloud.points.empty())
        throw input_error("no alpha-carbon ATOM records found (first model, altLoc blank or A)");
    return cloud;
}

std::vector<std::pair<std::string, double>> parse_energies_csv(const std::string& text) {
    const auto lines = split_lines(text);
    std::vector<std::pair<std::string, double>> out;
    bool first_row = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const auto comma = lines[i].find(',');
        if (comma == std::string::npos)
            parse_fail(i + 1, "expected `name,energy_ev_per_atom`, got '" + lines[i] + "'");
        const std::string name = trim(lines[i].substr(0, comma));
        const std::string value = trim(lines[i].substr(comma + 1));
        double energy;
        if (!parse_double(value, energy)) {
            if (first_row) { // header line
                first_row = false;
                continue;
            }
            parse_fail(i + 1, "non-numeric energy '" + value + "'");
        }
        if (name.empty()) parse_fail(i + 1, "empty structure name");
        out.emplace_back(name, energy);
        first_row = false;
    }
    if (out.empty()) throw input_error("no energy rows found");
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot open file for writing: " + path);
    out << text;
    if (!out) throw input_error("failed to write file: " + path);
}

std::string format_g6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

ReportFormat parse_format(const std::string& name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw input_error("unknown output format '" + name + "' (expected csv or json)");
}

namespace {

// Reports quote numbers at 6 significant digits in both formats; JSON gets
// the rounded value as a number rather than a string.
double json_num(double x) { return std::strtod(format_g6(x).c_str(), nullptr); }

json config_json(const ConfigItems& config) {
    json cfg = json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    return cfg;
}

std::string dump_report(const ConfigItems& config, json records, json summary) {
    json j;
    j["schema_version"] = 1;
    j["config"] = config_json(config);
    j["records"] = std::move(records);
    j["summary"] = std::move(summary);
    return j.dump(2) + "\n";
}

} // namespace

std::string rips_report(const ConfigItems& config, const std::vector<int>& counts,
                        ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "q,count\n";
        for (std::size_t q = 0; q < counts.size(); ++q) out << q << "," << counts[q] << "\n";
        return out.str();
    }
    json records = json::array();
    long total = 0;
    for (std::size_t q = 0; q < counts.size(); ++q) {
        records.push_back({{"q", q}, {"count", counts[q]}});
        total += counts[q];
    }
    return dump_report(config, std::move(records), {{"total_simplices", total}});
}

std::string spectra_report(const ConfigItems& config,
                           const std::vector<SpectraRecord>& records, ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "r,p,q,betti,lambda2,sum,avg,max,std,var\n";
        for (const auto& rec : records) {
            out << format_g6(rec.r) << "," << format_g6(rec.p) << "," << rec.q << ","
                << rec.betti << ",";
            if (rec.lambda2) out << format_g6(*rec.lambda2);
            out << "," << format_g6(rec.stats.sum) << "," << format_g6(rec.stats.avg) << ","
                << format_g6(rec.stats.max) << "," << format_g6(rec.stats.std_dev) << ","
                << format_g6(rec.stats.var) << "\n";
        }
        return out.str();
    }
    json arr = json::array();
    for (const auto& rec : records) {
        json j{{"r", json_num(rec.r)},
               {"p", json_num(rec.p)},
               {"q", rec.q},
               {"betti", rec.betti},
               {"sum", json_num(rec.stats.sum)},
               {"avg", json_num(rec.stats.avg)},
               {"max", json_num(rec.stats.max)},
               {"std", json_num(rec.stats.std_dev)},
               {"var", json_num(rec.stats.var)}};
        j["lambda2"] = rec.lambda2 ? json(json_num(*rec.lambda2)) : json(nullptr);
        arr.push_back(std::move(j));
    }
    return dump_report(config, std::move(arr), {{"records", records.size()}});
}

std::string curve_report(const ConfigItems& config, const SpectralCurve& curve, double area,
                         ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "r,value\n";
        for (std::size_t i = 0; i < curve.radii.size(); ++i)
            out << format_g6(curve.radii[i]) << "," << format_g6(curve.values[i]) << "\n";
        return out.str();
    }
    json arr = json::array();
    for (std::size_t i = 0; i < curve.radii.size(); ++i)
        arr.push_back({{"r", json_num(curve.radii[i])}, {"value", json_num(curve.values[i])}});
    json summary{{"alpha", stat_name(curve.alpha)},
                 {"q", curve.q},
                 {"dr", json_num(curve.dr)},
                 {"area", json_num(area)}};
    return dump_report(config, std::move(arr), std::move(summary));
}

std::string betti_curve_report(const ConfigItems& config, const BettiCurve& curve,
                               ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "r,value\n";
        for (std::size_t i = 0; i < curve.radii.size(); ++i)
            out << format_g6(curve.radii[i]) << "," << curve.values[i] << "\n";
        return out.str();
    }
    json arr = json::array();
    for (std::size_t i = 0; i < curve.radii.size(); ++i)
        arr.push_back({{"r", json_num(curve.radii[i])}, {"value", curve.values[i]}});
    return dump_report(config, std::move(arr), {{"alpha", "Betti"}, {"q", curve.q}});
}

std::string fullerene_report(const ConfigItems& config, const StabilityModel& model,
                             ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "name,area,energy_ev_per_atom,predicted_ev_per_atom\n";
        for (std::size_t i = 0; i < model.names.size(); ++i)
            out << model.names[i] << "," << format_g6(model.areas[i]) << ","
                << format_g6(model.energies[i]) << "," << format_g6(model.predictions[i])
                << "\n";
        out << "# alpha=" << stat_name(model.alpha) << "\n";
        out << "# pearson=" << format_g6(model.pearson_r) << "\n";
        out << "# intercept=" << format_g6(model.intercept) << "\n";
        out << "# slope=" << format_g6(model.slope) << "\n";
        return out.str();
    }
    json arr = json::array();
    for (std::size_t i = 0; i < model.names.size(); ++i)
        arr.push_back({{"name", model.names[i]},
                       {"area", json_num(model.areas[i])},
                       {"energy_ev_per_atom", json_num(model.energies[i])},
                       {"predicted_ev_per_atom", json_num(model.predictions[i])}});
    json summary{{"alpha", stat_name(model.alpha)},
                 {"pearson", json_num(model.pearson_r)},
                 {"intercept", json_num(model.intercept)},
                 {"slope", json_num(model.slope)}};
    return dump_report(config, std::move(arr), std::move(summary));
}

std::string bfactor_report(const ConfigItems& config, const BFactorModel& model,
                           const std::vector<double>& b_exp, ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "index,b_exp,b_pred\n";
        for (int i = 0; i < model.predictions.size(); ++i)
            out << i << "," << format_g6(b_exp[static_cast<std::size_t>(i)]) << ","
                << format_g6(model.predictions[i]) << "\n";
        out << "# pearson=" << format_g6(model.pearson_r) << "\n";
        out << "# weights=";
        for (int k = 0; k < model.weights.size(); ++k)
            out << (k ? " " : "") << format_g6(model.weights[k]);
        out << "\n";
        return out.str();
    }
    json arr = json::array();
    for (int i = 0; i < model.predictions.size(); ++i)
        arr.push_back({{"index", i},
                       {"b_exp", json_num(b_exp[static_cast<std::size_t>(i)])},
                       {"b_pred", json_num(model.predictions[i])}});
    json weights = json::array(), radii = json::array(), mean = json::array(),
         stddev = json::array();
    for (int k = 0; k < model.weights.size(); ++k) weights.push_back(json_num(model.weights[k]));
    for (double r : model.radii) radii.push_back(json_num(r));
    for (int k = 0; k < model.mean.size(); ++k) {
        mean.push_back(json_num(model.mean[k]));
        stddev.push_back(json_num(model.stddev[k]));
    }
    json summary{{"pearson", json_num(model.pearson_r)},
                 {"weights", std::move(weights)},
                 {"radii", std::move(radii)},
                 {"feature_mean", std::move(mean)},
                 {"feature_stddev", std::move(stddev)}};
    return dump_report(config, std::move(arr), std::move(summary));
}

int count_mismatches(const std::vector<ValidationRecord>& records) {
    int bad = 0;
    for (const auto& rec : records)
        if (rec.laplacian_nullity != rec.oracle_betti) ++bad;
    return bad;
}

std::string validation_report(const ConfigItems& config,
                              const std::vector<ValidationRecord>& records,
                              ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        std::ostringstream out;
        out << "t,p,q,laplacian_nullity,oracle_betti,match\n";
        for (const auto& rec : records)
            out << format_g6(rec.t) << "," << format_g6(rec.p) << "," << rec.q << ","
                << rec.laplacian_nullity << "," << rec.oracle_betti << ","
                << (rec.laplacian_nullity == rec.oracle_betti ? 1 : 0) << "\n";
        out << "# mismatches=" << count_mismatches(records) << "\n";
        return out.str();
    }
    json arr = json::array();
    for (const auto& rec : records)
        arr.push_back({{"t", json_num(rec.t)},
                       {"p", json_num(rec.p)},
                       {"q", rec.q},
                       {"laplacian_nullity", rec.laplacian_nullity},
                       {"oracle_betti", rec.oracle_betti},
                       {"match", rec.laplacian_nullity == rec.oracle_betti}});
    json summary{{"records", records.size()}, {"mismatches", count_mismatches(records)}};
    return dump_report(config, std::move(arr), std::move(summary));
}

} // namespace perslap
