#include "perslap/pipelines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "perslap/error.hpp"

namespace perslap {

Stat parse_stat(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "sum") return Stat::Sum;
    if (s == "avg" || s == "mean") return Stat::Avg;
    if (s == "max") return Stat::Max;
    if (s == "std") return Stat::Std;
    if (s == "var") return Stat::Var;
    if (s == "sec") return Stat::Sec;
    throw input_error("unknown statistic '" + name + "' (expected sum|avg|max|std|var|sec)");
}

std::string stat_name(Stat alpha) {
    switch (alpha) {
        case Stat::Sum: return "Sum";
        case Stat::Avg: return "Avg";
        case Stat::Max: return "Max";
        case Stat::Std: return "Std";
        case Stat::Var: return "Var";
        case Stat::Sec: return "Sec";
    }
    return "?";
}

const std::vector<Stat>& all_stats() {
    static const std::vector<Stat> stats = {Stat::Sum, Stat::Avg, Stat::Max,
                                            Stat::Std, Stat::Var, Stat::Sec};
    return stats;
}

double stat_value(const SpectralStats& st, Stat alpha) {
    switch (alpha) {
        case Stat::Sum: return st.sum;
        case Stat::Avg: return st.avg;
        case Stat::Max: return st.max;
        case Stat::Std: return st.std_dev;
        case Stat::Var: return st.var;
        case Stat::Sec: return st.sec.value_or(0.0);
    }
    return 0.0;
}

std::vector<double> uniform_schedule(double r_min, double r_max, double dr) {
    if (dr <= 0) throw input_error("schedule spacing must be positive");
    if (r_min > r_max) throw input_error("schedule start exceeds its end");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double r = r_min + i * dr;
        if (r > r_max + 0.5 * dr) break;
        out.push_back(r);
    }
    return out;
}

namespace {

double infer_dr(const std::vector<double>& schedule) {
    return schedule.size() > 1 ? schedule[1] - schedule[0] : 0.0;
}

} // namespace

SpectralCurve spectral_curve(const DistanceMatrix& d, const std::vector<double>& schedule,
                             int q, Stat alpha, WeightMode mode, bool strict_overlap) {
    if (schedule.empty()) throw input_error("spectral curve needs a non-empty schedule");
    if (q < 0) throw input_error("q must be non-negative");
    SpectralCurve c;
    c.alpha = alpha;
    c.q = q;
    c.dr = infer_dr(schedule);
    c.radii = schedule;
    c.values.assign(schedule.size(), 0.0);
    parallel_for(static_cast<int>(schedule.size()), [&](int i) {
        const SimplicialComplex K =
            rips_complex(d, schedule[static_cast<std::size_t>(i)], q + 1, strict_overlap);
        if (K.count(q) == 0) return; // value stays 0
        const Laplacian L = laplacian_q(K, q, mode, &d);
        c.values[static_cast<std::size_t>(i)] = stat_value(spectrum_of(L).stats(), alpha);
    });
    return c;
}

BettiCurve betti_curve(const DistanceMatrix& d, const std::vector<double>& schedule, int q,
                       bool strict_overlap) {
    if (schedule.empty()) throw input_error("Betti curve needs a non-empty schedule");
    if (q < 0) throw input_error("q must be non-negative");
    BettiCurve c;
    c.q = q;
    c.radii = schedule;
    c.values.assign(schedule.size(), 0);
    parallel_for(static_cast<int>(schedule.size()), [&](int i) {
        const SimplicialComplex K =
            rips_complex(d, schedule[static_cast<std::size_t>(i)], q + 1, strict_overlap);
        if (K.count(q) == 0) return;
        c.values[static_cast<std::size_t>(i)] = spectrum_of(laplacian_q(K, q)).nullity();
    });
    return c;
}

double area_under_curve(const SpectralCurve& c) {
    if (c.values.empty()) throw input_error("area of an empty curve");
    double sum = 0.0;
    for (double v : c.values) sum += v;
    return -sum * c.dr;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw input_error("correlation inputs differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw input_error("correlation needs at least two samples");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0)
        throw domain_error("correlation undefined: an input has zero variance");
    return sxy / std::sqrt(sxx * syy);
}

Eigen::VectorXd linear_least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw input_error("feature rows and target length differ");
    if (X.rows() < X.cols()) throw input_error("least squares needs at least as many rows as columns");
    const Eigen::MatrixXd normal = X.transpose() * X;
    return pseudoinverse(normal) * (X.transpose() * y);
}

StabilityModel fullerene_pipeline(const std::vector<Structure>& structures,
                                  const std::vector<double>& energies, Stat alpha,
                                  double dr, const std::vector<double>* schedule) {
    if (structures.size() != energies.size())
        throw input_error("structure and energy counts differ");
    if (structures.size() < 2) throw input_error("stability fit needs at least two structures");
    if (dr <= 0) throw input_error("schedule spacing must be positive");

    StabilityModel m;
    m.alpha = alpha;
    m.dr = schedule ? infer_dr(*schedule) : dr;
    m.energies = energies;
    m.areas.assign(structures.size(), 0.0);
    for (const auto& s : structures) m.names.push_back(s.name);

    // Threads go to the per-radius loop inside each curve; structures are
    // processed in order so failures surface deterministically.
    for (std::size_t i = 0; i < structures.size(); ++i) {
        const DistanceMatrix d = build_distance_matrix(structures[i].cloud);
        std::vector<double> sched;
        if (schedule) {
            sched = *schedule;
        } else {
            sched = uniform_schedule(0.0, cloud_diameter(d) / 2.0 + dr, dr);
        }
        m.areas[i] = area_under_curve(spectral_curve(d, sched, 0, alpha));
    }

    const int n = static_cast<int>(structures.size());
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = m.areas[static_cast<std::size_t>(i)];
        y[i] = energies[static_cast<std::size_t>(i)];
    }
    m.pearson_r = pearson(m.areas, m.energies);
    const Eigen::VectorXd w = linear_least_squares(X, y);
    m.intercept = w[0];
    m.slope = w[1];
    const Eigen::VectorXd pred = X * w;
    m.predictions.assign(pred.data(), pred.data() + pred.size());
    return m;
}

std::vector<double> default_bfactor_schedule() {
    return uniform_schedule(2.0, 12.0, 1.0);
}

BFactorFeatures bfactor_features(const PointCloud& cloud,
                                 const std::vector<double>& schedule) {
    if (cloud.size() == 0) throw input_error("feature extraction on an empty cloud");
    if (schedule.empty()) throw input_error("feature extraction needs a non-empty schedule");
    const DistanceMatrix d = build_distance_matrix(cloud);
    const int n = cloud.size();
    const int R = static_cast<int>(schedule.size());

    BFactorFeatures f;
    f.radii = schedule;
    f.raw.resize(n, R);
    parallel_for(R, [&](int k) {
        const Eigen::MatrixXd L =
            weighted_laplacian0(d, schedule[static_cast<std::size_t>(k)], WeightKind::Unweighted);
        f.raw.col(k) = pseudoinverse(L).diagonal();
    });

    f.mean.resize(R);
    f.stddev.resize(R);
    f.scaled.resize(n, R);
    for (int k = 0; k < R; ++k) {
        const double mean = f.raw.col(k).mean();
        const double var = (f.raw.col(k).array() - mean).square().sum() / n;
        const double sd = std::sqrt(var);
        f.mean[k] = mean;
        f.stddev[k] = sd;
        if (sd > 0)
            f.scaled.col(k) = (f.raw.col(k).array() - mean) / sd;
        else
            f.scaled.col(k).setZero(); // constant feature carries no signal
    }
    return f;
}

namespace {

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& scaled) {
    Eigen::MatrixXd X(scaled.rows(), scaled.cols() + 1);
    X.col(0).setOnes();
    X.rightCols(scaled.cols()) = scaled;
    return X;
}

Eigen::MatrixXd rescale(const BFactorModel& m, const BFactorFeatures& f) {
    if (f.raw.cols() != m.mean.size())
        throw input_error("feature radii do not match the fitted model");
    Eigen::MatrixXd scaled(f.raw.rows(), f.raw.cols());
    for (int k = 0; k < f.raw.cols(); ++k) {
        if (m.stddev[k] > 0)
            scaled.col(k) = (f.raw.col(k).array() - m.mean[k]) / m.stddev[k];
        else
            scaled.col(k).setZero();
    }
    return scaled;
}

} // namespace

BFactorModel bfactor_fit(const BFactorFeatures& f, const std::vector<double>& b_exp) {
    if (static_cast<int>(b_exp.size()) != f.raw.rows())
        throw input_error("experimental B-factor count does not match the cloud");
    BFactorModel m;
    m.radii = f.radii;
    m.mean = f.mean;
    m.stddev = f.stddev;
    const Eigen::MatrixXd X = with_intercept(f.scaled);
    Eigen::VectorXd y(f.raw.rows());
    for (int i = 0; i < y.size(); ++i) y[i] = b_exp[static_cast<std::size_t>(i)];
    m.weights = linear_least_squares(X, y);
    m.predictions = X * m.weights;
    std::vector<double> pred(m.predictions.data(), m.predictions.data() + m.predictions.size());
    m.pearson_r = pearson(pred, b_exp);
    return m;
}

Eigen::VectorXd bfactor_predict(const BFactorModel& m, const BFactorFeatures& f) {
    return with_intercept(rescale(m, f)) * m.weights;
}

int thread_budget() {
    if (const char* env = std::getenv("PERSLAP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 256L));
        throw input_error("PERSLAP_THREADS must be a positive integer");
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    const int workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace perslap
