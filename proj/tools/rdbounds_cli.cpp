// rdbounds command-line front end. Talks to the library exclusively through
// the C API in rdbounds.h; all presentation (CSV, SVG, unit conversion) is
// handled here.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rdbounds.h"

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct SourceHandle {
    rdb_source* ptr = nullptr;
    ~SourceHandle() {
        if (ptr) rdb_source_free(ptr);
    }
};

[[noreturn]] void fail(int code, const std::string& msg) {
    std::cerr << "rdbounds: " << msg << "\n";
    std::exit(code);
}

void check(int rc) {
    if (rc != RDB_OK) fail(rc, rdb_last_error());
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double parse_fraction(const std::string& tok) {
    auto slash = tok.find('/');
    if (slash == std::string::npos) return std::stod(tok);
    return std::stod(tok.substr(0, slash)) / std::stod(tok.substr(slash + 1));
}

struct SourceSpec {
    std::string kind;  // bms | dms | bes | gms
    double p = -1.0;
    std::string pmf_text;
    double delta = -1.0;
    double sigma2 = -1.0;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--source", kind, "Source model: bms|dms|bes|gms")->required();
        cmd->add_option("--p", p, "BMS bias (0 < p <= 1/2)");
        cmd->add_option("--pmf", pmf_text,
                        "DMS pmf, comma-separated, fractions allowed (e.g. 1/3,1/4,1/4,1/6)");
        cmd->add_option("--delta", delta, "BES erasure rate");
        cmd->add_option("--sigma2", sigma2, "GMS variance");
    }

    rdb_source* create() const {
        rdb_source* src = nullptr;
        if (kind == "bms") {
            if (p < 0.0) fail(RDB_EDOMAIN, "bms source requires --p");
            check(rdb_source_bms(p, &src));
        } else if (kind == "dms") {
            if (pmf_text.empty()) fail(RDB_EDOMAIN, "dms source requires --pmf");
            std::vector<double> pmf;
            std::stringstream ss(pmf_text);
            std::string tok;
            while (std::getline(ss, tok, ',')) pmf.push_back(parse_fraction(tok));
            check(rdb_source_dms(pmf.data(), int(pmf.size()), &src));
        } else if (kind == "bes") {
            if (delta < 0.0) fail(RDB_EDOMAIN, "bes source requires --delta");
            check(rdb_source_bes(delta, &src));
        } else if (kind == "gms") {
            if (sigma2 < 0.0) fail(RDB_EDOMAIN, "gms source requires --sigma2");
            check(rdb_source_gms(sigma2, &src));
        } else {
            fail(RDB_EDOMAIN, "unknown source kind '" + kind + "'");
        }
        return src;
    }
};

int theta_mode_from(const std::string& text) {
    if (text == "zero") return RDB_THETA_ZERO;
    if (text == "half-log-n") return RDB_THETA_HALF_LOG_N;
    if (text == "lossless") return RDB_THETA_LOSSLESS;
    if (text == "envelope") return RDB_THETA_ENVELOPE;
    fail(RDB_EDOMAIN, "unknown theta mode '" + text + "'");
}

const char* kind_name(int kind) {
    switch (kind) {
        case RDB_KIND_CONVERSE:
            return "converse";
        case RDB_KIND_ACHIEVABILITY:
            return "achievability";
        case RDB_KIND_APPROXIMATION:
            return "approximation";
    }
    return "unknown";
}

std::vector<std::string> bound_list(const rdb_source* src) {
    size_t needed = 0;
    check(rdb_bound_names(src, nullptr, 0, &needed));
    std::string buf(needed + 1, '\0');
    check(rdb_bound_names(src, buf.data(), buf.size(), nullptr));
    buf.resize(needed);
    std::vector<std::string> names;
    std::stringstream ss(buf);
    std::string tok;
    while (std::getline(ss, tok, '\n'))
        if (!tok.empty()) names.push_back(tok);
    return names;
}

std::vector<int64_t> parse_n_range(const std::string& spec) {
    // lo:hi:step (linear) or lo:hi:xN (N log-spaced points)
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) fail(RDB_EDOMAIN, "n-range must be lo:hi:step or lo:hi:xN");
    int64_t lo = std::stoll(parts[0]);
    int64_t hi = std::stoll(parts[1]);
    if (lo < 1 || hi < lo) fail(RDB_EDOMAIN, "bad n-range endpoints");
    std::vector<int64_t> ns;
    if (!parts[2].empty() && parts[2][0] == 'x') {
        int count = std::stoi(parts[2].substr(1));
        if (count < 2) fail(RDB_EDOMAIN, "log-spaced n-range needs at least 2 points");
        std::set<int64_t> uniq;
        for (int i = 0; i < count; ++i) {
            double f = double(i) / double(count - 1);
            uniq.insert(int64_t(std::llround(double(lo) * std::pow(double(hi) / double(lo), f))));
        }
        ns.assign(uniq.begin(), uniq.end());
    } else {
        int64_t step = std::stoll(parts[2]);
        if (step < 1) fail(RDB_EDOMAIN, "n-range step must be >= 1");
        for (int64_t n = lo; n <= hi; n += step) ns.push_back(n);
    }
    return ns;
}

struct OutputTarget {
    std::string path;  // empty = stdout
    std::ofstream file;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) fail(RDB_EDOMAIN, "cannot open output file " + path);
        }
        return file;
    }
};

// ------------------------------------------------------------------
// SVG line plot (self-contained, no external assets).

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;  // (x, y)
};

void write_svg(const std::string& path, const std::string& x_label, const std::string& y_label,
               bool log_x, const std::vector<Series>& series) {
    const int W = 860, H = 560, ML = 70, MR = 170, MT = 30, MB = 50;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (auto [x, y] : s.pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            double xv = log_x ? std::log10(x) : x;
            xmin = std::min(xmin, xv);
            xmax = std::max(xmax, xv);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;
    auto px = [&](double x) {
        double xv = log_x ? std::log10(x) : x;
        return ML + (xv - xmin) / (xmax - xmin) * (W - ML - MR);
    };
    auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ofstream os(path);
    if (!os) fail(RDB_EDOMAIN, "cannot open SVG output " + path);
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    // Axes.
    os << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='" << H - MB
       << "' stroke='black'/>\n";
    os << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
       << "' stroke='black'/>\n";
    os << "<text x='" << (ML + (W - ML - MR) / 2) << "' y='" << H - 12
       << "' text-anchor='middle' font-size='14'>" << x_label << "</text>\n";
    os << "<text x='18' y='" << (MT + (H - MT - MB) / 2)
       << "' text-anchor='middle' font-size='14' transform='rotate(-90 18 "
       << (MT + (H - MT - MB) / 2) << ")'>" << y_label << "</text>\n";
    // Ticks.
    for (int i = 0; i <= 5; ++i) {
        double yv = ymin + (ymax - ymin) * i / 5.0;
        os << "<line x1='" << ML - 4 << "' y1='" << py(yv) << "' x2='" << ML << "' y2='" << py(yv)
           << "' stroke='black'/>\n";
        os << "<text x='" << ML - 8 << "' y='" << py(yv) + 4
           << "' text-anchor='end' font-size='11'>" << fmt12(std::round(yv * 1e4) / 1e4)
           << "</text>\n";
        double xv = xmin + (xmax - xmin) * i / 5.0;
        double xd = log_x ? std::pow(10.0, xv) : xv;
        os << "<line x1='" << ML + (xv - xmin) / (xmax - xmin) * (W - ML - MR) << "' y1='"
           << H - MB << "' x2='" << ML + (xv - xmin) / (xmax - xmin) * (W - ML - MR) << "' y2='"
           << H - MB + 4 << "' stroke='black'/>\n";
        os << "<text x='" << ML + (xv - xmin) / (xmax - xmin) * (W - ML - MR) << "' y='"
           << H - MB + 18 << "' text-anchor='middle' font-size='11'>"
           << fmt12(std::round(xd * 100.0) / 100.0) << "</text>\n";
    }
    // Series.
    size_t ci = 0;
    for (const auto& s : series) {
        const char* color = palette[ci % 8];
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.6' points='";
        for (auto [x, y] : s.pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            os << px(x) << "," << py(y) << " ";
        }
        os << "'/>\n";
        os << "<text x='" << W - MR + 10 << "' y='" << MT + 16 + 18 * int(ci)
           << "' font-size='12' fill='" << color << "'>" << s.label << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
}

// ------------------------------------------------------------------
// Shared sweep machinery.

struct SweepRow {
    int64_t n;
    std::string bound;
    std::string kind;
    double rate_bits;  // NaN on error
};

std::vector<SweepRow> run_sweep(const rdb_source* src, const std::vector<int64_t>& ns,
                                const std::vector<std::string>& bounds, double d, double eps,
                                const rdb_eval_opts& opts, bool nats, int threads) {
    struct Task {
        int64_t n;
        std::string bound;
    };
    std::vector<Task> tasks;
    for (int64_t n : ns)
        for (const auto& b : bounds) tasks.push_back({n, b});
    std::vector<SweepRow> rows(tasks.size());

    auto worker = [&](size_t idx) {
        const Task& t = tasks[idx];
        rdb_bound_value v{};
        int rc = rdb_eval_rate_bound(src, t.bound.c_str(), t.n, d, eps, &opts, &v);
        SweepRow row;
        row.n = t.n;
        row.bound = t.bound;
        if (rc == RDB_OK) {
            row.kind = kind_name(v.kind);
            row.rate_bits = nats ? v.log_m_nats / double(t.n) : v.rate_bits;
        } else {
            row.kind = "error";
            row.rate_bits = std::nan("");
        }
        rows[idx] = std::move(row);
    };

    if (threads <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) worker(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                    worker(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.bound < b.bound;
    });
    return rows;
}

void emit_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "n,bound,kind,rate_bits\n";
    for (const auto& r : rows)
        os << r.n << "," << r.bound << "," << r.kind << "," << fmt12(r.rate_bits) << "\n";
}

std::vector<Series> sweep_series(const std::vector<SweepRow>& rows) {
    std::map<std::string, Series> by_bound;
    for (const auto& r : rows) {
        if (!std::isfinite(r.rate_bits)) continue;
        auto& s = by_bound[r.bound];
        s.label = r.bound;
        s.pts.emplace_back(double(r.n), r.rate_bits);
    }
    std::vector<Series> out;
    for (auto& [k, s] : by_bound) out.push_back(std::move(s));
    return out;
}

// ------------------------------------------------------------------
// Figure fixtures: source parameters from the reproduced experiments.

struct FigureSpec {
    std::string name;
    SourceSpec source;
    double d = 0.0, eps = 0.0;
    std::vector<std::string> bounds;
    int theta = RDB_THETA_ZERO;
    std::string n_range;
};

std::optional<FigureSpec> figure_spec(const std::string& name) {
    FigureSpec f;
    f.name = name;
    if (name == "fig1") {
        f.source.kind = "bms";
        f.source.p = 0.5;
        f.d = 0.11;
        f.eps = 1e-2;
        f.bounds = {"bms-shannon-ach", "ebms-conv", "ebms-ach", "approx"};
        f.theta = RDB_THETA_HALF_LOG_N;
        f.n_range = "8:2000:x36";
        return f;
    }
    if (name == "fig2" || name == "fig3") {
        f.source.kind = "bms";
        f.source.p = 0.4;
        f.d = 0.11;
        f.eps = name == "fig2" ? 1e-2 : 1e-4;
        f.bounds = {"bms-shannon-ach", "bms-rc-ach", "bms-ht-conv", "bms-tilted-conv", "approx"};
        f.theta = RDB_THETA_ZERO;
        f.n_range = "8:1000:x32";
        return f;
    }
    if (name == "fig6") {
        f.source.kind = "bes";
        f.source.delta = 0.1;
        f.d = 0.1;
        f.eps = 0.1;
        f.bounds = {"bes-conv", "bes-ach", "approx"};
        f.theta = RDB_THETA_HALF_LOG_N;
        f.n_range = "8:2000:x36";
        return f;
    }
    if (name == "fig8" || name == "fig9") {
        f.source.kind = "gms";
        f.source.sigma2 = 1.0;
        f.d = 0.25;
        f.eps = name == "fig8" ? 1e-2 : 1e-4;
        f.bounds = {"gms-cap-ach", "gms-covering-ach", "volume-converse", "gms-tilted-conv",
                    "approx"};
        f.theta = RDB_THETA_HALF_LOG_N;
        f.n_range = "10:2000:x34";
        return f;
    }
    return std::nullopt;
}

// Rate-distortion / blocklength profile figures (fig4: DMS, fig5: BES).
void run_profile_figure(const std::string& name, const std::string& out_path, bool svg,
                        const std::string& svg_path) {
    SourceHandle src;
    bool bes = (name == "fig5");
    std::vector<double> ds;
    if (bes) {
        check(rdb_source_bes(0.1, &src.ptr));
        for (double d = 0.055; d < 0.495; d += 0.005) ds.push_back(d);
    } else {
        double pmf[4] = {1.0 / 3.0, 1.0 / 4.0, 1.0 / 4.0, 1.0 / 6.0};
        check(rdb_source_dms(pmf, 4, &src.ptr));
        for (double d = 0.01; d < 0.66; d += 0.005) ds.push_back(d);
    }
    const double etas[] = {0.1};
    const double epss[] = {1e-1, 1e-2, 1e-4};

    OutputTarget out;
    out.path = out_path;
    std::ostream& os = out.stream();
    os << (bes ? "d,dispersion_bits2" : "d,rate_bits");
    for (double e : epss) os << ",n_req_eps_" << fmt12(e);
    os << "\n";
    Series main_curve;
    std::vector<Series> ncurves(3);
    for (double d : ds) {
        double main_val;
        if (bes) {
            double v = 0.0;
            check(rdb_dispersion(src.ptr, d, &v));
            main_val = v / (kLn2 * kLn2);
        } else {
            double r = 0.0;
            check(rdb_rate_distortion(src.ptr, d, &r));
            main_val = r / kLn2;
        }
        os << fmt12(d) << "," << fmt12(main_val);
        main_curve.pts.emplace_back(d, main_val);
        for (size_t i = 0; i < 3; ++i) {
            double n_est = 0.0;
            int zero = 0;
            int rc = rdb_required_blocklength(src.ptr, 0, d, etas[0], epss[i], &n_est, &zero,
                                              nullptr, nullptr);
            double val = rc == RDB_OK ? n_est : std::nan("");
            os << "," << fmt12(val);
            if (std::isfinite(val)) ncurves[i].pts.emplace_back(d, std::log10(std::max(val, 1.0)));
        }
        os << "\n";
    }
    if (svg) {
        main_curve.label = bes ? "dispersion (bits^2)" : "R(d) (bits)";
        std::vector<Series> all = {main_curve};
        for (size_t i = 0; i < 3; ++i) {
            ncurves[i].label = "log10 n_req, eps=" + fmt12(epss[i]);
            all.push_back(ncurves[i]);
        }
        write_svg(svg_path, "d", bes ? "bits^2 / log10(n)" : "bits / log10(n)", false, all);
    }
}

// ------------------------------------------------------------------
// verify: oracle suites.

int run_verify(uint64_t seed, int64_t trials) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : "  (" + detail + ")")
                  << "\n";
        if (!ok) ++failures;
    };

    // 1. Exhaustive tiny-block bracketing.
    for (double p : {0.3, 0.5}) {
        for (double d : {0.0, 0.25}) {
            for (double eps : {0.05, 0.2}) {
                for (int64_t n = 1; n <= 4; ++n) {
                    SourceHandle src;
                    check(rdb_source_bms(p, &src.ptr));
                    int64_t mstar = 0;
                    check(rdb_brute_force_mstar(src.ptr, n, d, eps, &mstar));
                    rdb_eval_opts opts{RDB_THETA_ZERO, 1};
                    const char* conv = p == 0.5 ? "ebms-conv" : "bms-ht-conv";
                    const char* conv2 = "bms-tilted-conv";
                    const char* ach = p == 0.5 ? "ebms-ach" : "bms-rc-ach";
                    rdb_bound_value vc{}, vc2{}, va{};
                    check(rdb_eval_rate_bound(src.ptr, conv, n, d, eps, &opts, &vc));
                    check(rdb_eval_rate_bound(src.ptr, conv2, n, d, eps, &opts, &vc2));
                    check(rdb_eval_rate_bound(src.ptr, ach, n, d, eps, &opts, &va));
                    double lo = std::max(vc.log_m_nats, vc2.log_m_nats);
                    double hi = va.log_m_nats;
                    bool ok = lo <= std::log(double(mstar)) + 1e-9 &&
                              std::log(double(mstar)) <= hi + 1e-9;
                    std::ostringstream ss;
                    ss << "p=" << p << " d=" << d << " eps=" << eps << " n=" << n
                       << " conv=" << fmt12(lo) << " lnM*=" << fmt12(std::log(double(mstar)))
                       << " ach=" << fmt12(hi);
                    report("bracket " + ss.str(), ok, "");
                }
            }
        }
    }

    // 2. Monte Carlo against the exact random-coding forms.
    struct McCase {
        int m;  // alphabet (2 = binary)
        int64_t n, M;
        double d;
    };
    const McCase cases[] = {{2, 8, 4, 0.125}, {2, 10, 8, 0.1},  {2, 6, 2, 1.0 / 6.0},
                            {3, 5, 6, 0.2},   {3, 7, 10, 0.15}, {4, 4, 8, 0.25}};
    for (const auto& c : cases) {
        SourceHandle src;
        if (c.m == 2) {
            check(rdb_source_bms(0.5, &src.ptr));
        } else {
            std::vector<double> pmf(size_t(c.m), 1.0 / double(c.m));
            check(rdb_source_dms(pmf.data(), c.m, &src.ptr));
        }
        double eps_hat = 0.0, se = 0.0;
        check(rdb_mc_random_coding(src.ptr, RDB_CODEBOOK_EQUIPROBABLE, c.n, c.M, c.d, trials,
                                   seed, &eps_hat, &se));
        double closed = 0.0;
        const char* bound = c.m == 2 ? "ebms-ach" : "edms-ach";
        check(rdb_eval_excess_probability(src.ptr, bound, c.n, c.d, std::log(double(c.M)),
                                          &closed));
        bool ok = std::fabs(eps_hat - closed) <= 3.0 * std::max(se, 1e-12);
        std::ostringstream ss;
        ss << "m=" << c.m << " n=" << c.n << " M=" << c.M << " d=" << fmt12(c.d)
           << " mc=" << fmt12(eps_hat) << " exact=" << fmt12(closed) << " se=" << fmt12(se);
        report("random-coding " + ss.str(), ok, "");
    }

    // 3. Lossless optimum: test-measure sandwich and the equiprobable closed form.
    for (double p : {0.4, 0.5}) {
        for (int64_t n : {8, 12}) {
            for (double eps : {0.1, 0.3}) {
                SourceHandle src;
                check(rdb_source_bms(p, &src.ptr));
                double mstar = 0.0, log_beta = 0.0;
                check(rdb_lossless_mstar(src.ptr, n, eps, &mstar, &log_beta));
                double beta = std::exp(log_beta);
                bool ok = beta <= mstar + 1e-9 && mstar <= beta + 1.0 + 1e-9;
                if (p == 0.5) {
                    double expect = std::ceil((1.0 - eps) * std::pow(2.0, double(n)) - 1e-9);
                    ok = ok && mstar == expect;
                }
                std::ostringstream ss;
                ss << "p=" << p << " n=" << n << " eps=" << eps << " M*=" << fmt12(mstar)
                   << " beta=" << fmt12(beta);
                report("lossless " + ss.str(), ok, "");
            }
        }
    }

    std::cout << (failures == 0 ? "verify: all checks passed\n"
                                : "verify: " + std::to_string(failures) + " failures\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-blocklength rate-distortion bound calculator"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.require_subcommand(1);

    std::string out_path;
    bool svg = false;
    bool nats = false;
    uint64_t seed = 20120613;
    int threads = 1;
    app.add_option("--out", out_path, "output path (default: stdout)")->capture_default_str();
    app.add_flag("--svg", svg, "also write an SVG plot next to CSV output");
    app.add_flag("--nats", nats, "report rates in nats instead of bits");
    app.add_option("--seed", seed, "seed for randomized verification")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for sweeps")->capture_default_str();

    // ---- bound ----
    auto* cmd_bound = app.add_subcommand("bound", "evaluate one bound at one operating point");
    cmd_bound->fallthrough();
    SourceSpec bound_src;
    bound_src.add_options(cmd_bound);
    int64_t b_n = 0;
    double b_d = std::nan(""), b_rate = std::nan(""), b_eps = 0.0;
    std::string b_bound, b_theta = "zero";
    bool b_csv = false, b_int_m = false;
    cmd_bound->add_option("--n", b_n, "blocklength")->required();
    cmd_bound->add_option("--d", b_d, "distortion level");
    cmd_bound->add_option("--rate", b_rate, "rate in bits/symbol (distortion query)");
    cmd_bound->add_option("--eps", b_eps, "excess-distortion probability")->required();
    cmd_bound->add_option("--bound", b_bound, "bound name (see `bounds` subcommand)")->required();
    cmd_bound->add_option("--theta", b_theta, "approximation remainder: zero|half-log-n|lossless|envelope");
    cmd_bound->add_flag("--csv", b_csv, "emit a CSV record instead of text");
    cmd_bound->add_flag("--integer-m", b_int_m, "round M outward to an integer when small");

    // ---- bounds (list) ----
    auto* cmd_bounds = app.add_subcommand("bounds", "list bound names for a source");
    cmd_bounds->fallthrough();
    SourceSpec list_src;
    list_src.add_options(cmd_bounds);

    // ---- sweep ----
    auto* cmd_sweep = app.add_subcommand("sweep", "evaluate bounds over a blocklength range");
    cmd_sweep->fallthrough();
    SourceSpec sweep_src;
    sweep_src.add_options(cmd_sweep);
    std::string s_range, s_bounds = "all", s_theta = "zero";
    double s_d = 0.0, s_eps = 0.0;
    cmd_sweep->add_option("--n-range", s_range, "lo:hi:step or lo:hi:xN (log-spaced)")->required();
    cmd_sweep->add_option("--d", s_d, "distortion level")->required();
    cmd_sweep->add_option("--eps", s_eps, "excess probability")->required();
    cmd_sweep->add_option("--bounds", s_bounds, "comma-separated bound names or 'all'");
    cmd_sweep->add_option("--theta", s_theta, "approximation remainder mode");

    // ---- figure ----
    auto* cmd_figure = app.add_subcommand("figure", "reproduce a bundled experiment as CSV data");
    cmd_figure->fallthrough();
    std::string f_name;
    cmd_figure->add_option("name", f_name, "fig1|fig2|fig3|fig4|fig5|fig6|fig8|fig9")->required();

    // ---- plan ----
    auto* cmd_plan = app.add_subcommand("plan", "blocklength needed for a target overhead");
    cmd_plan->fallthrough();
    SourceSpec plan_src;
    plan_src.add_options(cmd_plan);
    double p_d = std::nan(""), p_rate = std::nan(""), p_eta = 0.0, p_eps = 0.0;
    cmd_plan->add_option("--d", p_d, "distortion level (rate mode)");
    cmd_plan->add_option("--rate", p_rate, "rate in bits/symbol (distortion mode)");
    cmd_plan->add_option("--eta", p_eta, "relative excess")->required();
    cmd_plan->add_option("--eps", p_eps, "excess probability")->required();

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "run the ground-truth oracle suites");
    cmd_verify->fallthrough();
    int64_t v_trials = 1000000;
    cmd_verify->add_option("--trials", v_trials, "Monte Carlo trials per case")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : RDB_EDOMAIN;
    }

    if (cmd_bound->parsed()) {
        SourceHandle src;
        src.ptr = bound_src.create();
        rdb_eval_opts opts{theta_mode_from(b_theta), b_int_m ? 1 : 0};
        OutputTarget out;
        out.path = out_path;
        std::ostream& os = out.stream();
        if (std::isfinite(b_rate)) {
            double dval = 0.0;
            check(rdb_eval_distortion_bound(src.ptr, b_bound.c_str(), b_n, b_rate, b_eps, &opts,
                                            &dval));
            if (b_csv) {
                os << "source,n,rate_bits,eps,bound,d_bound\n"
                   << rdb_source_describe(src.ptr) << "," << b_n << "," << fmt12(b_rate) << ","
                   << fmt12(b_eps) << "," << b_bound << "," << fmt12(dval) << "\n";
            } else {
                os << "source        " << rdb_source_describe(src.ptr) << "\n"
                   << "bound         " << b_bound << "\n"
                   << "n             " << b_n << "\n"
                   << "rate          " << fmt12(b_rate) << " bits/symbol\n"
                   << "eps           " << fmt12(b_eps) << "\n"
                   << "distortion    " << fmt12(dval) << "\n";
            }
            return 0;
        }
        if (!std::isfinite(b_d)) fail(RDB_EDOMAIN, "bound: need --d or --rate");
        rdb_bound_value v{};
        check(rdb_eval_rate_bound(src.ptr, b_bound.c_str(), b_n, b_d, b_eps, &opts, &v));
        double rate = nats ? v.log_m_nats / double(b_n) : v.rate_bits;
        if (b_csv) {
            os << "source,n,d,eps,bound,kind,rate_" << (nats ? "nats" : "bits") << ",log_M_nats,eps_at_log_M\n";
            os << rdb_source_describe(src.ptr) << "," << b_n << "," << fmt12(b_d) << ","
               << fmt12(b_eps) << "," << v.name << "," << kind_name(v.kind) << "," << fmt12(rate)
               << "," << fmt12(v.log_m_nats) << "," << fmt12(v.eps_at_log_m) << "\n";
        } else {
            os << "source        " << rdb_source_describe(src.ptr) << "\n"
               << "bound         " << v.name << " (" << kind_name(v.kind) << ")\n"
               << "n             " << b_n << "\n"
               << "d             " << fmt12(b_d) << "\n"
               << "eps           " << fmt12(b_eps) << "\n"
               << "rate          " << fmt12(rate) << (nats ? " nats" : " bits") << "/symbol\n"
               << "log M         " << fmt12(v.log_m_nats) << " nats\n";
            if (std::isfinite(v.eps_at_log_m))
                os << "eps at log M  " << fmt12(v.eps_at_log_m) << "\n";
        }
        return 0;
    }

    if (cmd_bounds->parsed()) {
        SourceHandle src;
        src.ptr = list_src.create();
        for (const auto& b : bound_list(src.ptr)) std::cout << b << "\n";
        return 0;
    }

    if (cmd_sweep->parsed()) {
        SourceHandle src;
        src.ptr = sweep_src.create();
        std::vector<int64_t> ns = parse_n_range(s_range);
        std::vector<std::string> bounds;
        if (s_bounds == "all") {
            bounds = bound_list(src.ptr);
        } else {
            std::stringstream ss(s_bounds);
            std::string tok;
            while (std::getline(ss, tok, ',')) bounds.push_back(tok);
        }
        rdb_eval_opts opts{theta_mode_from(s_theta), 0};
        auto rows = run_sweep(src.ptr, ns, bounds, s_d, s_eps, opts, nats, threads);
        OutputTarget out;
        out.path = out_path;
        emit_sweep_csv(out.stream(), rows);
        if (svg) {
            std::string svg_path = out_path.empty() ? "sweep.svg" : out_path + ".svg";
            write_svg(svg_path, "n", nats ? "rate (nats)" : "rate (bits)", true,
                      sweep_series(rows));
        }
        return 0;
    }

    if (cmd_figure->parsed()) {
        std::string csv_path = out_path.empty() ? f_name + ".csv" : out_path;
        std::string svg_path = csv_path.substr(0, csv_path.find_last_of('.')) + ".svg";
        if (f_name == "fig4" || f_name == "fig5") {
            run_profile_figure(f_name, csv_path, svg, svg_path);
            return 0;
        }
        auto spec = figure_spec(f_name);
        if (!spec) fail(RDB_EDOMAIN, "unknown figure '" + f_name + "' (fig7 has no data)");
        SourceHandle src;
        src.ptr = spec->source.create();
        rdb_eval_opts opts{spec->theta, 0};
        auto rows = run_sweep(src.ptr, parse_n_range(spec->n_range), spec->bounds, spec->d,
                              spec->eps, opts, nats, threads);
        OutputTarget out;
        out.path = csv_path;
        emit_sweep_csv(out.stream(), rows);
        if (svg) write_svg(svg_path, "n", "rate (bits)", true, sweep_series(rows));
        return 0;
    }

    if (cmd_plan->parsed()) {
        SourceHandle src;
        src.ptr = plan_src.create();
        int mode = std::isfinite(p_rate) ? 1 : 0;
        if (!std::isfinite(p_rate) && !std::isfinite(p_d))
            fail(RDB_EDOMAIN, "plan: need --d (rate mode) or --rate (distortion mode)");
        double arg = mode ? p_rate * kLn2 : p_d;
        double n_est = 0.0, source_factor = 0.0, spec_factor = 0.0;
        int zero = 0;
        check(rdb_required_blocklength(src.ptr, mode, arg, p_eta, p_eps, &n_est, &zero,
                                       &source_factor, &spec_factor));
        OutputTarget out;
        out.path = out_path;
        std::ostream& os = out.stream();
        os << "source            " << rdb_source_describe(src.ptr) << "\n"
           << "mode              " << (mode ? "distortion" : "rate") << "\n"
           << (mode ? "rate (bits)       " + fmt12(p_rate) : "d                 " + fmt12(p_d))
           << "\n"
           << "eta               " << fmt12(p_eta) << "\n"
           << "eps               " << fmt12(p_eps) << "\n"
           << "source factor     " << fmt12(source_factor) << "  (dispersion / squared target)\n"
           << "spec factor       " << fmt12(spec_factor) << "  ((Qinv(eps)/eta)^2)\n"
           << "n estimate        " << fmt12(n_est) << "\n";
        if (zero) os << "zero-dispersion   true\n";
        return 0;
    }

    if (cmd_verify->parsed()) {
        return run_verify(seed, v_trials);
    }

    return 0;
}
