// Experiment driver: each subcommand evaluates one family of numerical
// experiments over a JSON-configured parameter grid and writes CSV, a JSON
// summary, an SVG plot, and a run manifest.

#include "splinewidth/breaks.hpp"
#include "splinewidth/bspline.hpp"
#include "splinewidth/functions.hpp"
#include "splinewidth/nwidth.hpp"
#include "splinewidth/projection.hpp"
#include "splinewidth/space.hpp"
#include "splinewidth/spectral.hpp"
#include "svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::json;
using namespace splinewidth;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kMaxDegree = 12;
constexpr std::size_t kMaxDim = 600;
constexpr std::size_t kMaxFineNodes = 8000;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CellResult {
    std::string id;
    std::string status;  // pass | fail | skipped(hypothesis) | exploratory
    std::string row;     // CSV fields, no newline
    json info;           // payload merged into the summary
    cli::Series plot;    // optional points contributed to the SVG
};

struct Experiment {
    std::string csv_header;
    std::vector<std::function<CellResult()>> cells;
    std::string plot_title, plot_x, plot_y;
    bool plot_log_y = false;
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

// ---- config access with field-naming errors ------------------------------

json get_field(const json& cfg, const std::string& key, json fallback) {
    if (cfg.contains(key)) return cfg.at(key);
    if (fallback.is_null()) throw ConfigError("missing config field: " + key);
    return fallback;
}

std::vector<int> int_list(const json& cfg, const std::string& key, int lo, int hi,
                          json fallback = nullptr) {
    const json v = get_field(cfg, key, fallback);
    if (!v.is_array() || v.empty()) throw ConfigError("config field must be a non-empty array: " + key);
    std::vector<int> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) throw ConfigError("config field must hold integers: " + key);
        const int x = e.get<int>();
        if (x < lo || x > hi)
            throw ConfigError("config field " + key + " out of range [" + std::to_string(lo) + "," +
                              std::to_string(hi) + "]");
        out.push_back(x);
    }
    return out;
}

std::vector<std::string> string_list(const json& cfg, const std::string& key, json fallback) {
    const json v = get_field(cfg, key, fallback);
    if (!v.is_array() || v.empty()) throw ConfigError("config field must be a non-empty array: " + key);
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw ConfigError("config field must hold strings: " + key);
        out.push_back(e.get<std::string>());
    }
    return out;
}

double number_field(const json& cfg, const std::string& key, double fallback) {
    const json v = get_field(cfg, key, fallback);
    if (!v.is_number()) throw ConfigError("config field must be a number: " + key);
    return v.get<double>();
}

BreakSequence breaks_for(std::size_t n, double amplitude_fraction, unsigned seed) {
    if (seed == 0) return make_uniform_breaks(n, 0.0, 1.0);
    const double amp = amplitude_fraction / static_cast<double>(n);
    return make_random_perturbed_breaks(n, amp, seed, 0.0, 1.0);
}

void check_dim(std::size_t dim) {
    if (dim > kMaxDim) throw ConfigError("space dimension exceeds the cap of 600");
}

// ---- subcommand experiment builders --------------------------------------

Experiment build_project(const json& cfg) {
    Experiment ex;
    ex.csv_header = "seed,n,p,r,function,h,error,bound,ratio,status";
    ex.plot_title = "Projection error against the width bound";
    ex.plot_x = "degree p";
    ex.plot_y = "error/bound";
    const auto ns = int_list(cfg, "n", 1, 512, json::array({8}));
    const auto ps = int_list(cfg, "p", 0, kMaxDegree);
    const auto rs = int_list(cfg, "r", 1, kMaxDegree + 1);
    const auto fns = string_list(cfg, "functions", json::array({"sin_1", "exp"}));
    const auto seeds = int_list(cfg, "seeds", 0, 1 << 30, json::array({0}));
    const double amp = number_field(cfg, "amplitude_fraction", 0.4);
    if (amp < 0.0 || amp >= 0.5) throw ConfigError("config field amplitude_fraction must lie in [0, 0.5)");

    for (int seed : seeds)
        for (int n : ns)
            for (int p : ps)
                for (int r : rs)
                    for (const std::string& fn : fns) {
                        std::ostringstream id;
                        id << "seed=" << seed << ",n=" << n << ",p=" << p << ",r=" << r << ",u=" << fn;
                        ex.cells.push_back([=, id = id.str()]() {
                            CellResult cell;
                            cell.id = id;
                            const BreakSequence b = breaks_for(static_cast<std::size_t>(n), amp,
                                                               static_cast<unsigned>(seed));
                            const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::full());
                            check_dim(s.dim());
                            const FunctionSpec u = function_catalog(fn);
                            const BoundReport rep = bound_report(u, s, ProjectorKind::L2, 0, r, 0);
                            cell.status = !rep.hypothesis_ok ? "skipped(hypothesis)"
                                          : (rep.ratio <= 1.0 + 1e-9) ? "pass" : "fail";
                            std::ostringstream row;
                            row << seed << "," << n << "," << p << "," << r << "," << fn << ","
                                << fmt17(b.h()) << "," << fmt17(rep.error) << "," << fmt17(rep.bound)
                                << "," << fmt17(rep.ratio) << "," << cell.status;
                            cell.row = row.str();
                            if (rep.hypothesis_ok) {
                                cell.plot.label = fn;
                                cell.plot.x.push_back(p);
                                cell.plot.y.push_back(rep.ratio);
                            }
                            return cell;
                        });
                    }
    return ex;
}

Experiment build_ritz(const json& cfg) {
    Experiment ex;
    ex.csv_header = "family,seed,n,p,q,l,r,function,error,bound,ratio,cross_check,status";
    ex.plot_title = "Ritz projection error against the width bound";
    ex.plot_x = "degree p";
    ex.plot_y = "error/bound";
    const auto ns = int_list(cfg, "n", 1, 512, json::array({8}));
    const auto ps = int_list(cfg, "p", 1, kMaxDegree);
    const auto qs = int_list(cfg, "q", 1, kMaxDegree);
    const auto rs = int_list(cfg, "r", 1, kMaxDegree + 1);
    const auto fams = string_list(cfg, "families", json::array({"full", "periodic"}));
    const auto fns = string_list(cfg, "functions", json::array({"sin_2", "exp"}));
    const auto seeds = int_list(cfg, "seeds", 0, 1 << 30, json::array({0}));
    const double amp = number_field(cfg, "amplitude_fraction", 0.4);

    for (const std::string& fam : fams) {
        if (fam != "full" && fam != "periodic")
            throw ConfigError("config field families: only full and periodic support the Ritz projection");
        for (int seed : seeds)
            for (int n : ns)
                for (int p : ps)
                    for (int q : qs) {
                        if (q > p) continue;
                        for (int r : rs)
                            for (int l = 0; l <= q; ++l)
                                for (const std::string& fn : fns) {
                                    std::ostringstream id;
                                    id << fam << ",seed=" << seed << ",n=" << n << ",p=" << p
                                       << ",q=" << q << ",l=" << l << ",r=" << r << ",u=" << fn;
                                    ex.cells.push_back([=, id = id.str()]() {
                                        CellResult cell;
                                        cell.id = id;
                                        const bool periodic = fam == "periodic";
                                        const BreakSequence b =
                                            periodic ? make_uniform_breaks(static_cast<std::size_t>(n), 0.0, 1.0)
                                                     : breaks_for(static_cast<std::size_t>(n), amp,
                                                                  static_cast<unsigned>(seed));
                                        const SplineSpace s = build_subspace(
                                            b, p, p - 1,
                                            periodic ? ConstraintFamily::periodic(0) : ConstraintFamily::full());
                                        check_dim(s.dim());
                                        const FunctionSpec u = function_catalog(fn);
                                        const BoundReport rep =
                                            bound_report(u, s, ProjectorKind::RitzRecursive, q, r, l);
                                        double cross = 0.0;
                                        if (rep.hypothesis_ok) {
                                            const auto pr = ritz_project_recursive(s, u, q);
                                            const auto pv = ritz_project_variational(s, u, q);
                                            double d2 = 0.0;
                                            for (std::size_t i = 0; i < pr.coeffs.size(); ++i) {
                                                const double d = pr.coeffs[i] - pv.coeffs[i];
                                                d2 += d * d;
                                            }
                                            cross = std::sqrt(d2) /
                                                    std::max(function_norm(u, b, 0), 1e-300);
                                        }
                                        cell.status = !rep.hypothesis_ok ? "skipped(hypothesis)"
                                                      : (rep.ratio <= 1.0 + 1e-9 && cross <= 1e-8)
                                                          ? "pass"
                                                          : "fail";
                                        std::ostringstream row;
                                        row << fam << "," << seed << "," << n << "," << p << "," << q
                                            << "," << l << "," << r << "," << fn << ","
                                            << fmt17(rep.error) << "," << fmt17(rep.bound) << ","
                                            << fmt17(rep.ratio) << "," << fmt17(cross) << ","
                                            << cell.status;
                                        cell.row = row.str();
                                        if (rep.hypothesis_ok) {
                                            cell.plot.label = fam + ",l=" + std::to_string(l);
                                            cell.plot.x.push_back(p);
                                            cell.plot.y.push_back(rep.ratio);
                                        }
                                        return cell;
                                    });
                                }
                    }
    }
    return ex;
}

Experiment build_reduced(const json& cfg) {
    Experiment ex;
    ex.csv_header = "family,seed,n,p,function,width,error,bound,ratio,status";
    ex.plot_title = "Reduced-space projection error against the width bound";
    ex.plot_x = "degree p";
    ex.plot_y = "error/bound";
    const auto ns = int_list(cfg, "n", 2, 512, json::array({9}));
    const auto ps = int_list(cfg, "p", 1, kMaxDegree);
    const auto fams = string_list(cfg, "families", json::array({"odd_zero", "reduced_odd"}));
    const auto fns = string_list(cfg, "functions", json::array({"sin_2", "exp"}));
    const auto seeds = int_list(cfg, "seeds", 0, 1 << 30, json::array({0}));
    const double amp = number_field(cfg, "amplitude_fraction", 0.4);

    for (const std::string& fam : fams)
        for (int seed : seeds)
            for (int n : ns)
                for (int p : ps) {
                    const ConstraintFamily family = ConstraintFamily::parse(fam);
                    if (family.tag == ConstraintFamily::Tag::ReducedOdd && p % 2 == 0) continue;
                    for (const std::string& fn : fns) {
                        std::ostringstream id;
                        id << fam << ",seed=" << seed << ",n=" << n << ",p=" << p << ",u=" << fn;
                        ex.cells.push_back([=, id = id.str()]() {
                            CellResult cell;
                            cell.id = id;
                            const BreakSequence b = breaks_for(static_cast<std::size_t>(n), amp,
                                                               static_cast<unsigned>(seed));
                            const SplineSpace s = build_subspace(b, p, p - 1, family);
                            check_dim(s.dim());
                            const FunctionSpec u = function_catalog(fn);
                            const BoundReport rep = bound_report(u, s, ProjectorKind::L2, 0, 1, 0);
                            cell.status = !rep.hypothesis_ok ? "skipped(hypothesis)"
                                          : (rep.ratio <= 1.0 + 1e-9) ? "pass" : "fail";
                            std::ostringstream row;
                            row << fam << "," << seed << "," << n << "," << p << "," << fn << ","
                                << fmt17(rep.width) << "," << fmt17(rep.error) << ","
                                << fmt17(rep.bound) << "," << fmt17(rep.ratio) << "," << cell.status;
                            cell.row = row.str();
                            if (rep.hypothesis_ok) {
                                cell.plot.label = fam;
                                cell.plot.x.push_back(p);
                                cell.plot.y.push_back(rep.ratio);
                            }
                            return cell;
                        });
                    }
                }
    return ex;
}

std::vector<std::pair<int, int>> pk_cases(const json& cfg, json fallback) {
    const json v = get_field(cfg, "cases", fallback);
    if (!v.is_array() || v.empty()) throw ConfigError("config field must be a non-empty array: cases");
    std::vector<std::pair<int, int>> out;
    for (const auto& e : v) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ConfigError("config field cases must hold [p, k] pairs");
        const int p = e[0].get<int>(), k = e[1].get<int>();
        if (p < 1 || p > kMaxDegree || k < 0 || k > p - 1)
            throw ConfigError("config field cases: need 1 <= p <= 12 and 0 <= k <= p-1");
        out.emplace_back(p, k);
    }
    return out;
}

Experiment build_outliers(const json& cfg, double threshold) {
    Experiment ex;
    ex.csv_header = "n,p,k,dim,outliers,expected,max_rel_err,status";
    ex.plot_title = "Periodic eigenvalue errors with reduced seam smoothness";
    ex.plot_x = "eigenvalue index fraction j/dim";
    ex.plot_y = "relative error";
    ex.plot_log_y = true;
    const auto ns = int_list(cfg, "n", 2, 512, json::array({50}));
    const auto cases = pk_cases(cfg, json::array({json::array({3, 0}), json::array({6, 0}),
                                                  json::array({3, 1}), json::array({6, 4}),
                                                  json::array({3, 2}), json::array({6, 5})}));
    for (int n : ns)
        for (auto [p, k] : cases) {
            std::ostringstream id;
            id << "n=" << n << ",p=" << p << ",k=" << k;
            ex.cells.push_back([=, id = id.str()]() {
                CellResult cell;
                cell.id = id;
                const BreakSequence b = make_uniform_breaks(static_cast<std::size_t>(n), 0.0, 1.0);
                const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::periodic(k + 1));
                check_dim(s.dim());
                const OutlierReport rep = outlier_report(s, threshold);
                const std::size_t expected = static_cast<std::size_t>(p - k - 1);
                cell.status = (rep.count == expected) ? "pass" : "fail";
                double maxrel = 0.0;
                for (std::size_t j = 1; j < rep.rel_err.size(); ++j)
                    maxrel = std::max(maxrel, rep.rel_err[j]);
                std::ostringstream row;
                row << n << "," << p << "," << k << "," << rep.dim << "," << rep.count << ","
                    << expected << "," << fmt17(maxrel) << "," << cell.status;
                cell.row = row.str();
                cell.info = json{{"id", id}, {"outliers", rep.count}, {"dim", rep.dim}};
                cell.plot.label = "p=" + std::to_string(p) + ",k=" + std::to_string(k);
                for (std::size_t j = 1; j < rep.rel_err.size(); ++j) {
                    cell.plot.x.push_back(static_cast<double>(j) / static_cast<double>(rep.dim));
                    cell.plot.y.push_back(std::max(rep.rel_err[j], 1e-16));
                }
                return cell;
            });
        }
    return ex;
}

Experiment build_branches(const json& cfg) {
    Experiment ex;
    ex.csv_header = "n,p,k,dim,branches,expected,status";
    ex.plot_title = "Spectral branches of the C^k periodic discretization";
    ex.plot_x = "eigenvalue index fraction j/dim";
    ex.plot_y = "relative error";
    ex.plot_log_y = true;
    const auto ns = int_list(cfg, "n", 2, 512, json::array({100}));
    const auto cases = pk_cases(cfg, json::array({json::array({3, 0}), json::array({3, 1}),
                                                  json::array({3, 2}), json::array({4, 0}),
                                                  json::array({4, 1}), json::array({4, 3})}));
    for (int n : ns)
        for (auto [p, k] : cases) {
            std::ostringstream id;
            id << "n=" << n << ",p=" << p << ",k=" << k;
            ex.cells.push_back([=, id = id.str()]() {
                CellResult cell;
                cell.id = id;
                const BreakSequence b = make_uniform_breaks(static_cast<std::size_t>(n), 0.0, 1.0);
                const SplineSpace s = build_subspace(b, p, k, ConstraintFamily::periodic(k + 1));
                check_dim(s.dim());
                const BranchProfile prof = branch_profile(s, static_cast<std::size_t>(n));
                const std::size_t expected = static_cast<std::size_t>(p - k);
                cell.status = (prof.branches == expected) ? "pass" : "fail";
                std::ostringstream row;
                row << n << "," << p << "," << k << "," << prof.dim << "," << prof.branches << ","
                    << expected << "," << cell.status;
                cell.row = row.str();
                cell.info = json{{"id", id}, {"dim", prof.dim}, {"branches", prof.branches}};
                cell.plot.label = "p=" + std::to_string(p) + ",k=" + std::to_string(k);
                for (std::size_t j = 0; j < prof.abscissa.size(); ++j) {
                    cell.plot.x.push_back(prof.abscissa[j]);
                    cell.plot.y.push_back(std::max(prof.rel_err[j], 1e-16));
                }
                return cell;
            });
        }
    return ex;
}

Experiment build_nwidth(const json& cfg, std::size_t fine_nodes) {
    Experiment ex;
    ex.csv_header = "n,r,p,norm,exact,ratio,certificate,grid,status";
    ex.plot_title = "Residual operator norm against the exact n-width";
    ex.plot_x = "degree p";
    ex.plot_y = "norm/width ratio";
    const auto ns = int_list(cfg, "n", 2, 128, json::array({20}));
    const auto rs = int_list(cfg, "r", 1, 6);
    const auto ps = int_list(cfg, "p", 0, kMaxDegree);
    const double tol = number_field(cfg, "ratio_tol", 0.005);

    for (int n : ns)
        for (int r : rs)
            for (int p : ps) {
                if (p < r - 1) continue;
                std::ostringstream id;
                id << "n=" << n << ",r=" << r << ",p=" << p;
                ex.cells.push_back([=, id = id.str()]() {
                    CellResult cell;
                    cell.id = id;
                    const BreakSequence b = make_uniform_breaks(static_cast<std::size_t>(n), 0.0, 1.0);
                    const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::periodic(0));
                    check_dim(s.dim());
                    const OptimalityResult res =
                        optimality_ratio(s, {FunctionClassTag::APer, r}, fine_nodes);
                    const bool even = n % 2 == 0;
                    const bool ok = res.norm.certificate <= 1e-3 &&
                                    (!even || std::abs(res.ratio - 1.0) <= tol);
                    cell.status = ok ? "pass" : "fail";
                    std::ostringstream row;
                    row << n << "," << r << "," << p << "," << fmt17(res.norm.value) << ","
                        << fmt17(res.nwidth) << "," << fmt17(res.ratio) << ","
                        << fmt17(res.norm.certificate) << "," << res.norm.grid_size << ","
                        << cell.status;
                    cell.row = row.str();
                    cell.info = json{{"id", id},
                                     {"E", res.norm.value},
                                     {"d_n", res.nwidth},
                                     {"ratio", res.ratio},
                                     {"M", res.norm.grid_size},
                                     {"certificate", res.norm.certificate}};
                    cell.plot.label = "r=" + std::to_string(r);
                    cell.plot.x.push_back(p);
                    cell.plot.y.push_back(res.ratio);
                    return cell;
                });
            }
    return ex;
}

Experiment build_inverse(const json& cfg) {
    Experiment ex;
    ex.csv_header = "family,seed,n,p,h_min,ratio,bound,slack,status";
    ex.plot_title = "Derivative/value ratio against the inverse-inequality bound";
    ex.plot_x = "degree p";
    ex.plot_y = "bound/ratio slack";
    const auto fams = string_list(cfg, "families",
                                  json::array({"periodic", "boundary0", "boundary1", "boundary2",
                                               "reduced_odd"}));
    const auto ns = int_list(cfg, "n", 2, 512, json::array({8}));
    const auto ps = int_list(cfg, "p", 1, kMaxDegree);
    const auto seeds = int_list(cfg, "seeds", 0, 1 << 30, json::array({0}));
    const double amp = number_field(cfg, "amplitude_fraction", 0.4);

    for (const std::string& fam : fams)
        for (int seed : seeds)
            for (int n : ns)
                for (int p : ps) {
                    const ConstraintFamily family = ConstraintFamily::parse(fam);
                    if (family.tag == ConstraintFamily::Tag::ReducedOdd && p % 2 == 0) continue;
                    std::ostringstream id;
                    id << fam << ",seed=" << seed << ",n=" << n << ",p=" << p;
                    ex.cells.push_back([=, id = id.str()]() {
                        CellResult cell;
                        cell.id = id;
                        const BreakSequence b = breaks_for(static_cast<std::size_t>(n), amp,
                                                           static_cast<unsigned>(seed));
                        const SplineSpace s = build_subspace(b, p, p - 1, family);
                        check_dim(s.dim());
                        const InverseInequalityReport rep = inverse_report(s);
                        cell.status = (rep.ratio <= rep.bound * (1.0 + 1e-12)) ? "pass" : "fail";
                        std::ostringstream row;
                        row << fam << "," << seed << "," << n << "," << p << ","
                            << fmt17(b.h_min()) << "," << fmt17(rep.ratio) << ","
                            << fmt17(rep.bound) << "," << fmt17(rep.slack) << "," << cell.status;
                        cell.row = row.str();
                        cell.plot.label = fam;
                        cell.plot.x.push_back(p);
                        cell.plot.y.push_back(rep.slack);
                        return cell;
                    });
                }
    return ex;
}

Experiment build_eigconv(const json& cfg) {
    Experiment ex;
    ex.csv_header = "kind,i,n,j,p,error,bound,status";
    ex.plot_title = "Eigenfunction projection error decay in the degree";
    ex.plot_x = "degree p";
    ex.plot_y = "error";
    ex.plot_log_y = true;
    const std::string kind = get_field(cfg, "kind", "periodic").get<std::string>();
    if (kind == "periodic") {
        const auto ns = int_list(cfg, "n", 2, 512, json::array({11}));
        const auto ps = int_list(cfg, "p", 1, kMaxDegree);
        const auto js = int_list(cfg, "j", 1, 256, json::array({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
        for (int n : ns)
            for (int j : js) {
                if (j >= n) continue;
                for (int p : ps) {
                    std::ostringstream id;
                    id << "periodic,n=" << n << ",j=" << j << ",p=" << p;
                    ex.cells.push_back([=, id = id.str()]() {
                        CellResult cell;
                        cell.id = id;
                        const int i = (j + 1) / 2;
                        const std::string fn =
                            (j % 2 == 1 ? "sin_" : "cos_") + std::to_string(i);
                        const FunctionSpec u = function_catalog(fn);
                        const BreakSequence b = make_uniform_breaks(static_cast<std::size_t>(n), 0.0, 1.0);
                        const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::periodic(0));
                        check_dim(s.dim());
                        const ProjectionResult proj = ritz_project_recursive(s, u, 1);
                        const double err = error_norm(u, proj, 0);
                        const double bound = std::pow(2.0 * i * b.h(), p + 1);
                        cell.status = (err <= bound) ? "pass" : "fail";
                        std::ostringstream row;
                        row << "periodic,," << n << "," << j << "," << p << "," << fmt17(err) << ","
                            << fmt17(bound) << "," << cell.status;
                        cell.row = row.str();
                        cell.plot.label = "j=" + std::to_string(j);
                        cell.plot.x.push_back(p);
                        cell.plot.y.push_back(std::max(err, 1e-16));
                        return cell;
                    });
                }
            }
        return ex;
    }
    if (kind != "boundary") throw ConfigError("config field kind must be periodic or boundary");
    const auto is = int_list(cfg, "i", 0, 2, json::array({0, 1, 2}));
    const auto ns = int_list(cfg, "n", 1, 64, json::array({3, 5}));
    const auto ps = int_list(cfg, "p", 1, kMaxDegree);
    for (int i : is)
        for (int n : ns) {
            std::ostringstream id;
            id << "boundary,i=" << i << ",n=" << n;
            ex.cells.push_back([=, id = id.str()]() {
                CellResult cell;
                cell.id = id;
                const auto cells = eigconv_report(i, static_cast<std::size_t>(n), ps);
                std::ostringstream rows;
                bool first = true;
                for (const auto& c : cells) {
                    if (!first) rows << "\n";
                    first = false;
                    rows << "boundary," << i << "," << n << "," << c.j << "," << c.p << ","
                         << fmt17(c.error) << ",,exploratory";
                }
                cell.status = "exploratory";
                cell.row = rows.str();
                cell.plot.label = "i=" + std::to_string(i) + ",n=" + std::to_string(n);
                for (const auto& c : cells)
                    if (c.j == static_cast<std::size_t>(n)) {
                        cell.plot.x.push_back(c.p);
                        cell.plot.y.push_back(std::max(c.error, 1e-16));
                    }
                return cell;
            });
        }
    return ex;
}

Experiment build_conjecture(const json& cfg) {
    Experiment ex;
    ex.csv_header = "m,q,p,function,error,status";
    ex.plot_title = "Ritz error of the frequency-m mode over uniform periodic spaces";
    ex.plot_x = "degree p";
    ex.plot_y = "error";
    ex.plot_log_y = true;
    const auto ms = int_list(cfg, "m", 1, 64, json::array({5}));
    const auto ps = int_list(cfg, "p", 1, kMaxDegree);
    const int q = static_cast<int>(number_field(cfg, "q", 1));
    for (int m : ms) {
        std::ostringstream id;
        id << "m=" << m << ",q=" << q;
        ex.cells.push_back([=, id = id.str()]() {
            CellResult cell;
            cell.id = id;
            const auto rows = conjecture_explorer(static_cast<std::size_t>(m), q, ps);
            std::ostringstream out;
            bool first = true;
            for (const auto& r : rows) {
                if (!first) out << "\n";
                first = false;
                out << m << "," << q << "," << r.p << "," << r.function << "," << fmt17(r.error)
                    << ",exploratory";
            }
            cell.status = "exploratory";
            cell.row = out.str();
            cell.plot.label = "m=" + std::to_string(m);
            for (const auto& r : rows) {
                cell.plot.x.push_back(r.p);
                cell.plot.y.push_back(std::max(r.error, 1e-16));
            }
            return cell;
        });
    }
    return ex;
}

// ---- runner ---------------------------------------------------------------

std::vector<CellResult> run_cells(const std::vector<std::function<CellResult()>>& cells,
                                  unsigned threads) {
    std::vector<CellResult> results(cells.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) results[i] = cells[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
    for (unsigned t = 0; t < count; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                results[i] = cells[i]();
            }
        });
    for (auto& t : pool) t.join();
    return results;
}

int run_experiment(const std::string& name, const json& cfg, const std::string& out_override,
                   unsigned threads, double outlier_threshold, std::size_t fine_nodes) {
    Experiment ex;
    if (name == "project") ex = build_project(cfg);
    else if (name == "ritz") ex = build_ritz(cfg);
    else if (name == "reduced") ex = build_reduced(cfg);
    else if (name == "outliers") ex = build_outliers(cfg, outlier_threshold);
    else if (name == "branches") ex = build_branches(cfg);
    else if (name == "nwidth") ex = build_nwidth(cfg, fine_nodes);
    else if (name == "inverse") ex = build_inverse(cfg);
    else if (name == "eigconv") ex = build_eigconv(cfg);
    else if (name == "conjecture") ex = build_conjecture(cfg);
    else throw ConfigError("unknown subcommand: " + name);
    if (ex.cells.empty()) throw ConfigError("empty parameter grid");

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<CellResult> results = run_cells(ex.cells, threads);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string out_dir =
        !out_override.empty() ? out_override : get_field(cfg, "out", "results").get<std::string>();
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path base = std::filesystem::path(out_dir);

    std::ostringstream csv;
    csv << ex.csv_header << "\n";
    for (const auto& r : results) csv << r.row << "\n";
    atomic_write(base / (name + ".csv"), csv.str());

    // one SVG series per distinct label, rows in cell order
    std::vector<cli::Series> series;
    std::map<std::string, std::size_t> index;
    for (const auto& r : results) {
        if (r.plot.x.empty()) continue;
        auto [it, fresh] = index.try_emplace(r.plot.label, series.size());
        if (fresh) series.push_back({r.plot.label, {}, {}});
        auto& s = series[it->second];
        s.x.insert(s.x.end(), r.plot.x.begin(), r.plot.x.end());
        s.y.insert(s.y.end(), r.plot.y.begin(), r.plot.y.end());
    }
    atomic_write(base / (name + ".svg"),
                 cli::render_line_plot(series, ex.plot_title, ex.plot_x, ex.plot_y, ex.plot_log_y));

    std::size_t pass = 0, fail = 0, skipped = 0, exploratory = 0;
    json cell_summaries = json::array();
    for (const auto& r : results) {
        if (r.status == "pass") ++pass;
        else if (r.status == "fail") ++fail;
        else if (r.status == "exploratory") ++exploratory;
        else ++skipped;
        if (!r.info.is_null()) cell_summaries.push_back(r.info);
    }
    json summary{{"subcommand", name},  {"cells", results.size()},     {"pass", pass},
                 {"fail", fail},        {"skipped", skipped},          {"exploratory", exploratory},
                 {"wall_time_s", wall}, {"details", cell_summaries}};
    atomic_write(base / (name + "_summary.json"), summary.dump(2) + "\n");

    json manifest{{"version", kVersion},
                  {"subcommand", name},
                  {"config_hash", std::to_string(fnv1a(cfg.dump()))},
                  {"wall_time_s", wall},
                  {"cells", json::array()}};
    for (const auto& r : results) manifest["cells"].push_back({{"id", r.id}, {"status", r.status}});
    atomic_write(base / "manifest.json", manifest.dump(2) + "\n");

    std::printf("%s: %zu cells, %zu pass, %zu fail, %zu skipped, %zu exploratory (%.1f s)\n",
                name.c_str(), results.size(), pass, fail, skipped, exploratory, wall);
    return fail > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spline approximation experiment driver"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    unsigned threads = 0;
    double outlier_threshold = 1.0;

    const std::vector<std::string> names = {"project", "ritz",    "reduced", "outliers", "branches",
                                            "nwidth",  "inverse", "eigconv", "conjecture"};
    for (const auto& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON experiment configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config)");
        sub->add_option("--threads", threads, "worker threads (default: SPLINEWIDTH_THREADS or 1)");
        sub->add_option("--outlier-threshold", outlier_threshold,
                        "separation threshold for outlier counting");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();

    try {
        if (threads == 0) {
            if (const char* env = std::getenv("SPLINEWIDTH_THREADS")) {
                const long v = std::strtol(env, nullptr, 10);
                if (v < 1) throw ConfigError("SPLINEWIDTH_THREADS must be a positive integer");
                threads = static_cast<unsigned>(v);
            } else {
                threads = 1;
            }
        }
        json cfg;
        {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file: " + config_path);
            try {
                in >> cfg;
            } catch (const json::parse_error& e) {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
        }
        const double m = number_field(cfg, "fine_nodes", 2000);
        if (m < 16 || m > static_cast<double>(kMaxFineNodes))
            throw ConfigError("config field fine_nodes out of range [16, 8000]");
        return run_experiment(name, cfg, out_dir, threads, outlier_threshold,
                              static_cast<std::size_t>(m));
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
