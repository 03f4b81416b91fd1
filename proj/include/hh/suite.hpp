#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hh/chebyshev.hpp"
#include "hh/classic.hpp"
#include "hh/config.hpp"
#include "hh/errors.hpp"
#include "hh/generate.hpp"
#include "hh/lower.hpp"
#include "hh/mean_system.hpp"
#include "hh/measure.hpp"
#include "hh/residual.hpp"
#include "hh/upper.hpp"

namespace hh {

// ---------------------------------------------------------------------------
// Batch certification suite.  A suite config fixes a system, a weight, an
// error model, and sampling axes (theorems x specimens x pairs); run_suite
// evaluates every cell and aggregates margins.  Cell order and content are
// fully determined by the config and seed, independent of worker count.
// ---------------------------------------------------------------------------

struct SuiteConfig {
    std::string suite_id = "suite";
    std::uint64_t seed = 1;
    double tolerance = 1e-8;
    std::vector<std::string> theorems = {"thm3"};
    SystemSpec system{"linear", {}};
    FunctionSpec rho{"const", {1.0}};
    MeasureSpec measure{.lebesgue = true};
    std::string family = "mixed";
    int specimens = 10;
    int pairs = 50;
    double perturb = 0.0;
    ErrorSpec eps{.kind = "zero"};
    int workers = 1;
    int panels = 0;   // 0 keeps the quadrature default
    int nodes = 0;

    friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

inline const std::vector<std::string>& suite_theorem_tokens() {
    static const std::vector<std::string> tokens = {"classic", "thm3", "thm4",
                                                    "thm5",    "thm6", "cor4c2"};
    return tokens;
}

inline SuiteConfig parse_suite_config(const ConfigDoc& doc) {
    SuiteConfig cfg;
    auto number = [&](const ConfigEntry& e) {
        detail::ValueCursor cur{e.value, e.line, 0};
        const double v = cur.number();
        cur.expect_end();
        return v;
    };
    for (const auto& e : doc.entries) {
        if (e.key == "suite_id") {
            cfg.suite_id = e.value;
        } else if (e.key == "seed") {
            const double v = number(e);
            if (v < 0 || v != static_cast<std::uint64_t>(v))
                detail::fail_at("seed must be a nonnegative integer", e.line, 0);
            cfg.seed = static_cast<std::uint64_t>(v);
        } else if (e.key == "tolerance") {
            cfg.tolerance = number(e);
            if (!(cfg.tolerance >= 0)) detail::fail_at("tolerance must be >= 0", e.line, 0);
        } else if (e.key == "theorems") {
            cfg.theorems.clear();
            std::string item;
            std::istringstream list(e.value);
            while (std::getline(list, item, ',')) {
                const auto b = item.find_first_not_of(" \t");
                const auto t = item.find_last_not_of(" \t");
                if (b == std::string::npos) detail::fail_at("empty theorem token", e.line, 0);
                item = item.substr(b, t - b + 1);
                bool known = false;
                for (const auto& tok : suite_theorem_tokens()) known = known || tok == item;
                if (!known) detail::fail_at("unknown theorem '" + item + "'", e.line, 0);
                cfg.theorems.push_back(item);
            }
            if (cfg.theorems.empty()) detail::fail_at("theorems list is empty", e.line, 0);
        } else if (e.key == "system") {
            cfg.system = parse_system_spec(e.value, e.line);
        } else if (e.key == "rho") {
            cfg.rho = parse_function_spec(e.value, e.line);
        } else if (e.key == "measure") {
            cfg.measure = parse_measure_spec(e.value, e.line);
        } else if (e.key == "family") {
            convex_family_from_string(e.value);  // validates
            cfg.family = e.value;
        } else if (e.key == "specimens") {
            cfg.specimens = static_cast<int>(number(e));
            if (cfg.specimens < 1) detail::fail_at("specimens must be >= 1", e.line, 0);
        } else if (e.key == "pairs") {
            cfg.pairs = static_cast<int>(number(e));
            if (cfg.pairs < 1) detail::fail_at("pairs must be >= 1", e.line, 0);
        } else if (e.key == "perturb") {
            cfg.perturb = number(e);
            if (!(cfg.perturb >= 0)) detail::fail_at("perturb must be >= 0", e.line, 0);
        } else if (e.key == "error") {
            cfg.eps = parse_error_spec(e.value, e.line);
        } else if (e.key == "workers") {
            cfg.workers = static_cast<int>(number(e));
            if (cfg.workers < 1) detail::fail_at("workers must be >= 1", e.line, 0);
        } else if (e.key == "panels") {
            cfg.panels = static_cast<int>(number(e));
        } else if (e.key == "nodes") {
            cfg.nodes = static_cast<int>(number(e));
        } else {
            detail::fail_at("unknown config key '" + e.key + "'", e.line, 0);
        }
    }
    return cfg;
}

inline std::string serialize_suite_config(const SuiteConfig& cfg) {
    std::string out;
    out += "suite_id = " + cfg.suite_id + "\n";
    out += "seed = " + std::to_string(cfg.seed) + "\n";
    out += "tolerance = " + format_double(cfg.tolerance) + "\n";
    out += "theorems = ";
    for (std::size_t i = 0; i < cfg.theorems.size(); ++i)
        out += (i ? "," : "") + cfg.theorems[i];
    out += "\n";
    out += "system = " + serialize(cfg.system) + "\n";
    out += "rho = " + serialize(cfg.rho) + "\n";
    out += "measure = " + serialize(cfg.measure) + "\n";
    out += "family = " + cfg.family + "\n";
    out += "specimens = " + std::to_string(cfg.specimens) + "\n";
    out += "pairs = " + std::to_string(cfg.pairs) + "\n";
    out += "perturb = " + format_double(cfg.perturb) + "\n";
    out += "error = " + serialize(cfg.eps) + "\n";
    out += "workers = " + std::to_string(cfg.workers) + "\n";
    if (cfg.panels > 0) out += "panels = " + std::to_string(cfg.panels) + "\n";
    if (cfg.nodes > 0) out += "nodes = " + std::to_string(cfg.nodes) + "\n";
    return out;
}

struct SuiteCell {
    std::string theorem;
    std::string system;
    std::string function;
    double x = 0.0;
    double y = 0.0;
    double lhs = 0.0;
    double rhs_main = 0.0;
    double error_term = 0.0;
    double margin = 0.0;
};

struct TheoremSummary {
    long count = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    long failures = 0;
};

struct SuiteReport {
    std::string suite_id;
    std::uint64_t seed = 0;
    std::string rng;
    double tolerance = 0.0;
    std::vector<SuiteCell> cells;
    std::map<std::string, TheoremSummary> per_theorem;
    long failures = 0;

    [[nodiscard]] bool pass() const { return failures == 0; }
};

inline nlohmann::ordered_json to_json(const SuiteReport& rep) {
    nlohmann::ordered_json j;
    j["suite_id"] = rep.suite_id;
    j["seed"] = rep.seed;
    j["rng"] = rep.rng;
    j["tolerance"] = rep.tolerance;
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.cells) {
        nlohmann::ordered_json jc;
        jc["theorem"] = c.theorem;
        jc["system"] = c.system;
        jc["function"] = c.function;
        jc["x"] = c.x;
        jc["y"] = c.y;
        jc["lhs"] = c.lhs;
        jc["rhs_main"] = c.rhs_main;
        jc["error_term"] = c.error_term;
        jc["margin"] = c.margin;
        j["cells"].push_back(std::move(jc));
    }
    j["summary"]["per_theorem"] = nlohmann::ordered_json::object();
    for (const auto& [name, s] : rep.per_theorem) {
        nlohmann::ordered_json js;
        js["count"] = s.count;
        js["worst_margin"] = s.worst_margin;
        js["failures"] = s.failures;
        j["summary"]["per_theorem"][name] = std::move(js);
    }
    j["summary"]["failures"] = rep.failures;
    return j;
}

namespace detail {

struct SuiteSpecimen {
    RealFunction f;
    ErrorModel eps_pointwise;           // for thm3 / thm5 cells
    std::vector<std::pair<double, double>> pairs;
    std::vector<PowerAtom2> identity_atoms;  // one per pair, for cor4c2 cells
};

struct CellJob {
    std::string theorem;
    int specimen = 0;
    int pair = 0;
};

} // namespace detail

inline SuiteReport run_suite(const SuiteConfig& cfg) {
    ChebyshevSystem sys = resolve_system(cfg.system);
    RealFunction rho = resolve_function(cfg.rho, sys.domain);
    UnitMeasure mu = resolve_measure(cfg.measure);

    QuadratureConfig quad = default_quadrature();
    if (cfg.panels > 0) quad.panels = cfg.panels;
    if (cfg.nodes > 0) quad.nodes_per_panel = cfg.nodes;
    quad.validate();

    bool want_pointwise = false;  // thm3 / thm5 share one pointwise model
    bool want_trace = false;      // thm4 / thm6 work on segment traces
    bool want_lift = false;
    for (const auto& t : cfg.theorems) {
        want_pointwise = want_pointwise || t == "thm3" || t == "thm5";
        want_trace = want_trace || t == "thm4" || t == "thm6";
        want_lift = want_lift || t == "thm3" || t == "thm5";
    }

    MeanSystem lifted;
    if (want_lift) lifted = lift_weighted_system(sys, rho, quad);

    const bool eps_measured = cfg.eps.kind == "measured";
    ErrorModel shared_eps = eps_measured ? ErrorModel::zero() : resolve_error(cfg.eps);

    // Deterministic preparation: one master stream drives specimen seeds,
    // pair draws, and identity atoms in a fixed order.
    std::mt19937_64 master(cfg.seed);
    auto draw01 = [&master]() { return detail::uniform01(master); };

    const ConvexFamily family = convex_family_from_string(cfg.family);
    const Interval box = sys.domain.inset(1e-3);
    const double min_gap = 0.05 * box.width();

    std::vector<detail::SuiteSpecimen> specimens;
    specimens.reserve(static_cast<std::size_t>(cfg.specimens));
    for (int i = 0; i < cfg.specimens; ++i) {
        detail::SuiteSpecimen sp;
        const std::uint64_t gen_seed = master();
        const std::uint64_t osc_seed = master();
        sp.f = gen_omega_convex(sys, family, gen_seed);
        if (cfg.perturb > 0) sp.f = gen_perturbed(sp.f, cfg.perturb, osc_seed);
        sp.pairs.reserve(static_cast<std::size_t>(cfg.pairs));
        for (int p = 0; p < cfg.pairs; ++p) {
            double x = 0.0;
            double y = 0.0;
            for (int attempt = 0; attempt < 200; ++attempt) {
                const double a = box.lo + box.width() * draw01();
                const double b = box.lo + box.width() * draw01();
                x = std::min(a, b);
                y = std::max(a, b);
                if (y - x >= min_gap) break;
            }
            if (y - x < min_gap) throw internal_error("run_suite: could not draw a usable pair");
            sp.pairs.emplace_back(x, y);
            PowerAtom2 atom;
            atom.p = static_cast<double>(master() % 7);
            atom.q = static_cast<double>(master() % 7);
            atom.c = 0.1 + 1.9 * draw01();
            sp.identity_atoms.push_back(atom);
        }
        if (eps_measured && want_pointwise) sp.eps_pointwise = pointwise_residual_model(sp.f, sys);
        else sp.eps_pointwise = shared_eps;
        specimens.push_back(std::move(sp));
    }

    // Theorem-major cell order; totals = theorems x specimens x pairs.
    std::vector<detail::CellJob> jobs;
    jobs.reserve(cfg.theorems.size() * specimens.size() * static_cast<std::size_t>(cfg.pairs));
    for (const auto& thm : cfg.theorems)
        for (int s = 0; s < cfg.specimens; ++s)
            for (int p = 0; p < cfg.pairs; ++p) jobs.push_back({thm, s, p});

    std::vector<SuiteCell> cells(jobs.size());

    auto compute = [&](const detail::CellJob& job) {
        const detail::SuiteSpecimen& sp = specimens[static_cast<std::size_t>(job.specimen)];
        const auto [x, y] = sp.pairs[static_cast<std::size_t>(job.pair)];
        SuiteCell cell;
        cell.theorem = job.theorem;
        cell.system = sys.name;
        cell.function = sp.f.name;
        cell.x = x;
        cell.y = y;
        if (job.theorem == "classic") {
            const ClassicReport r = classic_bounds(sp.f, sys, rho, x, y, quad);
            // Report the binding side so margin = rhs_main + error_term - lhs
            // still holds for the cell.
            if (r.lower_margin <= r.upper_margin) {
                cell.lhs = r.lower;
                cell.rhs_main = r.integral;
                cell.margin = r.lower_margin;
            } else {
                cell.lhs = r.integral;
                cell.rhs_main = r.upper;
                cell.margin = r.upper_margin;
            }
            cell.error_term = 0.0;
        } else if (job.theorem == "thm3") {
            const BoundReport r = lower_bound_thm3(sp.f, lifted, sys, sp.eps_pointwise, x, y, quad);
            cell.lhs = r.lhs;
            cell.rhs_main = r.rhs_main;
            cell.error_term = r.error_term;
            cell.margin = r.margin;
        } else if (job.theorem == "thm5") {
            const BoundReport r = upper_bound_thm5(sp.f, lifted, sys, sp.eps_pointwise, x, y, quad);
            cell.lhs = r.lhs;
            cell.rhs_main = r.rhs_main;
            cell.error_term = r.error_term;
            cell.margin = r.margin;
        } else if (job.theorem == "thm4" || job.theorem == "thm6") {
            const RealFunction g = segment_trace(sp.f, x, y);
            const double s = y - x;
            const ErrorModel eta = eps_measured ? trace_residual_model(g) : shared_eps;
            const BoundReport r = job.theorem == "thm4" ? lower_bound_thm4(g, mu, eta, s, quad)
                                                        : upper_bound_thm6(g, mu, eta, s, quad);
            cell.lhs = r.lhs;
            cell.rhs_main = r.rhs_main;
            cell.error_term = r.error_term;
            cell.margin = r.margin;
        } else if (job.theorem == "cor4c2") {
            // Closed-form identity check: record the discrepancy as a
            // negative margin so the usual threshold applies.
            const PowerAtom2 atom = sp.identity_atoms[static_cast<std::size_t>(job.pair)];
            PowerMeasure2 nu{{atom}};
            const double s = y - x;
            const double closed = cor4c2_error(nu, s);
            const double integral = 8.0 * j_functional(nu, lebesgue_measure(), s, quad);
            const double gap = std::fabs(closed - integral) / std::max(1.0, std::fabs(closed));
            cell.lhs = gap;
            cell.rhs_main = 0.0;
            cell.error_term = 0.0;
            cell.margin = -gap;
        } else {
            throw internal_error("run_suite: unhandled theorem '" + job.theorem + "'");
        }
        return cell;
    };

    const int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) cells[i] = compute(jobs[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                try {
                    cells[i] = compute(jobs[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    SuiteReport rep;
    rep.suite_id = cfg.suite_id;
    rep.seed = cfg.seed;
    rep.rng = kRngAlgorithm;
    rep.tolerance = cfg.tolerance;
    rep.cells = std::move(cells);
    for (const auto& c : rep.cells) {
        TheoremSummary& s = rep.per_theorem[c.theorem];
        ++s.count;
        s.worst_margin = std::min(s.worst_margin, c.margin);
        if (c.margin < -cfg.tolerance) {
            ++s.failures;
            ++rep.failures;
        }
    }
    return rep;
}

} // namespace hh
