// hh: command-line front end for the hhbounds library.
//
// One subcommand per computation; CSV or JSON on stdout (or --out FILE).
// Exit codes: 0 success, 2 contract/parse error, 1 margin failure in verify.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hh/hh.hpp"

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hh::input_error("cannot open output file '" + path + "'");
    out << content;
}

std::string bound_csv(const hh::BoundReport& r, double x, double y) {
    std::string csv = "case_id,x,y,lhs,rhs_main,error_term,margin,theorem\n";
    csv += "0," + hh::format_double(x) + "," + hh::format_double(y) + "," +
           hh::format_double(r.lhs) + "," + hh::format_double(r.rhs_main) + "," +
           hh::format_double(r.error_term) + "," + hh::format_double(r.margin) + "," +
           r.theorem + "\n";
    return csv;
}

hh::ErrorModel pointwise_error(const hh::ErrorSpec& spec, const hh::RealFunction& f,
                               const hh::ChebyshevSystem& sys) {
    if (spec.kind == "measured") return hh::pointwise_residual_model(f, sys);
    return hh::resolve_error(spec);
}

hh::ErrorModel trace_error(const hh::ErrorSpec& spec, const hh::RealFunction& g) {
    if (spec.kind == "measured") return hh::trace_residual_model(g);
    return hh::resolve_error(spec);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified lower/upper bounds for generalized-convex means"};
    app.require_subcommand(1);

    int exit_code = 0;

    // ---- check-system ------------------------------------------------
    std::string cs_system;
    int cs_grid = 257;
    std::string cs_out;
    auto* cs = app.add_subcommand("check-system",
                                  "Scan a catalog system for the positivity contract");
    cs->add_option("--system", cs_system, "system spec (linear|exp|trig[:delta]|power:a,b)")
        ->required();
    cs->add_option("--grid", cs_grid, "scan grid size");
    cs->add_option("--out", cs_out, "output file (default stdout)");
    cs->callback([&] {
        const hh::ChebyshevSystem sys = hh::resolve_system(hh::parse_system_spec(cs_system));
        const hh::ChebyshevCheck chk = hh::check_chebyshev(sys, cs_grid);
        nlohmann::ordered_json j;
        j["system"] = sys.name;
        j["pass"] = chk.pass;
        j["omega0_positive"] = chk.omega0_positive;
        j["det_positive"] = chk.det_positive;
        j["min_omega0"] = chk.min_omega0;
        j["min_det"] = chk.min_det;
        j["detail"] = chk.detail;
        write_output(cs_out, j.dump(2) + "\n");
    });

    // ---- residual ----------------------------------------------------
    std::string rs_system, rs_f, rs_out;
    double rs_x = 0, rs_u = 0, rs_y = 0;
    bool rs_scan = false;
    int rs_grid = 33;
    auto* rs = app.add_subcommand("residual", "Generalized convexity residual at a triple, "
                                              "or worst residual over a grid scan");
    rs->add_option("--system", rs_system)->required();
    rs->add_option("--f", rs_f, "function spec (poly:c0,c1,...|exp:k|abs:c|sin:k|const:c)")
        ->required();
    auto* rs_xo = rs->add_option("--x", rs_x);
    auto* rs_uo = rs->add_option("--u", rs_u);
    auto* rs_yo = rs->add_option("--y", rs_y);
    rs->add_flag("--scan", rs_scan, "scan the whole domain instead of one triple");
    rs->add_option("--grid", rs_grid, "scan grid size");
    rs->add_option("--out", rs_out);
    rs->callback([&] {
        const hh::ChebyshevSystem sys = hh::resolve_system(hh::parse_system_spec(rs_system));
        const hh::RealFunction f = hh::resolve_function(hh::parse_function_spec(rs_f), sys.domain);
        if (rs_scan) {
            const hh::ConvexityScan scan = hh::is_omega_convex(f, sys, rs_grid);
            nlohmann::ordered_json j;
            j["system"] = sys.name;
            j["function"] = f.name;
            j["convex"] = scan.convex;
            j["worst_residual"] = scan.worst_residual;
            j["x"] = scan.x;
            j["u"] = scan.u;
            j["y"] = scan.y;
            write_output(rs_out, j.dump(2) + "\n");
            return;
        }
        if (!*rs_xo || !*rs_uo || !*rs_yo)
            throw hh::input_error("residual needs --x --u --y (or --scan)");
        const double r = hh::convexity_residual(f, sys, rs_x, rs_u, rs_y);
        std::string csv = "case_id,x,u,y,residual\n";
        csv += "0," + hh::format_double(rs_x) + "," + hh::format_double(rs_u) + "," +
               hh::format_double(rs_y) + "," + hh::format_double(r) + "\n";
        write_output(rs_out, csv);
    });

    // ---- classic-bounds ------------------------------------------------
    std::string cb_system, cb_rho = "const:1", cb_f, cb_out;
    double cb_x = 0, cb_y = 0;
    auto* cb = app.add_subcommand("classic-bounds",
                                  "Two-sided weighted bound for an exactly convex function");
    cb->add_option("--system", cb_system)->required();
    cb->add_option("--rho", cb_rho, "weight function spec (default const:1)");
    cb->add_option("--f", cb_f)->required();
    cb->add_option("--x", cb_x)->required();
    cb->add_option("--y", cb_y)->required();
    cb->add_option("--out", cb_out);
    cb->callback([&] {
        const hh::ChebyshevSystem sys = hh::resolve_system(hh::parse_system_spec(cb_system));
        const hh::RealFunction rho = hh::resolve_function(hh::parse_function_spec(cb_rho), sys.domain);
        const hh::RealFunction f = hh::resolve_function(hh::parse_function_spec(cb_f), sys.domain);
        const hh::ClassicReport r = hh::classic_bounds(f, sys, rho, cb_x, cb_y);
        std::string csv =
            "case_id,x,y,xi,c,c1,c2,lower,integral,upper,lower_margin,upper_margin\n";
        csv += "0," + hh::format_double(cb_x) + "," + hh::format_double(cb_y) + "," +
               hh::format_double(r.xi) + "," + hh::format_double(r.c) + "," +
               hh::format_double(r.c1) + "," + hh::format_double(r.c2) + "," +
               hh::format_double(r.lower) + "," + hh::format_double(r.integral) + "," +
               hh::format_double(r.upper) + "," + hh::format_double(r.lower_margin) + "," +
               hh::format_double(r.upper_margin) + "\n";
        write_output(cb_out, csv);
    });

    // ---- lower-thm3 / upper-thm5 ----------------------------------------
    struct LiftArgs {
        std::string system, rho = "const:1", f, error = "zero", out;
        double x = 0, y = 0;
    };
    static LiftArgs l3, u5;
    auto add_lift = [&](const char* name, const char* desc, LiftArgs& a) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--system", a.system)->required();
        sub->add_option("--rho", a.rho, "weight function spec (default const:1)");
        sub->add_option("--f", a.f)->required();
        sub->add_option("--error", a.error,
                        "error model (zero|const:c|power2:[...]|power3:[...]|"
                        "dyadic:alpha=<fn>,n=<int>|measured)");
        sub->add_option("--x", a.x)->required();
        sub->add_option("--y", a.y)->required();
        sub->add_option("--out", a.out);
        return sub;
    };
    add_lift("lower-thm3", "Certified lower bound through the lifted weighted system", l3)
        ->callback([&] {
            const hh::ChebyshevSystem sys = hh::resolve_system(hh::parse_system_spec(l3.system));
            const hh::RealFunction rho =
                hh::resolve_function(hh::parse_function_spec(l3.rho), sys.domain);
            const hh::RealFunction f =
                hh::resolve_function(hh::parse_function_spec(l3.f), sys.domain);
            const hh::MeanSystem ms = hh::lift_weighted_system(sys, rho);
            const hh::ErrorModel eps = pointwise_error(hh::parse_error_spec(l3.error), f, sys);
            const hh::BoundReport r = hh::lower_bound_thm3(f, ms, sys, eps, l3.x, l3.y);
            write_output(l3.out, bound_csv(r, l3.x, l3.y));
        });
    add_lift("upper-thm5", "Certified upper bound through the lifted weighted system", u5)
        ->callback([&] {
            const hh::ChebyshevSystem sys = hh::resolve_system(hh::parse_system_spec(u5.system));
            const hh::RealFunction rho =
                hh::resolve_function(hh::parse_function_spec(u5.rho), sys.domain);
            const hh::RealFunction f =
                hh::resolve_function(hh::parse_function_spec(u5.f), sys.domain);
            const hh::MeanSystem ms = hh::lift_weighted_system(sys, rho);
            const hh::ErrorModel eps = pointwise_error(hh::parse_error_spec(u5.error), f, sys);
            const hh::BoundReport r = hh::upper_bound_thm5(f, ms, sys, eps, u5.x, u5.y);
            write_output(u5.out, bound_csv(r, u5.x, u5.y));
        });

    // ---- lower-thm4 / upper-thm6 ----------------------------------------
    struct TraceArgs {
        std::string f, measure = "lebesgue", error = "zero", out;
        double s = 1.0;
    };
    static TraceArgs l4, u6;
    auto add_trace = [&](const char* name, const char* desc, TraceArgs& a) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--f", a.f, "function spec on [0,1]")->required();
        sub->add_option("--measure", a.measure,
                        "unit-interval measure (lebesgue|density:<fn>|atoms:[(t,w),...])");
        sub->add_option("--error", a.error, "error model");
        sub->add_option("--s", a.s, "segment length scale (default 1)");
        sub->add_option("--out", a.out);
        return sub;
    };
    add_trace("lower-thm4", "Mean-point lower bound on the unit interval", l4)->callback([&] {
        const hh::RealFunction g =
            hh::resolve_function(hh::parse_function_spec(l4.f), hh::Interval{-0.5, 1.5});
        const hh::UnitMeasure mu = hh::resolve_measure(hh::parse_measure_spec(l4.measure));
        const hh::ErrorModel eta = trace_error(hh::parse_error_spec(l4.error), g);
        const hh::BoundReport r = hh::lower_bound_thm4(g, mu, eta, l4.s);
        write_output(l4.out, bound_csv(r, 0.0, 1.0));
    });
    add_trace("upper-thm6", "Endpoint upper bound on the unit interval", u6)->callback([&] {
        const hh::RealFunction g =
            hh::resolve_function(hh::parse_function_spec(u6.f), hh::Interval{-0.5, 1.5});
        const hh::UnitMeasure mu = hh::resolve_measure(hh::parse_measure_spec(u6.measure));
        const hh::ErrorModel eta = trace_error(hh::parse_error_spec(u6.error), g);
        const hh::BoundReport r = hh::upper_bound_thm6(g, mu, eta, u6.s);
        write_output(u6.out, bound_csv(r, 0.0, 1.0));
    });

    // ---- upper-cor6b -----------------------------------------------------
    std::string c6_f, c6_error, c6_out;
    double c6_s = 1.0;
    auto* c6 = app.add_subcommand("upper-cor6b",
                                  "Midpoint-vs-endpoints bound with a closed-form error");
    c6->add_option("--f", c6_f, "function spec on [0,1]")->required();
    c6->add_option("--error", c6_error, "power3:[(p,q,r,c),...] error measure")->required();
    c6->add_option("--s", c6_s, "segment length scale (default 1)");
    c6->add_option("--out", c6_out);
    c6->callback([&] {
        const hh::RealFunction g =
            hh::resolve_function(hh::parse_function_spec(c6_f), hh::Interval{-0.5, 1.5});
        const hh::ErrorSpec spec = hh::parse_error_spec(c6_error);
        if (spec.kind != "power3")
            throw hh::input_error("upper-cor6b needs a power3 error measure");
        const hh::BoundReport r = hh::upper_bound_cor6b(g, spec.nu3, c6_s);
        write_output(c6_out, bound_csv(r, 0.0, 1.0));
    });

    // ---- phi-table -------------------------------------------------------
    double pt_from = 0.0, pt_to = 1.0, pt_step = 0.01, pt_tol = 1e-6;
    std::string pt_out;
    auto* pt = app.add_subcommand("phi-table", "Tabulate the dyadic error kernel");
    pt->add_option("--from", pt_from);
    pt->add_option("--to", pt_to);
    pt->add_option("--step", pt_step);
    pt->add_option("--tol", pt_tol, "kernel truncation tolerance");
    pt->add_option("--out", pt_out);
    pt->callback([&] {
        if (!(pt_step > 0)) throw hh::input_error("phi-table: step must be > 0");
        if (pt_from < 0 || pt_to > 1 || pt_from > pt_to)
            throw hh::input_error("phi-table: need 0 <= from <= to <= 1");
        std::string csv = "sigma,phi\n";
        const long n = std::lround((pt_to - pt_from) / pt_step);
        for (long i = 0; i <= n; ++i) {
            const double sigma = std::min(pt_from + static_cast<double>(i) * pt_step, pt_to);
            csv += hh::format_double(sigma) + "," +
                   hh::format_double(hh::phi_kernel(sigma, pt_tol)) + "\n";
        }
        write_output(pt_out, csv);
    });

    // ---- verify ----------------------------------------------------------
    std::string vf_config, vf_out;
    std::uint64_t vf_seed = 0;
    int vf_workers = 0;
    double vf_tol = -1.0;
    auto* vf = app.add_subcommand("verify", "Run a batch certification suite from a config file");
    vf->add_option("--config", vf_config, "suite config path")->required();
    auto* vf_seed_opt = vf->add_option("--seed", vf_seed, "override the config seed");
    vf->add_option("--workers", vf_workers, "override the worker count");
    vf->add_option("--tolerance", vf_tol, "override the margin tolerance");
    vf->add_option("--out", vf_out);
    vf->callback([&] {
        hh::SuiteConfig cfg = hh::parse_suite_config(hh::parse_config(vf_config));
        if (*vf_seed_opt) cfg.seed = vf_seed;
        if (vf_workers > 0) cfg.workers = vf_workers;
        if (vf_tol >= 0) cfg.tolerance = vf_tol;
        const hh::SuiteReport rep = hh::run_suite(cfg);
        write_output(vf_out, to_json(rep).dump(2) + "\n");
        std::cerr << "verify: " << rep.cells.size() << " cells, " << rep.failures
                  << " failures (tolerance " << cfg.tolerance << ")\n";
        if (!rep.pass()) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const hh::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
