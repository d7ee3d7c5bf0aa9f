#include "acalc/calculus.hpp"
#include "acalc/io.hpp"
#include "acalc/power_series.hpp"
#include "acalc/series.hpp"
#include "acalc/transcendental.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using acalc::Algebra;
using acalc::Element;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInconclusive = 3;

struct CommonOpts {
    std::string preset_name;
    std::string algebra_file;
    double tol = 1e-10;
    std::uint64_t seed = 20240101;
    std::string out;
    std::string format = "json";
    std::int64_t max_terms = 4000;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--preset", o.preset_name,
                    "preset name (complex, hyperbolic, dual, H_N:n, C_N:n, "
                    "Gamma_N:n, direct_product:n)");
    cmd->add_option("--algebra", o.algebra_file, "algebra definition JSON file");
    cmd->add_option("--tol", o.tol, "evaluation tolerance");
    cmd->add_option("--seed", o.seed, "seed for random sampling");
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "output format: csv|json");
    cmd->add_option("--max-terms", o.max_terms, "truncation cap per series");
    cmd->add_flag("--strict", o.strict, "exit 3 on inconclusive verdicts");
}

void require_format(const CommonOpts& o, const std::string& expected) {
    if (o.format != "csv" && o.format != "json")
        throw acalc::AlgebraError("format must be csv or json");
    if (o.format != expected)
        throw acalc::AlgebraError("this command emits " + expected + " output");
}

Algebra resolve_algebra(const CommonOpts& o) {
    if (!o.preset_name.empty() && !o.algebra_file.empty())
        throw acalc::AlgebraError("give either --preset or --algebra, not both");
    if (!o.preset_name.empty()) return acalc::preset(o.preset_name);
    if (!o.algebra_file.empty()) return acalc::load_algebra_json(o.algebra_file);
    throw acalc::AlgebraError("an algebra is required (--preset or --algebra)");
}

std::int64_t effective_max_terms(const CommonOpts& o) {
    std::int64_t cap = o.max_terms;
    if (const char* env = std::getenv("ACALC_MAX_TERMS")) {
        try {
            const std::int64_t limit = std::stoll(env);
            if (limit >= 1) cap = std::min(cap, limit);
        } catch (const std::exception&) {
            throw acalc::AlgebraError("ACALC_MAX_TERMS is not an integer");
        }
    }
    return cap;
}

Element parse_point(const std::string& text, const Algebra& a) {
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ','))
        coords.push_back(acalc::eval_coeff_expr(part, 0));
    if (coords.size() == 1 && a->dim() > 1) return a->scalar(coords[0]);
    if (static_cast<int>(coords.size()) != a->dim())
        throw acalc::AlgebraError("point needs " + std::to_string(a->dim()) +
                                  " coordinates");
    Eigen::VectorXd v(a->dim());
    for (int i = 0; i < a->dim(); ++i) v[i] = coords[static_cast<std::size_t>(i)];
    return a->element(std::move(v));
}

acalc::Slice parse_slice(const std::string& text, const Algebra& a) {
    std::optional<Element> u, v, origin;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw acalc::AlgebraError("slice items look like u=...;v=...;origin=...");
        const std::string key = item.substr(0, eq);
        const Element val = parse_point(item.substr(eq + 1), a);
        if (key == "u") u = val;
        else if (key == "v") v = val;
        else if (key == "origin") origin = val;
        else throw acalc::AlgebraError("unknown slice item '" + key + "'");
    }
    if (!u || !v) throw acalc::AlgebraError("slice needs u= and v= axes");
    return {origin ? *origin : a->zero(), *u, *v};
}

acalc::GridSpec parse_grid(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) vals.push_back(std::stod(part));
    if (vals.size() != 6)
        throw acalc::AlgebraError("grid is umin,umax,vmin,vmax,nu,nv");
    acalc::GridSpec g{vals[0], vals[1], vals[2], vals[3],
                      static_cast<int>(vals[4]), static_cast<int>(vals[5])};
    if (g.nu < 1 || g.nv < 1) throw acalc::AlgebraError("grid sizes must be >= 1");
    return g;
}

std::vector<acalc::Curve> parse_shape(const std::string& text, const Algebra& a) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw acalc::AlgebraError("shape looks like segment:...|circle:...|polygon:...");
    const std::string kind = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);

    if (kind == "segment") {
        const auto semi = body.find(';');
        if (semi == std::string::npos)
            throw acalc::AlgebraError("segment:FROM;TO with comma-separated coords");
        return {acalc::segment(parse_point(body.substr(0, semi), a),
                               parse_point(body.substr(semi + 1), a))};
    }
    if (kind == "polygon") {
        std::vector<Element> vertices;
        std::stringstream ss(body);
        std::string part;
        while (std::getline(ss, part, ';'))
            if (!part.empty()) vertices.push_back(parse_point(part, a));
        return acalc::polygon(vertices);
    }
    if (kind == "circle") {
        Element center = a->zero();
        double radius = 1.0;
        int p1 = 0, p2 = 1;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ';')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw acalc::AlgebraError("circle:center=..;radius=..;plane=i,j");
            const std::string key = item.substr(0, eq);
            const std::string val = item.substr(eq + 1);
            if (key == "center") center = parse_point(val, a);
            else if (key == "radius") radius = std::stod(val);
            else if (key == "plane") {
                const auto comma = val.find(',');
                if (comma == std::string::npos)
                    throw acalc::AlgebraError("plane takes two 1-based basis indices");
                p1 = std::stoi(val.substr(0, comma)) - 1;
                p2 = std::stoi(val.substr(comma + 1)) - 1;
            } else {
                throw acalc::AlgebraError("unknown circle item '" + key + "'");
            }
        }
        if (p1 < 0 || p2 < 0 || p1 >= a->dim() || p2 >= a->dim() || p1 == p2)
            throw acalc::AlgebraError("bad circle plane");
        return {acalc::circle(center, radius, a->basis_vector(p1), a->basis_vector(p2))};
    }
    throw acalc::AlgebraError("unknown shape '" + kind + "'");
}

acalc::AFunction named_function(const std::string& name, const Algebra& a) {
    if (name == "exp")
        return {a, [](const Element& z) { return acalc::exp(z, 1e-14); }};
    if (name == "cos")
        return {a, [](const Element& z) { return acalc::cos(z, 1e-14); }};
    if (name == "sin")
        return {a, [](const Element& z) { return acalc::sin(z, 1e-14); }};
    if (name == "cosh")
        return {a, [](const Element& z) { return acalc::cosh(z, 1e-14); }};
    if (name == "sinh")
        return {a, [](const Element& z) { return acalc::sinh(z, 1e-14); }};
    if (name == "identity") return {a, [](const Element& z) { return z; }};
    if (name == "conj")
        return {a, [](const Element& z) {
                    Eigen::VectorXd v = z.coords();
                    for (int i = 1; i < z.dim(); ++i) v[i] = -v[i];
                    return z.algebra()->element(std::move(v));
                }};
    throw acalc::AlgebraError("unknown function '" + name + "'");
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(o.out);
    if (!out) throw acalc::AlgebraError("cannot open output file: " + o.out);
    out << text;
}

json radius_json(const acalc::RadiusReport& r) {
    json j;
    j["alpha_root"] = r.alpha_root;
    j["alpha_ratio"] = r.alpha_ratio;
    j["R_root"] = std::isinf(r.R_root) ? json("inf") : json(r.R_root);
    if (r.R_ratio_unit)
        j["R_ratio_unit"] = std::isinf(*r.R_ratio_unit) ? json("inf") : json(*r.R_ratio_unit);
    if (r.R_ratio_real)
        j["R_ratio_real"] = std::isinf(*r.R_ratio_real) ? json("inf") : json(*r.R_ratio_real);
    j["m_used"] = r.m_used;
    j["probe"] = r.probe;
    j["unit_coeffs"] = r.unit_coeffs;
    j["real_coeffs"] = r.real_coeffs;
    j["entire"] = r.entire;
    return j;
}

json sum_json(const acalc::SumResult& r) {
    json j;
    j["status"] = acalc::to_string(r.status);
    j["value"] = std::vector<double>(r.value.coords().data(),
                                     r.value.coords().data() + r.value.dim());
    j["terms_used"] = r.terms_used;
    j["tail_estimate"] = r.tail_estimate;
    return j;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_check(const CommonOpts& o, std::int64_t census_samples) {
    require_format(o, "json");
    json report;
    report["schema"] = 1;
    Algebra a;
    try {
        a = resolve_algebra(o);
    } catch (const acalc::AssociativityViolation& e) {
        report["valid"] = false;
        report["axiom"] = "associativity";
        report["error"] = e.what();
        report["max_residual"] = e.max_residual;
        emit(o, report.dump(2));
        return kExitInput;
    } catch (const acalc::UnityViolation& e) {
        report["valid"] = false;
        report["axiom"] = "unity";
        report["error"] = e.what();
        emit(o, report.dump(2));
        return kExitInput;
    }

    report["valid"] = true;
    report["dim"] = a->dim();
    report["commutative"] = a->commutative();
    if (!a->basis_labels().empty()) report["labels"] = a->basis_labels();
    report["m_theoretical"] = a->m_theoretical();
    report["m_empirical"] = a->m_empirical();

    acalc::Rng rng(o.seed);
    std::int64_t units = 0, zds = 0, zeros = 0;
    for (std::int64_t i = 0; i < census_samples; ++i) {
        switch (acalc::classify(rng.element(a, -2.0, 2.0))) {
            case acalc::ElementKind::Unit: ++units; break;
            case acalc::ElementKind::ZeroDivisor: ++zds; break;
            case acalc::ElementKind::Zero: ++zeros; break;
        }
    }
    report["zero_divisor_census"] = {
        {"samples", census_samples}, {"units", units},
        {"zero_divisors", zds}, {"zeros", zeros}, {"seed", o.seed}};
    emit(o, report.dump(2));
    return kExitOk;
}

int cmd_series(const CommonOpts& o, const std::string& coeffs,
               const std::string& point, const std::string& center,
               std::int64_t probe) {
    require_format(o, "json");
    const Algebra a = resolve_algebra(o);
    acalc::PowerSeries p = acalc::parse_coefficients(coeffs, a);
    if (!center.empty()) p = p.shifted(parse_point(center, a));

    json report;
    report["schema"] = 1;
    report["algebra_dim"] = a->dim();
    report["radii"] = radius_json(acalc::estimate_radii(p, probe));

    bool inconclusive = false;
    if (!point.empty()) {
        acalc::EvalOptions opts;
        opts.tol = o.tol;
        opts.max_terms = effective_max_terms(o);
        const acalc::SumResult r = acalc::eval(p, parse_point(point, a), opts);
        report["eval"] = sum_json(r);
        inconclusive = r.status == acalc::SumStatus::Inconclusive;
    }
    emit(o, report.dump(2));
    return (o.strict && inconclusive) ? kExitInconclusive : kExitOk;
}

int cmd_region(const CommonOpts& o, const std::string& coeffs,
               const std::string& slice_text, const std::string& grid_text,
               const std::string& center) {
    require_format(o, "csv");
    const Algebra a = resolve_algebra(o);
    acalc::PowerSeries p = acalc::parse_coefficients(coeffs, a);
    if (!center.empty()) p = p.shifted(parse_point(center, a));
    const acalc::Slice slice = parse_slice(slice_text, a);
    const acalc::GridSpec grid = parse_grid(grid_text);

    acalc::EvalOptions opts;
    opts.tol = o.tol;
    opts.max_terms = effective_max_terms(o);
    const acalc::RegionScan scan = acalc::region_scan(p, slice, grid, opts);

    std::ostringstream csv;
    acalc::write_region_csv(csv, scan);
    std::ostringstream summary;
    summary << "converged=" << scan.count(acalc::SumStatus::Converged)
            << " diverged=" << scan.count(acalc::SumStatus::Diverged)
            << " inconclusive=" << scan.count(acalc::SumStatus::Inconclusive)
            << " cells=" << (static_cast<std::int64_t>(grid.nu) * grid.nv);
    if (o.out.empty()) {
        std::cout << csv.str();
        std::cerr << summary.str() << "\n";
    } else {
        emit(o, csv.str());
        std::cout << summary.str() << "\n";
    }
    const bool any_inconclusive = scan.count(acalc::SumStatus::Inconclusive) > 0;
    return (o.strict && any_inconclusive) ? kExitInconclusive : kExitOk;
}

int cmd_identities(const CommonOpts& o, int trials, double tol,
                   const std::string& table_out) {
    require_format(o, "json");
    const Algebra a = resolve_algebra(o);
    json report;
    report["schema"] = 1;
    const acalc::IdentityReport rep = acalc::identity_suite(a, trials, tol, o.seed);
    json ids = json::array();
    for (const auto& id : rep.identities)
        ids.push_back({{"identity", id.name}, {"max_residual", id.max_residual}});
    report["identities"] = ids;
    report["trials"] = rep.trials;
    report["seed"] = rep.seed;
    report["tol"] = tol;

    bool pass = rep.pass;
    if (const auto gen = acalc::detect_generated(a)) {
        acalc::Rng rng(o.seed + 1);
        double worst = 0.0;
        const int pytrials = std::min(trials, 50);
        for (int t = 0; t < pytrials; ++t) {
            const Element z = rng.element(a, -1.0, 1.0);
            const acalc::PythagoreanEvaluation pe = acalc::pythagorean(*gen, z);
            worst = std::max(worst, (pe.value - a->unity()).norm());
        }
        report["pythagorean"] = {{"N", a->dim()},
                                 {"c", gen->power_value},
                                 {"max_residual", worst},
                                 {"trials", pytrials}};
        if (!(worst < tol)) pass = false;

        std::vector<double> grid;
        for (int i = 0; i <= 16; ++i) grid.push_back(-2.0 + 0.25 * i);
        const acalc::SpecialFunctionTable table = acalc::special_functions(*gen, grid);
        report["special_functions"] = {
            {"reconstruction_residual", table.reconstruction_residual}};
        if (!(table.reconstruction_residual < 1e-8)) pass = false;
        if (!table_out.empty()) {
            std::ofstream tf(table_out);
            if (!tf) throw acalc::AlgebraError("cannot open table file: " + table_out);
            acalc::write_table_csv(tf, table.grid, table.samples);
        }
    }
    report["pass"] = pass;
    emit(o, report.dump(2));
    return pass ? kExitOk : kExitInput;
}

int cmd_integrate(const CommonOpts& o, const std::string& fname,
                  const std::string& shape) {
    require_format(o, "json");
    const Algebra a = resolve_algebra(o);
    const acalc::AFunction f = named_function(fname, a);
    const Element got = acalc::curve_integral(f, parse_shape(shape, a));
    json report;
    report["schema"] = 1;
    report["function"] = fname;
    report["value"] = std::vector<double>(got.coords().data(),
                                          got.coords().data() + got.dim());
    report["norm"] = got.norm();
    emit(o, report.dump(2));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical calculus over finite-dimensional real algebras"};
    app.require_subcommand(1);

    CommonOpts check_opts, series_opts, region_opts, id_opts;
    std::int64_t census_samples = 2000;
    std::string coeffs, point, center, slice_text, grid_text;
    std::string rcoeffs, rcenter;
    std::int64_t probe = 200;
    int trials = 100;
    double id_tol = 1e-8;

    CLI::App* check = app.add_subcommand("check", "validate an algebra and report norm constants");
    add_common(check, check_opts);
    check->add_option("--census-samples", census_samples, "classification census size");

    CLI::App* series = app.add_subcommand("series", "radius estimates and pointwise evaluation");
    add_common(series, series_opts);
    series->add_option("--coeffs", coeffs, "coefficient spec (real:|element:|builtin:)")
        ->required();
    series->add_option("--point", point, "evaluation point, comma-separated coords");
    series->add_option("--center", center, "series center, comma-separated coords");
    series->add_option("--probe", probe, "coefficients probed for radius estimates");

    CLI::App* region = app.add_subcommand("region", "convergence-region scan over a 2-D slice");
    region_opts.format = "csv";
    add_common(region, region_opts);
    region->add_option("--coeffs", rcoeffs, "coefficient spec")->required();
    region->add_option("--slice", slice_text, "u=coords;v=coords[;origin=coords]")->required();
    region->add_option("--grid", grid_text, "umin,umax,vmin,vmax,nu,nv")->required();
    region->add_option("--center", rcenter, "series center");

    CLI::App* integrate = app.add_subcommand("integrate", "curve integral of a named function");
    CommonOpts int_opts;
    std::string int_f = "exp", int_shape;
    add_common(integrate, int_opts);
    integrate->add_option("--f", int_f, "exp|cos|sin|cosh|sinh|identity|conj");
    integrate->add_option("--shape", int_shape,
                          "segment:FROM;TO | circle:center=..;radius=..;plane=i,j | "
                          "polygon:P1;P2;...")
        ->required();

    CLI::App* identities = app.add_subcommand("identities", "identity residual sweep");
    add_common(identities, id_opts);
    identities->add_option("--trials", trials, "random points per identity");
    identities->add_option("--id-tol", id_tol, "pass threshold for identity residuals");
    std::string table_out;
    identities->add_option("--table-out", table_out,
                           "write the special-function sample table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (check->parsed()) return cmd_check(check_opts, census_samples);
        if (series->parsed())
            return cmd_series(series_opts, coeffs, point, center, probe);
        if (region->parsed())
            return cmd_region(region_opts, rcoeffs, slice_text, grid_text, rcenter);
        if (integrate->parsed()) return cmd_integrate(int_opts, int_f, int_shape);
        if (identities->parsed())
            return cmd_identities(id_opts, trials, id_tol, table_out);
    } catch (const acalc::NotCommutative& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
