// SPDX-License-Identifier: MIT
// opdiam: numerical range boundaries, diameter seminorms of matrix maps, and
// the desk-scale reproduction suite, behind one static binary.
//
// Exit codes: 0 success, 2 parse/validation failure, 3 dimension cap hit.
// Output is byte-stable for a fixed seed and config.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "opdiam/diamnorm.hpp"
#include "opdiam/errors.hpp"
#include "opdiam/json_io.hpp"
#include "opdiam/numrange.hpp"
#include "opdiam/replicate.hpp"
#include "opdiam/superop.hpp"

namespace {

using nlohmann::json;
using namespace opdiam;

struct CliConfig {
    std::uint64_t seed = 7;
    std::size_t grid = 256;
    std::size_t restarts = 32;
    std::size_t iters = 400;
    double tol = 1e-8;
    std::size_t max_dim = 64;
    std::string format = "json";
    std::string out;
};

Budget make_budget(const CliConfig& cfg) {
    Budget b;
    b.seed = cfg.seed;
    b.grid = cfg.grid;
    b.coarse_grid = std::max<std::size_t>(32, cfg.grid / 4);
    b.restarts = cfg.restarts;
    b.iters = cfg.iters;
    b.tol = cfg.tol;
    b.max_dim = cfg.max_dim;
    return b;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string q = "\"";
    for (const char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    q += "\"";
    return q;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

json matrix_json(const ComplexMatrix& m) {
    if (m.empty()) return json();
    return json::parse(matrix_to_json_text(m));
}

void emit(const CliConfig& cfg, const std::string& payload) {
    if (cfg.out.empty()) {
        std::cout << payload;
        return;
    }
    write_text_file(cfg.out, payload);
}

std::string run_range(const CliConfig& cfg, const std::string& path) {
    const ComplexMatrix e = read_matrix_file(path);
    const RangeSample s = range_sample(e, cfg.grid);
    if (cfg.format == "json") {
        json out;
        out["grid"] = s.thetas.size();
        out["thetas"] = s.thetas;
        out["support"] = s.support;
        json re = json::array();
        json im = json::array();
        for (const cplx b : s.boundary) {
            re.push_back(b.real());
            im.push_back(b.imag());
        }
        out["boundary_re"] = re;
        out["boundary_im"] = im;
        return out.dump(2) + "\n";
    }
    std::string text;
    if (cfg.format == "md") {
        text += "| theta | support | boundary_re | boundary_im |\n";
        text += "| --- | --- | --- | --- |\n";
        for (std::size_t i = 0; i < s.thetas.size(); ++i)
            text += "| " + fmt_double(s.thetas[i]) + " | " + fmt_double(s.support[i]) + " | " +
                    fmt_double(s.boundary[i].real()) + " | " + fmt_double(s.boundary[i].imag()) +
                    " |\n";
    } else {
        text += "theta,support,boundary_re,boundary_im\n";
        for (std::size_t i = 0; i < s.thetas.size(); ++i)
            text += fmt_double(s.thetas[i]) + "," + fmt_double(s.support[i]) + "," +
                    fmt_double(s.boundary[i].real()) + "," + fmt_double(s.boundary[i].imag()) +
                    "\n";
    }
    return text;
}

std::string run_diam(const CliConfig& cfg, const std::string& path) {
    const ComplexMatrix e = read_matrix_file(path);
    const DiameterResult d = numerical_diameter(e, cfg.grid);
    json out;
    out["value"] = d.value;
    out["theta_star"] = d.theta_star;
    out["rayleigh_v"] = {{"re", d.rayleigh_v.real()}, {"im", d.rayleigh_v.imag()}};
    out["rayleigh_w"] = {{"re", d.rayleigh_w.real()}, {"im", d.rayleigh_w.imag()}};
    out["witness_v"] = matrix_json(d.witness_v);
    out["witness_w"] = matrix_json(d.witness_w);
    return out.dump(2) + "\n";
}

std::string run_map_analyze(const CliConfig& cfg, const std::string& path) {
    const SuperOp phi = read_superop_file(path);
    const Budget b = make_budget(cfg);
    const SuperOpFlags& f = phi.flags();

    std::vector<DiamEstimate> ests;
    ests.push_back(map_norm(phi, b));
    ests.push_back(diam_estimate(phi, b));
    ests.push_back(sdiam_estimate(phi, b));
    // The cb norm stabilizes at level dim_out; the diameter variants get the
    // doubled level so hermitized operator-norm witnesses fit. Both are
    // clamped to the amplification cap.
    const std::size_t big = std::max(phi.dim_in(), phi.dim_out());
    const std::size_t cap = std::max<std::size_t>(1, cfg.max_dim / big);
    const std::size_t cb_level = std::max<std::size_t>(1, std::min(phi.dim_out(), cap));
    const std::size_t diam_level = std::max<std::size_t>(1, std::min(2 * phi.dim_out(), cap));
    ests.push_back(cb_lower(phi, Quantity::cb, cb_level, b));
    ests.push_back(cb_lower(phi, Quantity::cbdiam, diam_level, b));
    ests.push_back(cb_lower(phi, Quantity::cbsdiam, diam_level, b));

    json jflags;
    jflags["self_adjoint"] = f.self_adjoint;
    jflags["unital"] = f.unital;
    if (f.paraunital_scalar)
        jflags["paraunital_scalar"] = {{"re", f.paraunital_scalar->real()},
                                       {"im", f.paraunital_scalar->imag()}};
    else
        jflags["paraunital_scalar"] = nullptr;
    if (f.trace_scale)
        jflags["trace_scale"] = {{"re", f.trace_scale->real()},
                                 {"im", f.trace_scale->imag()}};
    else
        jflags["trace_scale"] = nullptr;
    jflags["cp"] = f.cp;
    jflags["positive_sampled"] = f.positive_sampled ? json(*f.positive_sampled) : json();
    jflags["positive_certified"] = f.positive_certified;
    jflags["scalar_times_identity"] = f.scalar_times_identity;

    json jests = json::array();
    for (const DiamEstimate& est : ests) {
        json row;
        row["quantity"] = quantity_name(est.quantity);
        row["lower"] = finite_or_null(est.lower);
        row["upper"] = finite_or_null(est.upper);
        row["unbounded"] = est.unbounded;
        row["level"] = est.level;
        row["certificate"] = est.certificate;
        row["witness"] = matrix_json(est.witness);
        jests.push_back(std::move(row));
    }

    json jledger = json::array();
    for (const LedgerRow& row : inequality_ledger(phi, ests)) {
        json r;
        r["relation"] = row.relation;
        r["status"] = row.status;
        r["lhs"] = finite_or_null(row.lhs);
        r["rhs"] = finite_or_null(row.rhs);
        r["detail"] = row.detail;
        jledger.push_back(std::move(r));
    }

    json out;
    out["dim_in"] = phi.dim_in();
    out["dim_out"] = phi.dim_out();
    out["flags"] = jflags;
    out["estimates"] = jests;
    out["ledger"] = jledger;
    return out.dump(2) + "\n";
}

// Row timings are real measurements and would break byte-stable output, so
// the CLI leaves them out; the library API reports them.
std::string run_replicate(const CliConfig& cfg, const std::string& filter) {
    const std::vector<ReportRow> rows = run_suite(filter, cfg.seed);
    std::size_t pass = 0, fail = 0, inconclusive = 0;
    for (const ReportRow& r : rows) {
        if (r.status == "pass") ++pass;
        else if (r.status == "fail") ++fail;
        else ++inconclusive;
    }

    if (cfg.format == "json") {
        json jrows = json::array();
        for (const ReportRow& r : rows) {
            json jr;
            jr["fact_id"] = r.fact_id;
            jr["anchor"] = r.anchor;
            jr["expected"] = r.expected;
            jr["provenance"] = r.provenance;
            jr["computed_lower"] = finite_or_null(r.computed_lower);
            jr["computed_upper"] = finite_or_null(r.computed_upper);
            jr["status"] = r.status;
            jr["regime"] = r.regime;
            jrows.push_back(std::move(jr));
        }
        json out;
        out["rows"] = jrows;
        out["summary"] = {{"pass", pass}, {"fail", fail}, {"inconclusive", inconclusive}};
        return out.dump(2) + "\n";
    }
    if (cfg.format == "md") {
        std::string text = "| fact_id | status | expected | computed | provenance | regime |\n";
        text += "| --- | --- | --- | --- | --- | --- |\n";
        for (const ReportRow& r : rows) {
            const std::string computed = r.computed_lower == r.computed_upper
                                             ? fmt_double(r.computed_lower)
                                             : "[" + fmt_double(r.computed_lower) + ", " +
                                                   fmt_double(r.computed_upper) + "]";
            text += "| " + r.fact_id + " | " + r.status + " | " + fmt_double(r.expected) +
                    " | " + computed + " | " + r.provenance + " | " + r.regime + " |\n";
        }
        text += "\n" + std::to_string(rows.size()) + " facts: " + std::to_string(pass) +
                " pass, " + std::to_string(fail) + " fail, " + std::to_string(inconclusive) +
                " inconclusive\n";
        return text;
    }
    std::string text =
        "fact_id,expected,provenance,computed_lower,computed_upper,status,regime,anchor\n";
    for (const ReportRow& r : rows)
        text += r.fact_id + "," + fmt_double(r.expected) + "," + r.provenance + "," +
                fmt_double(r.computed_lower) + "," + fmt_double(r.computed_upper) + "," +
                r.status + "," + r.regime + "," + csv_quote(r.anchor) + "\n";
    return text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical range diameters and induced seminorms of matrix maps"};
    app.require_subcommand(1);

    CliConfig cfg;
    app.add_option("--seed", cfg.seed, "seed for every randomized search")
        ->envname("OPDIAM_SEED")
        ->capture_default_str();
    app.add_option("--grid", cfg.grid, "angle grid size for range sweeps")
        ->envname("OPDIAM_GRID")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--restarts", cfg.restarts, "search restarts per estimate")
        ->envname("OPDIAM_RESTARTS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--iters", cfg.iters, "iterations per search restart")
        ->envname("OPDIAM_ITERS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--tol", cfg.tol, "improvement tolerance for the searches")
        ->envname("OPDIAM_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--max-dim", cfg.max_dim, "cap on amplified matrix dimensions")
        ->envname("OPDIAM_MAX_DIM")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--format", cfg.format, "output format")
        ->envname("OPDIAM_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "md"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "write output to this file instead of stdout")
        ->envname("OPDIAM_OUT");

    std::string matrix_path;
    std::string superop_path;
    std::string filter;

    CLI::App* range_cmd =
        app.add_subcommand("range", "sample the numerical range boundary of a matrix");
    range_cmd->add_option("matrix", matrix_path, "matrix JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    range_cmd->fallthrough();

    CLI::App* diam_cmd =
        app.add_subcommand("diam", "numerical diameter of a matrix, with witnesses (JSON)");
    diam_cmd->add_option("matrix", matrix_path, "matrix JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    diam_cmd->fallthrough();

    CLI::App* map_cmd = app.add_subcommand(
        "map-analyze", "classify a matrix map and estimate its norms and seminorms (JSON)");
    map_cmd->add_option("superop", superop_path, "superoperator JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    map_cmd->fallthrough();

    CLI::App* rep_cmd =
        app.add_subcommand("replicate", "run the fact suite and print the report table");
    rep_cmd->add_option("--filter", filter, "fact-id glob, e.g. 'S3.*'");
    rep_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::string payload;
        if (range_cmd->parsed())
            payload = run_range(cfg, matrix_path);
        else if (diam_cmd->parsed())
            payload = run_diam(cfg, matrix_path);
        else if (map_cmd->parsed())
            payload = run_map_analyze(cfg, superop_path);
        else
            payload = run_replicate(cfg, filter);
        emit(cfg, payload);
    } catch (const ResourceLimit& ex) {
        std::cerr << "resource limit: " << ex.what() << "\n";
        return 3;
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
