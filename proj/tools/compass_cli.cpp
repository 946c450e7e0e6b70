// Copyright 2026 The compass authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "compass/compass.hpp"

namespace {

using namespace compass;

constexpr int exit_usage = 2;
constexpr int exit_numerics = 3;

int worker_count() {
    const char *env = std::getenv("COMPASS_WORKERS");
    if (!env) return 1;
    try {
        return std::max(1, std::stoi(env));
    } catch (const std::exception &) {
        throw std::invalid_argument("COMPASS_WORKERS must be a positive integer");
    }
}

struct state_flags {
    std::string variant = "pa";
    int m = 12;
    double r = 0.8;
    std::string grid = "-4:4:401";
    std::string out;
    std::string format = "csv";
    double nbar = 0.0;
    double tau = 0.0;

    compass_spec spec() const {
        compass_spec s{parse_variant(variant), m, r};
        validate_closed_form(s);
        return s;
    }
};

void add_state_flags(CLI::App *cmd, state_flags &f) {
    cmd->add_option("--state", f.variant, "pa (photon added) or ps (photon subtracted)")
        ->check(CLI::IsMember({"pa", "ps"}));
    cmd->add_option("--m", f.m, "photon number");
    cmd->add_option("--r", f.r, "squeezing parameter");
}

void add_field_flags(CLI::App *cmd, state_flags &f) {
    add_state_flags(cmd, f);
    cmd->add_option("--grid", f.grid, "xmin:xmax:nx[,pmin:pmax:np]");
    cmd->add_option("--out", f.out, "output path")->required();
    cmd->add_option("--format", f.format, "csv, json or pgm")
        ->check(CLI::IsMember({"csv", "json", "pgm"}));
}

std::ofstream open_out(const std::string &path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::invalid_argument("cannot open output '" + path + "'");
    return out;
}

nlohmann::json spec_json(const compass_spec &s) {
    return {{"variant", to_string(s.kind)}, {"m", s.m}, {"r", s.r}};
}

void write_field(const wigner_field &f, const state_flags &flags) {
    const auto fmt = parse_format(flags.format);
    auto out = open_out(flags.out, fmt == export_format::pgm);
    export_field(f, fmt, out);
    std::cerr << "wrote " << flags.out << " (" << f.grid.nx << "x" << f.grid.np
              << ", integral " << integrate_field(f) << ")\n";
}

int cmd_static(const state_flags &flags) {
    const auto s = flags.spec();
    const auto g = parse_grid(flags.grid);
    auto f = evaluate_field([&](cplx z) { return wigner_total(z, s); }, g, worker_count());
    f.meta = {{"evaluator", "wigner_total"}, {"state", spec_json(s)}};
    write_field(f, flags);
    return 0;
}

int cmd_evolve(const state_flags &flags) {
    const auto s = flags.spec();
    const reservoir_spec res{flags.nbar, flags.tau};
    validate(res);
    const auto g = parse_grid(flags.grid);
    auto f = evaluate_field([&](cplx z) { return evolved_total(z, s, res); }, g,
                            worker_count());
    f.meta = {{"evaluator", "evolved_total"},
              {"state", spec_json(s)},
              {"reservoir", {{"nbar", res.nbar}, {"tau", res.tau}}}};
    write_field(f, flags);
    return 0;
}

int cmd_decay_curve(const state_flags &flags, double tau_max, int steps, bool full) {
    const auto s = flags.spec();
    validate(reservoir_spec{flags.nbar, tau_max});
    if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
    if (!(tau_max > 0)) throw std::invalid_argument("--tau-max must be > 0");
    const auto curve = decay_curve(s, flags.nbar, tau_max, steps, {full});
    auto out = open_out(flags.out);
    out << "tau,f,ln_abs_f\n";
    for (const auto &p : curve)
        out << format_double(p.tau) << ',' << format_double(p.f) << ','
            << format_double(std::log(std::abs(p.f))) << '\n';
    return 0;
}

int cmd_table1(const std::string &out_path, const std::string &format) {
    const auto rows = table1(default_table_rows(), worker_count());
    std::vector<relative_change_record> deltas;
    for (size_t i = 0; i + 1 < rows.size(); ++i) deltas.push_back(relative_change(rows[i], rows[i + 1]));

    std::printf("row  m    r    nbar  tau_d_pa      tau_d_ps      pa<ps\n");
    for (const auto &r : rows)
        std::printf("%-4d %-4d %-4.2g %-5.2g %.10f  %.10f  %s\n", r.row_id, r.m, r.r, r.nbar,
                    r.tau_d_pa, r.tau_d_ps, r.pa_before_ps ? "yes" : "no");
    for (const auto &d : deltas)
        std::printf("delta %d->%d  pa %+.6f%%  ps %+.6f%%\n", d.reference_row, d.next_row,
                    100 * d.delta_pa, 100 * d.delta_ps);

    if (out_path.empty()) return 0;
    auto out = open_out(out_path);
    if (format == "json") {
        nlohmann::json j;
        for (const auto &r : rows)
            j["rows"].push_back({{"row", r.row_id}, {"m", r.m}, {"r", r.r}, {"nbar", r.nbar},
                                 {"tau_d_pa", r.tau_d_pa}, {"tau_d_ps", r.tau_d_ps},
                                 {"pa_before_ps", r.pa_before_ps}});
        for (const auto &d : deltas)
            j["relative_change_percent"].push_back({{"from", d.reference_row},
                                                    {"to", d.next_row},
                                                    {"pa", 100 * d.delta_pa},
                                                    {"ps", 100 * d.delta_ps}});
        out << j.dump(2) << '\n';
    } else {
        out << "row,m,r,nbar,tau_d_pa,tau_d_ps\n";
        for (const auto &r : rows)
            out << r.row_id << ',' << r.m << ',' << format_double(r.r) << ','
                << format_double(r.nbar) << ',' << format_double(r.tau_d_pa) << ','
                << format_double(r.tau_d_ps) << '\n';
        out << "\nfrom_row,to_row,delta_pa_percent,delta_ps_percent\n";
        for (const auto &d : deltas)
            out << d.reference_row << ',' << d.next_row << ',' << format_double(100 * d.delta_pa)
                << ',' << format_double(100 * d.delta_ps) << '\n';
    }
    return 0;
}

int cmd_validate(const std::string &level) {
    const auto rep = level == "full" ? validate_full() : validate_quick();
    for (const auto &c : rep.checks)
        std::printf("%-4s %-52s max %.3e (tol %.1e)\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                    c.value, c.tolerance);
    return rep.ok() ? 0 : exit_numerics;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Wigner functions of photon-added and photon-subtracted squeezed-vacuum "
                 "superpositions in a thermal channel"};
    app.require_subcommand(1);

    state_flags sf, ef, df;
    auto *st = app.add_subcommand("static", "field of the initial Wigner function");
    add_field_flags(st, sf);

    auto *ev = app.add_subcommand("evolve", "field after the thermal channel");
    add_field_flags(ev, ef);
    ev->add_option("--nbar", ef.nbar, "mean thermal photon number");
    ev->add_option("--tau", ef.tau, "dimensionless time");

    double tau_max = 0.5;
    int steps = 500;
    bool full = false;
    auto *dc = app.add_subcommand("decay-curve", "decay of the central structure, f(tau)");
    add_state_flags(dc, df);
    df.m = 11;
    df.r = 0.5;
    df.nbar = 0.5;
    dc->add_option("--nbar", df.nbar, "mean thermal photon number");
    dc->add_option("--tau-max", tau_max, "largest tau sampled");
    dc->add_option("--steps", steps, "number of intervals");
    dc->add_option("--out", df.out, "output CSV")->required();
    dc->add_flag("--full-wigner", full, "normalize the full W(0, tau) instead of the chess term");

    std::string table_out, table_format = "csv";
    auto *tb = app.add_subcommand("table1", "temporal thresholds and relative changes");
    tb->add_option("--out", table_out, "output path");
    tb->add_option("--format", table_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::string level = "quick";
    auto *va = app.add_subcommand("validate", "oracle cross-checks");
    va->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*st) return cmd_static(sf);
        if (*ev) return cmd_evolve(ef);
        if (*dc) return cmd_decay_curve(df, tau_max, steps, full);
        if (*tb) return cmd_table1(table_out, table_format);
        if (*va) return cmd_validate(level);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerics;
    }
    return exit_usage;
}
