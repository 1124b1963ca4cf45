#include "trsfund/expansion.hpp"
#include "trsfund/forward.hpp"
#include "trsfund/scenario.hpp"
#include "trsfund/sweep.hpp"
#include "trsfund/trs.hpp"
#include "trsfund/validation.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> paths;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config, "scenario file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out, "write CSV here instead of stdout");
    cmd->add_option("--paths", opt.paths, "override simulation.paths")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32));
    cmd->add_option("--seed", opt.seed, "override simulation.seed");
    cmd->add_option("--threads", opt.threads, "override simulation.threads")
        ->check(CLI::Range(1u, 256u));
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string par_csv(const trsfund::Scenario& s) {
    const auto [k, b] = trsfund::par_spread(s.contract, s.market, s.curves, s.hedge);
    return "spread_percent,rate_leg,dividend_tax_cost,tobin_cost,annuity\n" +
           fmt(k * 100.0) + "," + fmt(b.rate_leg) + "," + fmt(b.dividend_tax_cost) + "," +
           fmt(b.tobin_cost) + "," + fmt(b.annuity) + "\n";
}

std::string value_csv(const trsfund::Scenario& s) {
    const double v = trsfund::trs_value(s.contract, s.market, s.curves, s.hedge);
    return "spread_percent,value\n" + fmt(s.contract.spread * 100.0) + "," + fmt(v) + "\n";
}

std::string forward_csv(const trsfund::Scenario& s) {
    const trsfund::ForwardCurve fwd(s.market, s.hedge, s.curves);
    std::string out = "time,forward\n";
    for (double t : s.contract.equity_dates)
        out += fmt(t) + "," + fmt(fwd.value(t)) + "\n";
    return out;
}

std::string expand_csv(const trsfund::Scenario& s) {
    const auto decomp =
        trsfund::build_spread_decomposition(s.contract.equity_dates, s.curves);
    const double exact = trsfund::par_spread(s.contract, s.market, s.curves, s.hedge).first;
    const double approx =
        trsfund::approx_par_spread(s.hedge, s.contract, s.market, decomp);

    std::string out = "name,value\n";
    out += "exact_percent," + fmt(exact * 100.0) + "\n";
    out += "approx_percent," + fmt(approx * 100.0) + "\n";
    out += "error_bp," + fmt((exact - approx) * 1e4) + "\n";
    out += "\nperiod,start,end,ois_rate,d_funding,d_collateral,d_repo,d_libor\n";
    for (std::size_t i = 0; i < decomp.periods(); ++i)
        out += std::to_string(i + 1) + "," + fmt(decomp.times[i]) + "," +
               fmt(decomp.times[i + 1]) + "," + fmt(decomp.ois_rate[i]) + "," +
               fmt(decomp.d_funding[i]) + "," + fmt(decomp.d_collateral[i]) + "," +
               fmt(decomp.d_repo[i]) + "," + fmt(decomp.d_libor[i]) + "\n";
    return out;
}

std::string sweep_csv_cmd(const trsfund::Scenario& s) {
    if (!s.sweep)
        throw std::runtime_error("config error at 'sweep': section required by this command");
    return trsfund::sweep_csv(*s.sweep, trsfund::run_sweep(s, *s.sweep));
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot write '" + path + "'");
    file << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"total return swap pricing and funding analytics"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* par = app.add_subcommand("par", "par spread with breakdown");
    CLI::App* value = app.add_subcommand("value", "contract value at the configured spread");
    CLI::App* forward = app.add_subcommand("forward", "hedge forwards at the equity dates");
    CLI::App* expand = app.add_subcommand("expand", "exact vs first-order spread");
    CLI::App* sweep = app.add_subcommand("sweep", "par spread over the configured grid");
    CLI::App* sens = app.add_subcommand("sens", "bump-and-revalue sensitivities");
    CLI::App* validate = app.add_subcommand("validate", "analytics against the simulation oracle");
    for (CLI::App* cmd : {par, value, forward, expand, sweep, sens, validate})
        add_common(cmd, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        trsfund::Scenario s = trsfund::load_scenario(opt.config);
        if (opt.paths)
            s.sim.paths = *opt.paths;
        if (opt.seed)
            s.sim.seed = *opt.seed;
        if (opt.threads)
            s.sim.threads = *opt.threads;
        for (const auto& w : s.warnings)
            std::cerr << "warning: " << w << "\n";

        if (validate->parsed()) {
            const auto rows = trsfund::run_validation(s);
            write_output(opt.out, trsfund::validation_csv(rows));
            std::cerr << trsfund::validation_report(rows);
            return trsfund::all_passed(rows) ? 0 : 2;
        }

        std::string csv;
        if (par->parsed())
            csv = par_csv(s);
        else if (value->parsed())
            csv = value_csv(s);
        else if (forward->parsed())
            csv = forward_csv(s);
        else if (expand->parsed())
            csv = expand_csv(s);
        else if (sweep->parsed())
            csv = sweep_csv_cmd(s);
        else
            csv = trsfund::sensitivities_csv(trsfund::run_sensitivities(s));
        write_output(opt.out, csv);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
