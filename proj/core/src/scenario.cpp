#include "trsfund/scenario.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trsfund {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 7> kAxes = {
    "rho_b", "w", "repo_fee", "funding_bump", "collateral_bump", "spot_bump", "dividend_bump"};

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::runtime_error("config error at '" + path + "': " + msg);
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object())
        fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(join(path, key), "missing required field");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number())
        fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        fail(path, "value must be finite");
    return v;
}

double number_field(const json& j, const std::string& key, const std::string& path) {
    return as_number(need(j, key, path), join(path, key));
}

double number_or(const json& j, const std::string& key, const std::string& path, double def) {
    auto it = j.find(key);
    return it == j.end() ? def : as_number(*it, join(path, key));
}

bool bool_or(const json& j, const std::string& key, const std::string& path, bool def) {
    auto it = j.find(key);
    if (it == j.end())
        return def;
    if (!it->is_boolean())
        fail(join(path, key), "expected true or false");
    return it->get<bool>();
}

std::string string_field(const json& j, const std::string& key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_string())
        fail(join(path, key), "expected a string");
    return v.get<std::string>();
}

std::vector<double> number_list(const json& j, const std::string& path) {
    if (!j.is_array())
        fail(path, "expected a list of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

YieldCurve parse_curve(const json& j, const std::string& path) {
    if (j.is_number())
        return YieldCurve::flat(as_number(j, path));
    if (!j.is_array() || j.empty())
        fail(path, "expected a flat rate or a non-empty list of [time, rate] pairs");
    std::vector<CurvePoint> pts;
    pts.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2)
            fail(p, "expected a [time, rate] pair");
        pts.push_back({as_number(j[i][0], p + "[0]"), as_number(j[i][1], p + "[1]")});
    }
    try {
        return YieldCurve(std::move(pts));
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

CurveSet parse_curves(const json& j, const std::string& path) {
    return {parse_curve(need(j, "funding", path), join(path, "funding")),
            parse_curve(need(j, "collateral", path), join(path, "collateral")),
            parse_curve(need(j, "ois", path), join(path, "ois")),
            parse_curve(need(j, "repo_fee", path), join(path, "repo_fee")),
            parse_curve(need(j, "libor", path), join(path, "libor"))};
}

MarketSnapshot parse_market(const json& j, const std::string& path) {
    MarketSnapshot m;
    m.spot = number_field(j, "spot", path);
    m.vol = number_field(j, "vol", path);
    auto it = j.find("dividends");
    if (it != j.end()) {
        const std::string p = join(path, "dividends");
        if (!it->is_array())
            fail(p, "expected a list of [time, amount] pairs");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string pi = p + "[" + std::to_string(i) + "]";
            const json& d = (*it)[i];
            if (!d.is_array() || d.size() != 2)
                fail(pi, "expected a [time, amount] pair");
            m.dividends.push_back({as_number(d[0], pi + "[0]"), as_number(d[1], pi + "[1]")});
        }
    }
    const json& taxes = need(j, "taxes", path);
    const std::string tp = join(path, "taxes");
    m.taxes.div_hold = number_or(taxes, "div_hold", tp, 0.0);
    m.taxes.div_lend = number_or(taxes, "div_lend", tp, 0.0);
    m.taxes.div_swap = number_or(taxes, "div_swap", tp, 0.0);
    m.taxes.tobin = number_or(taxes, "tobin", tp, 0.0);
    return m;
}

HedgeSpec parse_hedge(const json& j, const std::string& path) {
    HedgeSpec h;
    const std::string s = string_field(j, "strategy", path);
    if (s == "buy_and_hold")
        h.strategy = HedgeStrategy::BuyAndHold;
    else if (s == "stock_lending")
        h.strategy = HedgeStrategy::StockLending;
    else if (s == "stock_borrowing")
        h.strategy = HedgeStrategy::StockBorrowing;
    else if (s == "blended")
        h.strategy = HedgeStrategy::Blended;
    else
        fail(join(path, "strategy"),
             "unknown strategy '" + s +
                 "' (use buy_and_hold, stock_lending, stock_borrowing, or blended)");
    h.weight = number_or(j, "weight", path, 1.0);
    h.alpha = number_or(j, "alpha", path, 0.0);
    return h;
}

std::vector<double> parse_schedule(const json& j, const std::string& path, const char* dates_key,
                                   const char* periods_key, const std::vector<double>* fallback) {
    auto dates = j.find(dates_key);
    if (dates != j.end())
        return number_list(*dates, join(path, dates_key));
    auto periods = j.find(periods_key);
    if (periods == j.end()) {
        if (fallback)
            return *fallback;
        fail(path, std::string("need either '") + dates_key + "' or '" + periods_key + "'");
    }
    if (!periods->is_number_integer() || periods->get<long long>() < 1)
        fail(join(path, periods_key), "expected a positive integer");
    const double maturity = number_field(j, "maturity", path);
    try {
        return uniform_schedule(maturity, static_cast<int>(periods->get<long long>()));
    } catch (const std::exception& e) {
        fail(join(path, "maturity"), e.what());
    }
}

TRSContract parse_contract(const json& j, const std::string& path) {
    TRSContract c;
    const std::string dir = string_field(j, "direction", path);
    if (dir == "receiver")
        c.direction = Direction::Receiver;
    else if (dir == "payer")
        c.direction = Direction::Payer;
    else
        fail(join(path, "direction"), "unknown direction '" + dir + "' (receiver or payer)");

    const std::string mode = string_field(j, "notional_mode", path);
    if (mode == "constant")
        c.notional_mode = NotionalMode::Constant;
    else if (mode == "resetting")
        c.notional_mode = NotionalMode::Resetting;
    else
        fail(join(path, "notional_mode"),
             "unknown notional mode '" + mode + "' (constant or resetting)");

    c.equity_dates = parse_schedule(j, path, "equity_dates", "periods", nullptr);
    c.funding_dates =
        parse_schedule(j, path, "funding_dates", "funding_periods", &c.equity_dates);
    c.beta = number_or(j, "beta", path, 0.0);
    c.tobin_enabled = bool_or(j, "tobin_enabled", path, true);
    c.spread = number_or(j, "spread", path, 0.0);
    c.notional = number_or(j, "notional", path, 1.0);

    auto em = j.find("expectation_mode");
    if (em != j.end()) {
        if (!em->is_string())
            fail(join(path, "expectation_mode"), "expected a string");
        const std::string e = em->get<std::string>();
        if (e == "black")
            c.expectation = ExpectationMode::Black;
        else if (e == "forward_intrinsic")
            c.expectation = ExpectationMode::ForwardIntrinsic;
        else
            fail(join(path, "expectation_mode"), "use black or forward_intrinsic");
    }
    return c;
}

SimulationSpec parse_sim(const json& j, const std::string& path) {
    SimulationSpec s;
    const double paths = number_or(j, "paths", path, static_cast<double>(s.paths));
    if (!(paths >= 2.0))
        fail(join(path, "paths"), "need at least two paths");
    s.paths = static_cast<std::uint64_t>(paths);
    s.seed = static_cast<std::uint64_t>(number_or(j, "seed", path, 42.0));
    s.antithetic = bool_or(j, "antithetic", path, true);
    const double threads = number_or(j, "threads", path, 1.0);
    if (!(threads >= 1.0))
        fail(join(path, "threads"), "need at least one thread");
    s.threads = static_cast<unsigned>(threads);
    return s;
}

SweepSpec parse_sweep(const json& j, const std::string& path) {
    SweepSpec s;
    s.axis = string_field(j, "axis", path);
    bool known = false;
    for (const char* a : kAxes)
        known = known || s.axis == a;
    if (!known)
        fail(join(path, "axis"), "unknown sweep axis '" + s.axis + "'");
    s.grid = number_list(need(j, "grid", path), join(path, "grid"));
    if (s.grid.empty())
        fail(join(path, "grid"), "grid must not be empty");
    for (std::size_t i = 1; i < s.grid.size(); ++i)
        if (!(s.grid[i] > s.grid[i - 1]))
            fail(join(path, "grid"), "grid values must strictly increase");
    auto series = j.find("series_axis");
    if (series != j.end()) {
        if (!series->is_string())
            fail(join(path, "series_axis"), "expected a string");
        s.series_axis = series->get<std::string>();
        known = false;
        for (const char* a : kAxes)
            known = known || s.series_axis == a;
        if (!known)
            fail(join(path, "series_axis"), "unknown sweep axis '" + s.series_axis + "'");
        if (s.series_axis == s.axis)
            fail(join(path, "series_axis"), "series axis must differ from the sweep axis");
        s.series = number_list(need(j, "series", path), join(path, "series"));
        if (s.series.empty())
            fail(join(path, "series"), "series must not be empty");
    } else if (j.find("series") != j.end()) {
        fail(join(path, "series"), "series values given without a series_axis");
    }
    return s;
}

json curve_json(const YieldCurve& curve) {
    json out = json::array();
    for (const auto& p : curve.pillars())
        out.push_back({p.time, p.rate});
    return out;
}

std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(origin + ": malformed JSON at " + locate(text, e.byte) + ": " +
                                 e.what());
    }
    if (!root.is_object())
        throw std::runtime_error(origin + ": top level must be an object");

    Scenario s{parse_curves(need(root, "curves", ""), "curves"),
               parse_market(need(root, "market", ""), "market"),
               parse_hedge(need(root, "hedge", ""), "hedge"),
               parse_contract(need(root, "contract", ""), "contract"),
               root.contains("simulation") ? parse_sim(root["simulation"], "simulation")
                                           : SimulationSpec{},
               std::nullopt,
               {}};
    if (root.contains("sweep"))
        s.sweep = parse_sweep(root["sweep"], "sweep");

    try {
        validate_market(s.market);
        validate_hedge(s.hedge);
        validate_contract(s.contract);
        check_pairing(s.contract.direction, s.hedge.strategy);
    } catch (const std::exception& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
    if (s.market.taxes.tobin > 0.01)
        s.warnings.push_back("transaction tax above 1%; check the units (fraction, not bps)");
    if (!s.market.dividends.empty() &&
        ForwardCurve(s.market, s.hedge, s.curves).negative(s.contract.equity_dates.back()))
        s.warnings.push_back("dividends exceed the grown spot before maturity");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

std::string scenario_json(const Scenario& s) {
    json root;
    root["curves"] = {{"funding", curve_json(s.curves.funding)},
                      {"collateral", curve_json(s.curves.collateral)},
                      {"ois", curve_json(s.curves.ois)},
                      {"repo_fee", curve_json(s.curves.repo_fee)},
                      {"libor", curve_json(s.curves.libor)}};
    json divs = json::array();
    for (const auto& d : s.market.dividends)
        divs.push_back({d.time, d.amount});
    root["market"] = {{"spot", s.market.spot},
                      {"vol", s.market.vol},
                      {"dividends", divs},
                      {"taxes",
                       {{"div_hold", s.market.taxes.div_hold},
                        {"div_lend", s.market.taxes.div_lend},
                        {"div_swap", s.market.taxes.div_swap},
                        {"tobin", s.market.taxes.tobin}}}};
    const char* strategy = nullptr;
    switch (s.hedge.strategy) {
    case HedgeStrategy::BuyAndHold:
        strategy = "buy_and_hold";
        break;
    case HedgeStrategy::StockLending:
        strategy = "stock_lending";
        break;
    case HedgeStrategy::StockBorrowing:
        strategy = "stock_borrowing";
        break;
    case HedgeStrategy::Blended:
        strategy = "blended";
        break;
    }
    root["hedge"] = {{"strategy", strategy}, {"weight", s.hedge.weight}, {"alpha", s.hedge.alpha}};
    root["contract"] = {
        {"direction", s.contract.direction == Direction::Receiver ? "receiver" : "payer"},
        {"notional_mode",
         s.contract.notional_mode == NotionalMode::Constant ? "constant" : "resetting"},
        {"equity_dates", s.contract.equity_dates},
        {"funding_dates", s.contract.funding_dates},
        {"beta", s.contract.beta},
        {"tobin_enabled", s.contract.tobin_enabled},
        {"spread", s.contract.spread},
        {"notional", s.contract.notional},
        {"expectation_mode", s.contract.expectation == ExpectationMode::Black
                                 ? "black"
                                 : "forward_intrinsic"}};
    root["simulation"] = {{"paths", s.sim.paths},
                          {"seed", s.sim.seed},
                          {"antithetic", s.sim.antithetic},
                          {"threads", s.sim.threads}};
    if (s.sweep) {
        root["sweep"] = {{"axis", s.sweep->axis}, {"grid", s.sweep->grid}};
        if (!s.sweep->series_axis.empty()) {
            root["sweep"]["series_axis"] = s.sweep->series_axis;
            root["sweep"]["series"] = s.sweep->series;
        }
    }
    return root.dump(2) + "\n";
}

} // namespace trsfund
