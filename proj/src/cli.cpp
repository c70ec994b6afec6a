//---------------------------------------------------------------------------//
//! \file cli.cpp
//---------------------------------------------------------------------------//
#include "hz/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "hz/asymptotics.hpp"
#include "hz/montecarlo.hpp"

#ifndef HZ_VERSION
#    define HZ_VERSION "0.0.0"
#endif

namespace hz::cli
{
namespace
{
//---------------------------------------------------------------------------//
std::map<std::string, Command> const kCommands{
    {"expect", Command::expect},
    {"sweep", Command::sweep},
    {"intensity", Command::intensity},
    {"limits", Command::limits},
    {"simulate", Command::simulate},
    {"verify", Command::verify},
};

template<class Enum>
std::string name_of(std::map<std::string, Enum> const& names, Enum value)
{
    for (auto const& [key, v] : names)
    {
        if (v == value)
            return key;
    }
    return "?";
}

std::map<std::string, ScalingMode> const kModes{
    {"fixed_m", ScalingMode::fixed_m}, {"diagonal", ScalingMode::diagonal}};
std::map<std::string, Format> const kFormats{{"csv", Format::csv},
                                             {"json", Format::json}};
std::map<std::string, LimitKind> const kLimits{{"f", LimitKind::f},
                                               {"g", LimitKind::g},
                                               {"F", LimitKind::F},
                                               {"diag", LimitKind::diag}};
std::map<std::string, GridVariable> const kVariables{{"w", GridVariable::w},
                                                     {"t", GridVariable::t}};

[[noreturn]] void fail(std::string const& flag, std::string const& why)
{
    throw UsageError(flag + ": " + why);
}

int single(std::vector<int> const& values, char const* flag)
{
    if (values.size() != 1)
        fail(flag, "expects a single value");
    return values.front();
}

void check_pair(int n, int m)
{
    if (n < 1)
        fail("--n", "degree must be at least 1");
    if (m < 0)
        fail("--m", "degree must be nonnegative");
    if (m > n)
        fail("--m", "must not exceed --n (convention n >= m)");
}

//! Validate cross-field constraints that CLI11 cannot express.
void validate(RunConfig& c)
{
    if (!(c.tol > 0))
        fail("--tol", "must be positive");

    switch (c.command)
    {
        case Command::expect:
        case Command::intensity:
        case Command::simulate: {
            if (c.n.empty())
                fail("--n", "is required");
            if (c.m.empty())
                c.m = {0};
            check_pair(single(c.n, "--n"), single(c.m, "--m"));
            break;
        }
        case Command::sweep: {
            if (c.n.empty())
                fail("--n", "is required");
            if (c.mode == ScalingMode::diagonal)
            {
                if (!c.m.empty())
                    fail("--m", "is implied by --n in diagonal mode");
                for (int n : c.n)
                {
                    if (n < 2)
                        fail("--n", "diagonal mode needs every n >= 2");
                }
            }
            else
            {
                if (c.m.empty())
                    c.m = {0};
                int const m = single(c.m, "--m");
                for (int n : c.n)
                    check_pair(n, m);
            }
            break;
        }
        case Command::limits:
        case Command::verify:
            break;
    }

    if (c.command == Command::simulate && single(c.n, "--n") > 32)
        fail("--n", "zero finding supports n <= 32");
    if (c.samples < 1)
        fail("--samples", "must be at least 1");

    if (c.command == Command::intensity || c.command == Command::limits)
    {
        bool const in_w = (c.command == Command::intensity
                           && c.variable == GridVariable::w)
                          || (c.command == Command::limits
                              && c.which == LimitKind::diag);
        if (c.lo == 0 && c.hi == 0)
        {
            c.lo = in_w ? 0.01 : -10.0;
            c.hi = in_w ? 4.0 : 10.0;
        }
        if (!(c.lo < c.hi))
            fail("--hi", "must exceed --lo");
        if (in_w && !(c.lo > 0))
            fail("--lo", "w grids must start above 0");
        if (c.points < 2)
            fail("--points", "must be at least 2");
    }
}

//---------------------------------------------------------------------------//
std::vector<double> grid(double lo, double hi, int points)
{
    std::vector<double> xs(points);
    for (int i = 0; i < points; ++i)
        xs[i] = lo + (hi - lo) * i / (points - 1);
    return xs;
}

double tolerance_for(RunConfig const& c, DegreePair deg)
{
    return c.tol_explicit ? c.tol : std::max(c.tol, default_tolerance(deg));
}

struct Outcome
{
    Document doc;
    bool converged{true};
    bool verify_failed{false};
};

Outcome run_expect(RunConfig const& c)
{
    auto const deg = DegreePair::checked(c.n.front(), c.m.front());
    auto const result = expected_zeros(deg, tolerance_for(c, deg));
    Table t{"expectation",
            {"n", "m", "expectation", "error", "evaluations", "converged"},
            {}};
    t.rows.push_back({long{deg.n}, long{deg.m}, result.value,
                      result.abs_error_estimate, result.evaluations,
                      result.converged});
    return {{{}, {t}}, result.converged};
}

Outcome run_sweep(RunConfig const& c)
{
    Outcome out;
    Table t{"sweep",
            {"n", "m", "expectation", "error", "ratio_n", "ratio_nlogn",
             "converged"},
            {}};
    for (int n : c.n)
    {
        int const m = c.mode == ScalingMode::diagonal ? n : c.m.front();
        auto const deg = DegreePair::checked(n, m);
        auto const row = make_row(deg, expected_zeros(deg, tolerance_for(c, deg)));
        out.converged = out.converged && row.converged;
        t.rows.push_back({long{row.n}, long{row.m}, row.expectation, row.error,
                          row.ratio_n, row.ratio_nlogn, row.converged});
    }
    out.doc.tables.push_back(std::move(t));
    return out;
}

Outcome run_intensity(RunConfig const& c)
{
    auto const deg = DegreePair::checked(c.n.front(), c.m.front());
    Outcome out;
    Table t;
    t.name = "intensity";
    if (c.variable == GridVariable::w)
    {
        t.columns = {"w", "density"};
        for (double w : grid(c.lo, c.hi, c.points))
            t.rows.push_back({w, radial_intensity(w, deg).density});
    }
    else
    {
        t.columns = {"t", "f_n"};
        for (double x : grid(c.lo, c.hi, c.points))
            t.rows.push_back({x, scaled_integrand_t(x, deg.n, deg.m)});
    }
    out.doc.tables.push_back(std::move(t));
    return out;
}

Outcome run_limits(RunConfig const& c)
{
    Outcome out;
    Table t;
    t.name = "limits";
    bool const diag = c.which == LimitKind::diag;
    t.columns = {diag ? "w" : "t", name_of(kLimits, c.which)};
    for (double x : grid(c.lo, c.hi, c.points))
    {
        double value = 0;
        switch (c.which)
        {
            case LimitKind::f:
                value = f_limit(x);
                break;
            case LimitKind::g:
                value = g_limit(x);
                break;
            case LimitKind::F:
                value = antiderivative_F(x);
                break;
            case LimitKind::diag:
                if (x == 1)
                    continue;  // pole of the one-sided limit
                value = limit_density_diag(x);
                break;
        }
        t.rows.push_back({x, value});
    }
    out.doc.tables.push_back(std::move(t));
    return out;
}

Outcome run_simulate(RunConfig const& c)
{
    auto const deg = DegreePair::checked(c.n.front(), c.m.front());
    auto const s = mc_expectation(deg, c.samples, c.seed);
    Outcome out;
    Table summary{"summary",
                  {"n", "m", "samples", "certified_samples", "mean",
                   "std_error", "min", "max", "degenerate_resamples",
                   "uncertified_samples", "structural_failures", "seed"},
                  {}};
    summary.rows.push_back({long{s.n}, long{s.m}, s.samples,
                            s.certified_samples, s.mean, s.std_error,
                            long{s.min}, long{s.max}, s.degenerate_resamples,
                            s.uncertified_samples, s.structural_failures,
                            std::to_string(s.seed)});
    Table histogram{"histogram", {"count", "frequency"}, {}};
    for (auto const& [count, freq] : s.histogram)
        histogram.rows.push_back({long{count}, freq});
    out.doc.tables = {std::move(summary), std::move(histogram)};
    out.converged = s.uncertified_samples == 0;
    return out;
}

Outcome run_verify(RunConfig const& c)
{
    Outcome out;
    Table t{"verify",
            {"property", "passed", "cases", "failures", "detail"},
            {}};
    for (auto const& r : run_verify_suite(c.samples, c.seed))
    {
        t.rows.push_back({r.property, r.passed, r.cases, r.failures, r.detail});
        out.verify_failed = out.verify_failed || !r.passed;
    }
    out.doc.tables.push_back(std::move(t));
    return out;
}

//---------------------------------------------------------------------------//
std::string csv_escape(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s)
    {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

struct CsvCell
{
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::string const& v) const
    {
        return csv_escape(v);
    }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct JsonCell
{
    nlohmann::json operator()(long v) const { return v; }
    nlohmann::json operator()(double v) const
    {
        if (!std::isfinite(v))
            return nullptr;
        return v;
    }
    nlohmann::json operator()(std::string const& v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
};

}  // namespace

//---------------------------------------------------------------------------//
std::string usage()
{
    return "usage: hz <expect|sweep|intensity|limits|simulate|verify> "
           "[options]\n"
           "run `hz <command> --help` for the options of a command\n";
}

RunConfig parse_args(std::vector<std::string> const& args)
{
    RunConfig c;
    CLI::App app{"Expected zeros of random harmonic polynomials", "hz"};
    app.require_subcommand(1);

    std::string mode = "fixed_m";
    std::string format = "csv";
    std::string which = "f";
    std::string variable = "w";

    auto add_degrees = [&](CLI::App* sub) {
        sub->add_option("--n", c.n, "analytic degree(s), comma separated")
            ->delimiter(',');
        sub->add_option("--m", c.m, "conjugated degree")->delimiter(',');
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "output path (default stdout)");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_tol = [&](CLI::App* sub) {
        sub->add_option("--tol", c.tol, "absolute quadrature tolerance");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--lo", c.lo, "grid start");
        sub->add_option("--hi", c.hi, "grid end");
        sub->add_option("--points", c.points, "grid points");
    };
    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--samples", c.samples, "number of samples");
        sub->add_option("--seed", c.seed, "64-bit seed");
    };

    auto* expect = app.add_subcommand("expect", "E N over the plane");
    add_degrees(expect);
    add_tol(expect);
    add_output(expect);

    auto* sweep = app.add_subcommand("sweep", "E N over a list of degrees");
    add_degrees(sweep);
    add_tol(sweep);
    add_output(sweep);
    sweep->add_option("--mode", mode, "fixed_m or diagonal")
        ->check(CLI::IsMember({"fixed_m", "diagonal"}));

    auto* intensity = app.add_subcommand("intensity", "first intensity grid");
    add_degrees(intensity);
    add_grid(intensity);
    add_output(intensity);
    intensity->add_option("--var", variable, "w or t")
        ->check(CLI::IsMember({"w", "t"}));

    auto* limits = app.add_subcommand("limits", "limit density grids");
    add_grid(limits);
    add_output(limits);
    limits->add_option("--which", which, "f, g, F or diag")
        ->check(CLI::IsMember({"f", "g", "F", "diag"}));

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo zero counts");
    add_degrees(simulate);
    add_sampling(simulate);
    add_output(simulate);

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    add_sampling(verify);
    add_output(verify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        auto* sub = app.get_subcommands().empty() ? &app
                                                  : app.get_subcommands().front();
        throw HelpRequested(sub->help());
    }
    catch (CLI::ParseError const& e)
    {
        throw UsageError(e.what());
    }

    c.command = kCommands.at(app.get_subcommands().front()->get_name());
    c.mode = kModes.at(mode);
    c.format = kFormats.at(format);
    c.which = kLimits.at(which);
    c.variable = kVariables.at(variable);
    for (auto* sub : {expect, sweep})
    {
        if (sub->count("--tol") > 0)
            c.tol_explicit = true;
    }
    if (c.command == Command::verify && simulate->count("--samples") == 0
        && verify->count("--samples") == 0)
    {
        c.samples = 200;
    }
    validate(c);
    return c;
}

//---------------------------------------------------------------------------//
nlohmann::json config_to_json(RunConfig const& c)
{
    nlohmann::json j;
    j["command"] = name_of(kCommands, c.command);
    j["n"] = c.n;
    j["m"] = c.m;
    j["tol"] = c.tol;
    j["tol_explicit"] = c.tol_explicit;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["mode"] = name_of(kModes, c.mode);
    j["var"] = name_of(kVariables, c.variable);
    j["which"] = name_of(kLimits, c.which);
    j["lo"] = c.lo;
    j["hi"] = c.hi;
    j["points"] = c.points;
    j["out"] = c.out;
    j["format"] = name_of(kFormats, c.format);
    return j;
}

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(Document const& doc, std::ostream& os)
{
    os << "# " << doc.metadata.dump() << '\n';
    bool first = true;
    for (auto const& t : doc.tables)
    {
        if (!first)
            os << '\n';
        first = false;
        os << "# table: " << t.name << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << t.columns[i];
        os << '\n';
        for (auto const& row : t.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
            os << '\n';
        }
    }
}

void write_json(Document const& doc, std::ostream& os)
{
    nlohmann::json j;
    j["metadata"] = doc.metadata;
    j["tables"] = nlohmann::json::object();
    for (auto const& t : doc.tables)
    {
        auto rows = nlohmann::json::array();
        for (auto const& row : t.rows)
        {
            nlohmann::json record;
            for (std::size_t i = 0; i < row.size(); ++i)
                record[t.columns[i]] = std::visit(JsonCell{}, row[i]);
            rows.push_back(std::move(record));
        }
        j["tables"][t.name] = std::move(rows);
    }
    os << j.dump(2) << '\n';
}

//---------------------------------------------------------------------------//
int run_command(RunConfig const& config, std::ostream& fallback)
{
    auto const start = std::chrono::steady_clock::now();
    Outcome outcome;
    switch (config.command)
    {
        case Command::expect:
            outcome = run_expect(config);
            break;
        case Command::sweep:
            outcome = run_sweep(config);
            break;
        case Command::intensity:
            outcome = run_intensity(config);
            break;
        case Command::limits:
            outcome = run_limits(config);
            break;
        case Command::simulate:
            outcome = run_simulate(config);
            break;
        case Command::verify:
            outcome = run_verify(config);
            break;
    }
    std::chrono::duration<double> const elapsed
        = std::chrono::steady_clock::now() - start;

    auto& meta = outcome.doc.metadata;
    meta["tool"] = "hz";
    meta["version"] = HZ_VERSION;
    meta["config"] = config_to_json(config);
    meta["seed"] = config.seed;
    meta["converged"] = outcome.converged;
    meta["wall_time_s"] = elapsed.count();

    std::ofstream file;
    std::ostream* os = &fallback;
    if (!config.out.empty())
    {
        file.open(config.out);
        if (!file)
        {
            std::cerr << "hz: cannot open " << config.out << " for writing\n";
            return kExitUsage;
        }
        os = &file;
    }
    if (config.format == Format::json)
        write_json(outcome.doc, *os);
    else
        write_csv(outcome.doc, *os);

    if (outcome.verify_failed)
        return kExitVerifyFailed;
    if (!outcome.converged)
        return kExitUnconverged;
    return kExitOk;
}

//---------------------------------------------------------------------------//
}  // namespace hz::cli
