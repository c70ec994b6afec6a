//---------------------------------------------------------------------------//
//! \file hz/cli.hpp
//! Command-line front end: argument parsing, dispatch, table output.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "quadrature.hpp"

namespace hz::cli
{
//---------------------------------------------------------------------------//
enum class Command
{
    expect,
    sweep,
    intensity,
    limits,
    simulate,
    verify,
};

enum class Format
{
    csv,
    json,
};

enum class LimitKind
{
    f,
    g,
    F,
    diag,
};

enum class GridVariable
{
    w,
    t,
};

struct RunConfig
{
    Command command{Command::expect};
    std::vector<int> n;
    std::vector<int> m;
    double tol{1e-8};
    //! False when tol is the default; large degrees then use 1e-6
    bool tol_explicit{false};
    long samples{1000};
    std::uint64_t seed{42};
    ScalingMode mode{ScalingMode::fixed_m};
    GridVariable variable{GridVariable::w};
    LimitKind which{LimitKind::f};
    double lo{0};
    double hi{0};
    int points{201};
    std::string out;  //!< empty: stdout
    Format format{Format::csv};
};

//! Invalid command line; the message names the offending flag.
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Thrown for an explicit --help; what() holds the help text
class HelpRequested : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnconverged = 3;

//! Parse arguments (without the program name). Throws UsageError.
RunConfig parse_args(std::vector<std::string> const& args);

std::string usage();

//! Run a validated config, writing to config.out or \p fallback.
int run_command(RunConfig const& config, std::ostream& fallback);

//---------------------------------------------------------------------------//
// Output documents
//---------------------------------------------------------------------------//

using Cell = std::variant<long, double, std::string, bool>;

struct Table
{
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Document
{
    nlohmann::json metadata;
    std::vector<Table> tables;
};

nlohmann::json config_to_json(RunConfig const& config);

//! "%.17g" rendering used for every floating-point CSV field.
std::string format_double(double value);

/*!
 * CSV layout: a "# " line holding the metadata as compact JSON, then for
 * each table a "# table: <name>" line, a header row and the data rows;
 * tables are separated by a blank line.
 */
void write_csv(Document const& doc, std::ostream& os);

//! {"metadata": {...}, "tables": {"<name>": [{column: value, ...}, ...]}}
void write_json(Document const& doc, std::ostream& os);

//---------------------------------------------------------------------------//
// Invariant suite behind `verify`
//---------------------------------------------------------------------------//

struct VerifyResult
{
    std::string property;
    bool passed;
    long cases;
    long failures;
    std::string detail;
};

std::vector<VerifyResult> run_verify_suite(long samples, std::uint64_t seed);

//---------------------------------------------------------------------------//
}  // namespace hz::cli
