#ifndef CASIMIR_CLI_HPP
#define CASIMIR_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/piston.hpp"
#include "casimir/sumkernel.hpp"

namespace casimir::cli
{

inline constexpr const char *kVersion = "0.1.0";

enum class Verb
{
    Cavity,
    Piston,
    Sweep,
    Ycrit,
    Ratio,
    Cutoff
};

enum class Format
{
    Json,
    Csv
};

class UsageError : public ValidationError
{
public:
    using ValidationError::ValidationError;
};

// Thrown by parse() for --help; what() holds the help text.
class HelpRequested : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// All lengths are multiples of a1 (a1 = 1).
struct Command
{
    Verb verb = Verb::Piston;
    double L_rel = 5.0;
    std::vector<double> y{1.0};
    std::vector<double> z;
    double a2 = 1.0, a3 = 1.0; // cavity verb
    std::vector<double> sigma; // cavity: one value; cutoff: the regulated columns
    double y_lo = 0.005, y_hi = 1.0;
    SumConfig cfg;
    RatioReference ref = RatioReference::InterfacePosition;
    Format format = Format::Json;
    std::optional<std::string> output;
    std::optional<double> a1_micrometers;
};

// A plain number, a comma list, or start:stop:lin|log:count.
std::vector<double> parse_values(const std::string &text);

Command parse(const std::vector<std::string> &args); // args exclude the program name
Command parse(int argc, const char *const *argv);

// Runs a validated command; returns the exit status (0 ok, 1 computation failure, 2 usage).
int run(const Command &cmd, std::ostream &out, std::ostream &err);

// parse + run with all errors mapped to exit codes.
int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

// Number rendering shared by both formats: 12 significant digits, "nan"/"inf" spelled out.
std::string format_number(double x);

} // namespace casimir::cli

#endif
