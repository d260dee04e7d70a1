#include "casimir/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "casimir/analysis.hpp"
#include "casimir/cavity.hpp"

namespace casimir::cli
{

namespace
{

using Json = nlohmann::ordered_json;

const char *verb_name(Verb v)
{
    switch (v) {
    case Verb::Cavity: return "cavity";
    case Verb::Piston: return "piston";
    case Verb::Sweep: return "sweep";
    case Verb::Ycrit: return "ycrit";
    case Verb::Ratio: return "ratio";
    case Verb::Cutoff: return "cutoff";
    }
    return "?";
}

double parse_number(const std::string &s)
{
    double x = 0.0;
    const char *first = s.data();
    const char *last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || ptr != last || !std::isfinite(x))
        throw UsageError("not a number: '" + s + "'");
    return x;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        parts.push_back(cur);
    if (!s.empty() && s.back() == sep)
        parts.emplace_back();
    return parts;
}

double single_value(const std::string &text, const char *flag)
{
    const auto v = parse_values(text);
    if (v.size() != 1)
        throw UsageError(std::string(flag) + " takes a single value");
    return v.front();
}

// A table of numeric rows; `status` is emitted in JSON only so the CSV schema stays fixed.
struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> status;
};

Table sweep_table(const std::vector<SweepRow> &rows)
{
    Table t{{"y", "z", "L_rel", "energy", "dp3", "p_cas", "ratio", "error_bound"}, {}, {}};
    for (const auto &r : rows) {
        t.rows.push_back({r.y, r.z, r.L_rel, r.energy, r.dp3, r.p_cas, r.ratio, r.error_bound});
        t.status.push_back(r.status);
    }
    return t;
}

Json json_number(double x)
{
    if (!std::isfinite(x))
        return nullptr;
    return std::strtod(format_number(x).c_str(), nullptr);
}

Json json_values(const std::vector<double> &v)
{
    Json a = Json::array();
    for (double x : v)
        a.push_back(json_number(x));
    return a;
}

Json parameters(const Command &c)
{
    Json p = Json::object();
    switch (c.verb) {
    case Verb::Cavity:
        p["a1"] = 1.0;
        p["a2"] = json_number(c.a2);
        p["a3"] = json_number(c.a3);
        p["sigma"] = json_number(c.sigma.empty() ? 0.0 : c.sigma.front());
        break;
    case Verb::Ycrit:
        p["L_rel"] = json_number(c.L_rel);
        p["y_lo"] = json_number(c.y_lo);
        p["y_hi"] = json_number(c.y_hi);
        break;
    case Verb::Cutoff:
        p["L_rel"] = json_number(c.L_rel);
        p["y"] = json_number(c.y.front());
        p["sigma"] = json_values(c.sigma);
        p["z"] = json_values(c.z);
        break;
    default:
        p["L_rel"] = json_number(c.L_rel);
        p["y"] = json_values(c.y);
        p["z"] = json_values(c.z);
        p["ratio_ref"] = c.ref == RatioReference::NearestWall ? "nearest-wall" : "interface";
        break;
    }
    p["strategy"] = c.cfg.strategy == Strategy::Direct ? "direct" : "accelerated";
    p["tol"] = json_number(c.cfg.rel_tol);
    p["max_shell"] = c.cfg.max_shell;
    p["min_shell"] = c.cfg.min_shell;
    p["length_unit"] = "a1";
    if (c.a1_micrometers)
        p["a1_micrometers"] = json_number(*c.a1_micrometers);
    return p;
}

std::string render(const Command &c, const Table &t)
{
    std::ostringstream os;
    if (c.format == Format::Csv) {
        for (std::size_t j = 0; j < t.columns.size(); ++j)
            os << (j ? "," : "") << t.columns[j];
        os << '\n';
        for (const auto &row : t.rows) {
            for (std::size_t j = 0; j < row.size(); ++j)
                os << (j ? "," : "") << format_number(row[j]);
            os << '\n';
        }
        return os.str();
    }
    Json doc = Json::object();
    doc["command"] = verb_name(c.verb);
    doc["parameters"] = parameters(c);
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        Json r = Json::object();
        for (std::size_t j = 0; j < t.columns.size(); ++j)
            r[t.columns[j]] = json_number(t.rows[i][j]);
        if (!t.status.empty())
            r["status"] = t.status[i];
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["version"] = kVersion;
    os << doc.dump(2) << '\n';
    return os.str();
}

void write_atomically(const std::string &path, const std::string &text)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << text;
        f.flush();
        if (!f) {
            f.close();
            fs::remove(tmp);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
    }
}

Table compute(const Command &c, std::ostream &err, int &status)
{
    switch (c.verb) {
    case Verb::Cavity: {
        const CavityGeometry g{1.0, c.a2, c.a3};
        const double sigma = c.sigma.empty() ? 0.0 : c.sigma.front();
        const StressState s = sigma == 0.0 ? stress_state(g, c.cfg)
                                           : regularized_stress_state(g, Regulator{sigma}, c.cfg);
        return {{"a1", "a2", "a3", "sigma", "energy", "t11", "t22", "t33", "error_bound"},
                {{1.0, c.a2, c.a3, sigma, s.energy_density, s.t11, s.t22, s.t33, s.error_bound}},
                {}};
    }
    case Verb::Piston: {
        const PistonGeometry p{1.0, c.y.front(), c.L_rel, c.z.front()};
        const PistonObservables o = piston_observables(p, c.cfg, c.ref);
        SweepRow r;
        r.y = p.a2();
        r.z = p.a3();
        r.L_rel = p.length();
        r.energy = o.energy_rel_midpoint;
        r.dp3 = o.dp3;
        r.p_cas = o.p_cas;
        r.ratio = o.ratio;
        r.error_bound = o.error_bound;
        return sweep_table({r});
    }
    case Verb::Ratio:
    case Verb::Sweep: {
        SweepSpec spec{c.L_rel, c.y, c.z, c.cfg, c.ref};
        const auto rows = sweep(spec);
        std::size_t failed = 0;
        for (const auto &r : rows)
            if (!r.ok()) {
                ++failed;
                err << "row y=" << format_number(r.y) << " z=" << format_number(r.z) << ": " << r.status << '\n';
            }
        if (failed == rows.size())
            status = 1;
        return sweep_table(rows);
    }
    case Verb::Ycrit: {
        const CriticalRatioResult r = find_critical_ratio(c.L_rel, c.cfg, c.y_lo, c.y_hi);
        return {{"L_rel", "y_crit", "y_lo", "y_hi", "iterations", "criterion_lo", "criterion_hi"},
                {{c.L_rel, r.y_crit, r.y_lo, r.y_hi, static_cast<double>(r.iterations), r.criterion_lo,
                  r.criterion_hi}},
                {}};
    }
    case Verb::Cutoff: {
        CutoffSpec spec{c.L_rel, c.y.front(), c.sigma, c.z, c.cfg};
        const auto rows = cutoff_study(spec);
        Table t{{"sigma", "y", "z", "L_rel", "energy", "dp3", "p_cas", "ratio", "error_bound"}, {}, {}};
        std::size_t failed = 0;
        for (const auto &cr : rows) {
            const SweepRow &r = cr.row;
            t.rows.push_back({cr.sigma, r.y, r.z, r.L_rel, r.energy, r.dp3, r.p_cas, r.ratio, r.error_bound});
            t.status.push_back(r.status);
            if (!r.ok()) {
                ++failed;
                err << "cell sigma=" << format_number(cr.sigma) << " z=" << format_number(r.z) << ": "
                    << r.status << '\n';
            }
        }
        if (failed == rows.size())
            status = 1;
        return t;
    }
    }
    throw std::logic_error("unhandled verb");
}

void validate(const Command &c)
{
    c.cfg.validate();
    if (c.a1_micrometers && !(*c.a1_micrometers > 0.0))
        throw ValidationError("--a1-micrometers must be positive");
    switch (c.verb) {
    case Verb::Cavity:
        CavityGeometry{1.0, c.a2, c.a3};
        if (c.sigma.size() > 1)
            throw ValidationError("--sigma takes a single value for cavity");
        for (double s : c.sigma)
            Regulator{s};
        break;
    case Verb::Piston:
        PistonGeometry{1.0, c.y.front(), c.L_rel, c.z.front()};
        break;
    case Verb::Ratio:
    case Verb::Sweep:
        SweepSpec{c.L_rel, c.y, c.z, c.cfg, c.ref}.validate();
        break;
    case Verb::Ycrit:
        if (!(c.L_rel > 0.0))
            throw ValidationError("--L must be positive");
        if (!(c.y_lo > 0.0 && c.y_lo < c.y_hi))
            throw ValidationError("need 0 < --y-lo < --y-hi");
        break;
    case Verb::Cutoff:
        CutoffSpec{c.L_rel, c.y.front(), c.sigma, c.z, c.cfg}.validate();
        break;
    }
}

} // namespace

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (x == 0.0)
        return "0"; // also folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<double> parse_values(const std::string &text)
{
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 4)
            throw UsageError("range must be start:stop:lin|log:count, got '" + text + "'");
        const double start = parse_number(parts[0]);
        const double stop = parse_number(parts[1]);
        const double count_d = parse_number(parts[3]);
        if (count_d < 1 || count_d != std::floor(count_d) || count_d > 1e7)
            throw UsageError("range count must be a positive integer");
        const auto count = static_cast<std::size_t>(count_d);
        const bool log_spacing = parts[2] == "log";
        if (!log_spacing && parts[2] != "lin")
            throw UsageError("range spacing must be lin or log");
        if (log_spacing && !(start > 0.0 && stop > 0.0))
            throw UsageError("log range needs positive endpoints");
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            v[i] = log_spacing ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                               : start + t * (stop - start);
        }
        v.front() = start;
        if (count > 1)
            v.back() = stop;
        return v;
    }
    std::vector<double> v;
    for (const auto &p : split(text, ','))
        v.push_back(parse_number(p));
    if (v.empty())
        throw UsageError("empty value list");
    return v;
}

Command parse(const std::vector<std::string> &args)
{
    CLI::App app{"Casimir energies and stresses in rectangular cavities and pistons", "casimir"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Command c;
    std::string strategy = "accelerated", format = "json", ratio_ref = "interface";
    std::string y_text, z_text, sigma_text;
    std::string output;
    double a1_um = 0.0;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--tol", c.cfg.rel_tol, "relative tolerance")->capture_default_str();
        sub->add_option("--strategy", strategy, "direct or accelerated")
            ->check(CLI::IsMember({"direct", "accelerated"}))
            ->capture_default_str();
        sub->add_option("--max-shell", c.cfg.max_shell, "cap on max |n_i|")->capture_default_str();
        sub->add_option("--min-shell", c.cfg.min_shell, "shells summed before convergence")->capture_default_str();
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
        sub->add_option("--output", output, "write to this file instead of standard output");
        sub->add_option("--a1-micrometers", a1_um, "physical size of a1, recorded in JSON metadata");
    };
    auto with_ref = [&](CLI::App *sub) {
        sub->add_option("--ratio-ref", ratio_ref, "interface or nearest-wall")
            ->check(CLI::IsMember({"interface", "nearest-wall"}))
            ->capture_default_str();
    };

    auto *cavity = app.add_subcommand("cavity", "energy density and stresses of one cavity (a1 = 1)");
    cavity->add_option("--a2", c.a2, "side a2")->capture_default_str();
    cavity->add_option("--a3", c.a3, "side a3")->required();
    cavity->add_option("--sigma", sigma_text, "regulator; 0 gives finite parts");
    common(cavity);

    auto *piston = app.add_subcommand("piston", "piston observables at one interface position");
    piston->add_option("--L", c.L_rel, "piston length")->capture_default_str();
    piston->add_option("--y", y_text, "a2 / a1")->required();
    piston->add_option("--z", z_text, "a3 / a1")->required();
    with_ref(piston);
    common(piston);

    auto *ratio = app.add_subcommand("ratio", "dp3 / P_Cas along z for one aspect ratio");
    ratio->add_option("--L", c.L_rel, "piston length")->capture_default_str();
    ratio->add_option("--y", y_text, "a2 / a1")->required();
    ratio->add_option("--z", z_text, "a3 / a1, value or range")->required();
    with_ref(ratio);
    common(ratio);

    auto *sweep_cmd = app.add_subcommand("sweep", "grid over y and z");
    sweep_cmd->add_option("--L", c.L_rel, "piston length")->capture_default_str();
    sweep_cmd->add_option("--y", y_text, "a2 / a1, value or range")->required();
    sweep_cmd->add_option("--z", z_text, "a3 / a1, value or range")->required();
    with_ref(sweep_cmd);
    common(sweep_cmd);

    auto *ycrit = app.add_subcommand("ycrit", "critical aspect ratio of the midpoint curvature");
    ycrit->add_option("--L", c.L_rel, "piston length")->capture_default_str();
    ycrit->add_option("--y-lo", c.y_lo, "lower bracket end")->capture_default_str();
    ycrit->add_option("--y-hi", c.y_hi, "upper bracket end")->capture_default_str();
    common(ycrit);

    auto *cutoff = app.add_subcommand("cutoff", "regularized piston observables against sigma = 0");
    cutoff->add_option("--L", c.L_rel, "piston length")->capture_default_str();
    cutoff->add_option("--y", y_text, "a2 / a1")->required();
    cutoff->add_option("--sigma", sigma_text, "regulator values, list or range")->required();
    cutoff->add_option("--z", z_text, "a3 / a1, value or range")->required();
    common(cutoff);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForVersion &) {
        throw HelpRequested(std::string(kVersion) + "\n");
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    const CLI::App *chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    c.verb = name == "cavity" ? Verb::Cavity
             : name == "piston" ? Verb::Piston
             : name == "ratio"  ? Verb::Ratio
             : name == "sweep"  ? Verb::Sweep
             : name == "ycrit"  ? Verb::Ycrit
                                : Verb::Cutoff;

    c.cfg.strategy = strategy == "direct" ? Strategy::Direct : Strategy::Accelerated;
    c.format = format == "csv" ? Format::Csv : Format::Json;
    c.ref = ratio_ref == "nearest-wall" ? RatioReference::NearestWall : RatioReference::InterfacePosition;
    if (!output.empty())
        c.output = output;
    if (chosen->count("--a1-micrometers"))
        c.a1_micrometers = a1_um;

    switch (c.verb) {
    case Verb::Cavity:
        c.y = {c.a2};
        if (!sigma_text.empty())
            c.sigma = {single_value(sigma_text, "--sigma")};
        break;
    case Verb::Piston:
        c.y = {single_value(y_text, "--y")};
        c.z = {single_value(z_text, "--z")};
        break;
    case Verb::Ratio:
        c.y = {single_value(y_text, "--y")};
        c.z = parse_values(z_text);
        break;
    case Verb::Sweep:
        c.y = parse_values(y_text);
        c.z = parse_values(z_text);
        break;
    case Verb::Ycrit:
        break;
    case Verb::Cutoff:
        c.y = {single_value(y_text, "--y")};
        c.sigma = parse_values(sigma_text);
        c.z = parse_values(z_text);
        break;
    }

    try {
        validate(c);
    } catch (const ValidationError &e) {
        throw UsageError(e.what());
    }
    return c;
}

Command parse(int argc, const char *const *argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return parse(args);
}

int run(const Command &cmd, std::ostream &out, std::ostream &err)
{
    try {
        int status = 0;
        const Table t = compute(cmd, err, status);
        const std::string text = render(cmd, t);
        if (cmd.output)
            write_atomically(*cmd.output, text);
        else
            out << text << std::flush;
        return status;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    Command cmd;
    try {
        cmd = parse(argc, argv);
    } catch (const HelpRequested &h) {
        out << h.what();
        return 0;
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    return run(cmd, out, err);
}

} // namespace casimir::cli
