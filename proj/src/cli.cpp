#include "srm/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "srm/checks.hpp"
#include "srm/engine.hpp"
#include "srm/parallel.hpp"

namespace srm::cli {

namespace {

enum class OutputFormat { Csv, Tsv, Pretty };
enum class Precision { Paper, Full };

enum class DistChoice { Normal, Cauchy, Uniform, Beta, Gumbel };
enum class SpectrumChoice { Exponential, PowerLow, PowerHigh, Es, Var };
enum class FamilyChoice { Exponential, PowerLow, PowerHigh };
enum class ModeChoice { Exact, Repro };
enum class RuleChoice { Trapezoid, Simpson };

struct SchemeOptions {
    ModeChoice mode = ModeChoice::Exact;
    RuleChoice rule = RuleChoice::Trapezoid;
    std::int64_t intervals = 100000;
    double truncation = 1e-4;
};

struct OutputOptions {
    OutputFormat format = OutputFormat::Csv;
    Precision precision = Precision::Paper;
    std::string out_path;  // empty = stdout
};

struct DistOptions {
    DistChoice dist = DistChoice::Normal;
    double beta_a = 2.0;
    double beta_b = 4.0;
};

struct SpectrumOptions {
    SpectrumChoice spectrum = SpectrumChoice::Exponential;
    std::optional<double> k;
    std::optional<double> gamma;
    std::optional<double> alpha;
};

void add_scheme_options(CLI::App* sub, SchemeOptions& opts) {
    sub->add_option("--mode", opts.mode, "integration mode (default exact)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, ModeChoice>{{"exact", ModeChoice::Exact},
                                              {"repro", ModeChoice::Repro}},
            CLI::ignore_case));
    sub->add_option("--rule", opts.rule, "composite rule for repro mode")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, RuleChoice>{{"trapezoid", RuleChoice::Trapezoid},
                                              {"simpson", RuleChoice::Simpson}},
            CLI::ignore_case));
    sub->add_option("--n", opts.intervals, "interval count (default 100000)");
    sub->add_option("--hhat", opts.truncation,
                    "endpoint truncation for repro mode (default 1e-4)");
}

void add_output_options(CLI::App* sub, OutputOptions& opts) {
    sub->add_option("--format", opts.format, "csv, tsv or pretty (default csv)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"csv", OutputFormat::Csv},
                                                {"tsv", OutputFormat::Tsv},
                                                {"pretty", OutputFormat::Pretty}},
            CLI::ignore_case));
    sub->add_option("--precision", opts.precision,
                    "paper (3-decimal table cells, 6 significant digits for data) or full")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Precision>{{"paper", Precision::Paper},
                                             {"full", Precision::Full}},
            CLI::ignore_case));
    sub->add_option("--out", opts.out_path, "write output to this file (atomic)");
}

void add_dist_options(CLI::App* sub, DistOptions& opts) {
    sub->add_option("--dist", opts.dist, "loss distribution")
        ->required()
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, DistChoice>{{"normal", DistChoice::Normal},
                                              {"cauchy", DistChoice::Cauchy},
                                              {"uniform", DistChoice::Uniform},
                                              {"beta", DistChoice::Beta},
                                              {"gumbel", DistChoice::Gumbel}},
            CLI::ignore_case));
    sub->add_option("--beta-a", opts.beta_a, "beta shape alpha (default 2)");
    sub->add_option("--beta-b", opts.beta_b, "beta shape beta (default 4)");
}

void add_spectrum_options(CLI::App* sub, SpectrumOptions& opts, bool allow_var) {
    std::map<std::string, SpectrumChoice> choices{{"exp", SpectrumChoice::Exponential},
                                                  {"power-low", SpectrumChoice::PowerLow},
                                                  {"power-high", SpectrumChoice::PowerHigh},
                                                  {"es", SpectrumChoice::Es}};
    if (allow_var) choices.emplace("var", SpectrumChoice::Var);
    sub->add_option("--spectrum", opts.spectrum, "risk spectrum")
        ->required()
        ->transform(CLI::CheckedTransformer(choices, CLI::ignore_case));
    sub->add_option("--k", opts.k, "absolute risk aversion for --spectrum exp");
    sub->add_option("--gamma", opts.gamma, "relative risk aversion for the power spectra");
    sub->add_option("--alpha", opts.alpha, "confidence level for es/var");
}

LossDistribution build_distribution(const DistOptions& opts) {
    switch (opts.dist) {
        case DistChoice::Normal:  return LossDistribution::standard_normal();
        case DistChoice::Cauchy:  return LossDistribution::cauchy();
        case DistChoice::Uniform: return LossDistribution::standard_uniform();
        case DistChoice::Beta:    return LossDistribution::beta(opts.beta_a, opts.beta_b);
        case DistChoice::Gumbel:  return LossDistribution::gumbel_min();
    }
    throw std::logic_error("unreachable distribution choice");
}

double require_param(const std::optional<double>& value, const char* key,
                     const char* spectrum) {
    if (!value) {
        std::ostringstream msg;
        msg << key << ": required for --spectrum " << spectrum;
        throw std::invalid_argument(msg.str());
    }
    return *value;
}

RiskSpectrum build_spectrum(const SpectrumOptions& opts) {
    switch (opts.spectrum) {
        case SpectrumChoice::Exponential:
            return RiskSpectrum::exponential(require_param(opts.k, "--k", "exp"));
        case SpectrumChoice::PowerLow:
            return RiskSpectrum::power_low(require_param(opts.gamma, "--gamma", "power-low"));
        case SpectrumChoice::PowerHigh:
            return RiskSpectrum::power_high(
                require_param(opts.gamma, "--gamma", "power-high"));
        case SpectrumChoice::Es:
            return RiskSpectrum::es_step(require_param(opts.alpha, "--alpha", "es"));
        case SpectrumChoice::Var:
            return RiskSpectrum::var_dirac(require_param(opts.alpha, "--alpha", "var"));
    }
    throw std::logic_error("unreachable spectrum choice");
}

QuadratureScheme build_scheme(const SchemeOptions& opts) {
    if (opts.mode == ModeChoice::Exact) return QuadratureScheme::exact_slice(opts.intervals);
    return QuadratureScheme::repro_grid(opts.rule == RuleChoice::Simpson
                                            ? QuadratureRule::Simpson
                                            : QuadratureRule::Trapezoid,
                                        opts.intervals, opts.truncation);
}

// ---- formatting --------------------------------------------------------

std::string strip_negative_zero(std::string s) {
    if (!s.empty() && s.front() == '-' &&
        s.find_first_not_of("0.", 1) == std::string::npos) {
        s.erase(s.begin());
    }
    return s;
}

std::string format_cell(double v, Precision precision) {
    char buf[40];
    if (precision == Precision::Full)
        std::snprintf(buf, sizeof(buf), "%.17g", v);
    else
        std::snprintf(buf, sizeof(buf), "%.3f", v);
    return strip_negative_zero(buf);
}

std::string format_data(double v, Precision precision) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), precision == Precision::Full ? "%.17g" : "%.6g", v);
    return strip_negative_zero(buf);
}

struct Document {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row_comments;  // pretty mode only
};

std::string render(const Document& doc, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::Csv || format == OutputFormat::Tsv) {
        const char sep = format == OutputFormat::Csv ? ',' : '\t';
        for (std::size_t i = 0; i < doc.header.size(); ++i)
            os << (i ? std::string(1, sep) : "") << doc.header[i];
        os << '\n';
        for (const auto& row : doc.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? std::string(1, sep) : "") << row[i];
            os << '\n';
        }
        return os.str();
    }
    // pretty: padded columns
    std::vector<std::size_t> widths(doc.header.size(), 0);
    const auto grow = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    };
    grow(doc.header);
    for (const auto& row : doc.rows) grow(row);
    const auto emit = [&](const std::vector<std::string>& row, const std::string& comment) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << "  ";
            os << row[i];
            if (i + 1 < row.size() || !comment.empty())
                os << std::string(widths[i] - row[i].size(), ' ');
        }
        if (!comment.empty()) os << "  " << comment;
        os << '\n';
    };
    emit(doc.header, "");
    for (std::size_t r = 0; r < doc.rows.size(); ++r)
        emit(doc.rows[r], r < doc.row_comments.size() ? doc.row_comments[r] : "");
    return os.str();
}

std::string render_key_values(const std::vector<std::pair<std::string, std::string>>& kv,
                              OutputFormat format) {
    Document doc;
    if (format == OutputFormat::Pretty) {
        std::ostringstream os;
        std::size_t width = 0;
        for (const auto& [key, value] : kv) width = std::max(width, key.size());
        for (const auto& [key, value] : kv)
            os << key << ':' << std::string(width - key.size() + 2, ' ') << value << '\n';
        return os.str();
    }
    for (const auto& [key, value] : kv) doc.header.push_back(key);
    doc.rows.emplace_back();
    for (const auto& [key, value] : kv) doc.rows.back().push_back(value);
    return render(doc, format);
}

void deliver(const std::string& text, const OutputOptions& opts, std::ostream& out) {
    if (opts.out_path.empty()) {
        out << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(opts.out_path);
    const fs::path tmp(opts.out_path + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::invalid_argument("--out: cannot write to " + tmp.string());
        f << text;
        if (!f) throw std::invalid_argument("--out: short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::invalid_argument("--out: cannot move output into place at " +
                                    target.string() + ": " + ec.message());
    }
}

// ---- subcommand handlers ------------------------------------------------

int run_compute(const DistOptions& dist_opts, const SpectrumOptions& spec_opts,
                const SchemeOptions& scheme_opts, const OutputOptions& out_opts,
                std::ostream& out) {
    const LossDistribution dist = build_distribution(dist_opts);
    const RiskSpectrum spectrum = build_spectrum(spec_opts);
    const QuadratureScheme scheme = build_scheme(scheme_opts);

    const RiskMeasureResult result = spectrum.kind() == SpectrumKind::VaRDirac
                                         ? var(dist, spectrum.param())
                                         : spectral_risk_measure(dist, spectrum, scheme);

    if (out_opts.format == OutputFormat::Pretty) {
        std::vector<std::pair<std::string, std::string>> kv{
            {"distribution", dist.label()},
            {"spectrum", result.spectrum.label()},
            {"scheme", result.diagnostics ? result.diagnostics->scheme.label() : "exact"},
            {"value", format_cell(result.value, out_opts.precision)},
            {"captured_mass", format_data(result.captured_mass(), out_opts.precision)},
        };
        for (const auto& w : result.warnings) kv.emplace_back("warning", w);
        deliver(render_key_values(kv, out_opts.format), out_opts, out);
        return 0;
    }
    Document doc;
    doc.header = {"value"};
    doc.rows = {{format_cell(result.value, out_opts.precision)}};
    deliver(render(doc, out_opts.format), out_opts, out);
    return 0;
}

int run_table(int id, const OutputOptions& out_opts, std::ostream& out) {
    const Table table = make_table(id);
    Document doc;
    doc.header.push_back(table.parameter_name);
    for (const auto& c : table.column_labels) doc.header.push_back(c);
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        std::vector<std::string> row{table.row_labels[r]};
        for (const auto& cell : table.cells[r])
            row.push_back(format_cell(cell.value, out_opts.precision));
        doc.rows.push_back(std::move(row));
        doc.row_comments.push_back("# heavy-tail: grid-sensitive (cauchy)");
    }
    deliver(render(doc, out_opts.format), out_opts, out);
    return 0;
}

int run_figure(int id, const OutputOptions& out_opts, std::ostream& out) {
    const FigureData fig = figure_data(id);
    Document doc;
    doc.header.push_back(fig.abscissa_name);
    for (const auto& name : fig.series_names) doc.header.push_back(name);
    for (std::size_t i = 0; i < fig.abscissa.size(); ++i) {
        std::vector<std::string> row{format_data(fig.abscissa[i], out_opts.precision)};
        for (const auto& series : fig.series)
            row.push_back(format_data(series[i], out_opts.precision));
        doc.rows.push_back(std::move(row));
    }
    deliver(render(doc, out_opts.format), out_opts, out);
    return 0;
}

int run_sweep(const DistOptions& dist_opts, FamilyChoice family, double from, double to,
              int points, bool log_spaced, const SchemeOptions& scheme_opts,
              const OutputOptions& out_opts, std::ostream& out) {
    if (points < 2) throw std::invalid_argument("--points: need at least 2");
    if (!(from < to)) throw std::invalid_argument("--from: must be less than --to");
    if (log_spaced && !(from > 0.0))
        throw std::invalid_argument("--from: must be positive with --log");

    std::vector<double> params(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        params[static_cast<std::size_t>(i)] =
            log_spaced ? from * std::pow(to / from, t) : from + (to - from) * t;
    }

    const SpectrumFamily fam = family == FamilyChoice::Exponential
                                   ? SpectrumFamily::Exponential
                                   : (family == FamilyChoice::PowerLow
                                          ? SpectrumFamily::PowerLow
                                          : SpectrumFamily::PowerHigh);
    const SweepCurve curve = sweep(build_distribution(dist_opts), fam, params,
                                   build_scheme(scheme_opts));

    Document doc;
    doc.header = {curve.parameter_name, "value"};
    for (const auto& [p, v] : curve.points)
        doc.rows.push_back({format_data(p, out_opts.precision),
                            format_data(v, out_opts.precision)});
    deliver(render(doc, out_opts.format), out_opts, out);
    return 0;
}

int run_check(std::ostream& out) {
    const auto results = checks::all_suites();
    int failures = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        out << (r.passed ? "PASS" : "FAIL") << ' ' << r.name;
        if (!r.detail.empty()) out << " -- " << r.detail;
        out << '\n';
    }
    out << (failures == 0 ? "all checks passed" : "some checks FAILED") << " ("
        << results.size() - static_cast<std::size_t>(failures) << "/" << results.size()
        << ")\n";
    return failures == 0 ? 0 : 1;
}

int run_empirical(const std::string& input, const SpectrumOptions& spec_opts,
                  const OutputOptions& out_opts, std::ostream& out) {
    const LossDistribution dist = read_losses_file(input);
    const RiskSpectrum spectrum = build_spectrum(spec_opts);
    const RiskMeasureResult result = spectrum.kind() == SpectrumKind::VaRDirac
                                         ? var(dist, spectrum.param())
                                         : spectral_risk_measure(dist, spectrum, QuadratureScheme::exact_slice());
    std::vector<std::pair<std::string, std::string>> kv{
        {"n", std::to_string(dist.samples().size())},
        {"spectrum", result.spectrum.label()},
        {"srm", format_data(result.value, out_opts.precision)},
        {"captured_mass", format_data(result.captured_mass(), out_opts.precision)},
    };
    deliver(render_key_values(kv, out_opts.format), out_opts, out);
    return 0;
}

// Expands `<sub> ... --config FILE ...` by splicing the file's key=value
// pairs, as --key=value tokens, right after the subcommand name. Flags
// given on the command line come later and win (TakeLast policy).
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw std::invalid_argument("--config: cannot open " + path);
    std::vector<std::string> expanded;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        const std::size_t eq = line.find('=', start);
        if (eq == std::string::npos || eq == start)
            throw std::invalid_argument("--config: " + path + ":" +
                                        std::to_string(line_no) + ": expected key=value");
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(eq + 1);
        const std::size_t vstart = value.find_first_not_of(" \t");
        value = vstart == std::string::npos ? "" : value.substr(vstart);
        expanded.push_back("--" + key + "=" + value);
    }
    args.insert(args.begin() + 1, expanded.begin(), expanded.end());
    return args;
}

int apply_thread_cap() {
    const char* env = std::getenv("SRM_NUM_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0)
        throw std::invalid_argument(
            std::string("SRM_NUM_THREADS: expected a nonnegative integer, got '") + env +
            "'");
    parallel::set_max_threads(static_cast<int>(v));
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spectral risk measures over analytic and empirical loss distributions"};
    app.require_subcommand(1);

    DistOptions dist_opts;
    SpectrumOptions spec_opts;
    SchemeOptions scheme_opts;
    OutputOptions out_opts;
    int table_id = 1;
    int figure_id = 1;
    FamilyChoice family = FamilyChoice::Exponential;
    double sweep_from = 1.0, sweep_to = 100.0;
    int sweep_points = 20;
    bool sweep_log = false;
    std::string input_path;

    CLI::App* compute = app.add_subcommand("compute", "one risk measure value");
    add_dist_options(compute, dist_opts);
    add_spectrum_options(compute, spec_opts, true);
    add_scheme_options(compute, scheme_opts);
    add_output_options(compute, out_opts);

    CLI::App* table = app.add_subcommand("table", "benchmark table 1, 2 or 3");
    table->add_option("--id", table_id, "table id")->required()->check(CLI::Range(1, 3));
    add_output_options(table, out_opts);

    CLI::App* figure = app.add_subcommand("figure", "benchmark figure data 1-6");
    figure->add_option("--id", figure_id, "figure id")->required()->check(CLI::Range(1, 6));
    add_output_options(figure, out_opts);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "SRM against the aversion parameter");
    add_dist_options(sweep_cmd, dist_opts);
    sweep_cmd->add_option("--family", family, "spectrum family")
        ->required()
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, FamilyChoice>{{"exp", FamilyChoice::Exponential},
                                                {"power-low", FamilyChoice::PowerLow},
                                                {"power-high", FamilyChoice::PowerHigh}},
            CLI::ignore_case));
    sweep_cmd->add_option("--from", sweep_from, "first parameter value")->required();
    sweep_cmd->add_option("--to", sweep_to, "last parameter value")->required();
    sweep_cmd->add_option("--points", sweep_points, "grid size (default 20)");
    sweep_cmd->add_flag("--log", sweep_log, "log-spaced grid");
    add_scheme_options(sweep_cmd, scheme_opts);
    add_output_options(sweep_cmd, out_opts);

    CLI::App* check = app.add_subcommand("check", "run the full property suites");

    CLI::App* empirical = app.add_subcommand("empirical", "SRM of a loss sample file");
    empirical->add_option("--input", input_path, "file with one loss per line")->required();
    add_spectrum_options(empirical, spec_opts, true);
    add_output_options(empirical, out_opts);

    std::string config_path;
    for (CLI::App* sub : {compute, table, figure, sweep_cmd, check, empirical}) {
        sub->add_option("--config", config_path, "flat key=value configuration file");
        for (auto* opt : sub->get_options())
            if (opt->get_expected_min() > 0)
                opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    std::vector<std::string> expanded;
    try {
        expanded = expand_config(args);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_thread_cap();
        if (compute->parsed())
            return run_compute(dist_opts, spec_opts, scheme_opts, out_opts, out);
        if (table->parsed()) return run_table(table_id, out_opts, out);
        if (figure->parsed()) return run_figure(figure_id, out_opts, out);
        if (sweep_cmd->parsed())
            return run_sweep(dist_opts, family, sweep_from, sweep_to, sweep_points,
                             sweep_log, scheme_opts, out_opts, out);
        if (check->parsed()) return run_check(out);
        if (empirical->parsed())
            return run_empirical(input_path, spec_opts, out_opts, out);
        err << "error: no command selected\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace srm::cli
