// imdd: bias, waveform, eye, SER and gain tables for bandlimited IM/DD pulses.

#include "reports.hpp"

#include "imdd/errors.hpp"
#include "imdd/version.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

namespace fs = std::filesystem;
using namespace imdd;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;

struct RunConfig {
    std::string pulse = "rc";
    std::string alpha = "0.6";
    std::vector<int> m{2};
    std::string scenario = "equal-eye";
    std::vector<std::string> receiver;
    double perr = 1e-6;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    std::optional<double> a;
    std::optional<double> mu;
    double n0 = 1.0;
    std::size_t n = 0;  // 0: per-command default
    int rate = 32;
    bool debug_columns = false;
    std::string figure;
};

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Receiver> receivers(const RunConfig& c) {
    std::vector<Receiver> out;
    for (const auto& r : c.receiver) out.push_back(parse_receiver(r));
    return out;
}

PulseSpec single_pulse(const RunConfig& c) {
    const auto fams = reports::parse_families(c.pulse);
    const auto alphas = reports::parse_grid(c.alpha);
    if (fams.size() != 1 || alphas.size() != 1) throw Usage("this command takes a single --pulse and --alpha");
    return PulseSpec(fams.front(), alphas.front());
}

int single_m(const RunConfig& c) {
    if (c.m.size() != 1) throw Usage("this command takes a single --m");
    return c.m.front();
}

// Resolve --out (or $IMDD_OUTPUT_DIR/<command>.<ext>); empty means stdout.
fs::path output_path(const RunConfig& c, const std::string& command) {
    if (!c.out.empty()) return c.out;
    if (const char* dir = std::getenv("IMDD_OUTPUT_DIR"); dir && *dir) {
        return fs::path(dir) / (command + (c.format == "json" ? ".json" : ".csv"));
    }
    return {};
}

// Fail before computing when the destination cannot be written.
void check_writable(const fs::path& p) {
    if (p.empty()) return;
    const fs::path parent = p.has_parent_path() ? p.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(parent, ec);
    std::ofstream probe(p, std::ios::app);
    if (!probe) throw Usage("cannot write output file " + p.string());
}

void summarize(const std::string& command, const reports::Table& t, double seconds) {
    std::cerr << command << ": " << t.rows.size() << " rows written";
    const auto it = std::find(t.columns.begin(), t.columns.end(), "gain_db");
    if (it != t.columns.end()) {
        const auto col = static_cast<std::size_t>(it - t.columns.begin());
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& row : t.rows) {
            const double g = std::get<double>(row[col]);
            if (std::isfinite(g)) {
                lo = std::min(lo, g);
                hi = std::max(hi, g);
            }
        }
        if (lo <= hi) std::cerr << ", gain " << reports::format_number(lo) << " .. " << reports::format_number(hi) << " dB";
    }
    if (t.failed_rows > 0) std::cerr << ", " << t.failed_rows << " failed (see error column)";
    std::cerr << ", " << seconds << " s\n";
}

int run(const std::string& command, const RunConfig& c) {
    const auto format = reports::parse_format(c.format);
    const auto start = std::chrono::steady_clock::now();

    if (command == "reproduce") {
        const char* env = std::getenv("IMDD_OUTPUT_DIR");
        const fs::path dir = !c.out.empty() ? fs::path(c.out) : (env && *env ? fs::path(env) : fs::path("."));
        for (const auto& p : reports::reproduce(c.figure, dir, format)) std::cerr << "wrote " << p.string() << '\n';
        return 0;
    }

    const fs::path path = output_path(c, command);
    check_writable(path);

    reports::Table table;
    if (command == "bias") {
        reports::BiasRequest r;
        r.families = reports::parse_families(c.pulse);
        r.alphas = reports::parse_grid(c.alpha);
        r.m_values = c.m;
        table = reports::bias_table(r);
    } else if (command == "gain") {
        SweepRequest r;
        r.scenario = parse_scenario(c.scenario);
        r.families = reports::parse_families(c.pulse);
        r.alphas = reports::parse_grid(c.alpha);
        r.m_values = c.m;
        r.p_err = c.perr;
        r.receivers = receivers(c);
        table = reports::gain_table(r, c.debug_columns);
    } else if (command == "ser") {
        reports::SerRequest r;
        r.families = reports::parse_families(c.pulse);
        r.alphas = reports::parse_grid(c.alpha);
        r.m_values = c.m;
        r.receivers = receivers(c);
        r.amp = c.a;
        r.target = c.perr;
        r.n0 = c.n0;
        r.n_symbols = c.n ? c.n : 100000;
        r.seed = c.seed;
        table = reports::ser_table(r);
    } else if (command == "waveform") {
        reports::WaveformRequest r;
        r.pulse = single_pulse(c);
        r.m = single_m(c);
        r.n_symbols = c.n ? c.n : 64;
        r.rate = c.rate;
        r.seed = c.seed;
        r.amp = c.a;
        r.mu = c.mu;
        table = reports::waveform_table(r);
    } else if (command == "eye") {
        reports::EyeRequest r;
        r.pulse = single_pulse(c);
        r.m = single_m(c);
        const auto rx = receivers(c);
        if (rx.size() > 1) throw Usage("eye takes a single --receiver");
        if (!rx.empty()) r.receiver = rx.front();
        r.n_traces = c.n ? c.n : 64;
        r.rate = c.rate;
        r.seed = c.seed;
        table = reports::eye_table(r);
    }

    if (path.empty()) {
        reports::write(std::cout, table, format);
    } else {
        std::ofstream out(path, std::ios::trunc);
        reports::write(out, table, format);
    }
    summarize(command, table, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bias, waveform, SER and optical power gain tables for bandlimited IM/DD pulses"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig c;
    auto common = [&](CLI::App* s) {
        s->add_option("--pulse", c.pulse, "pulse family list (rc,btn,pl,poly,s2,src,sdj,rrc,xia) or 'all'")
            ->capture_default_str();
        s->add_option("--alpha", c.alpha, "roll-off: value or start:stop:step")->capture_default_str();
        s->add_option("--m", c.m, "modulation order(s), M-PAM {0..M-1}")->capture_default_str()->delimiter(',');
        s->add_option("--out", c.out, "output file (default: stdout, or $IMDD_OUTPUT_DIR/<command>.<format>)");
        s->add_option("--format", c.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    };

    auto* bias = app.add_subcommand("bias", "minimum DC bias over a roll-off grid");
    common(bias);

    auto* gain = app.add_subcommand("gain", "optical power gain relative to S2/OOK");
    common(gain);
    gain->add_option("--scenario", c.scenario, "equal-eye or equal-ser")->capture_default_str();
    gain->add_option("--receiver", c.receiver, "sampling and/or matched (default: per pulse)")->delimiter(',');
    gain->add_option("--perr", c.perr, "target symbol error probability (equal-ser)")->capture_default_str();
    gain->add_flag("--debug-columns", c.debug_columns, "add the gain without the reference's factor 2");

    auto* ser = app.add_subcommand("ser", "Monte Carlo vs analytic symbol error rate");
    common(ser);
    ser->add_option("--receiver", c.receiver, "sampling and/or matched (default: per pulse)")->delimiter(',');
    ser->add_option("--a", c.a, "amplitude A (default: tuned to --perr)");
    ser->add_option("--perr", c.perr, "analytic SER the amplitude is tuned to when --a is absent");
    ser->add_option("--n0", c.n0, "noise density N0")->capture_default_str();
    ser->add_option("--n", c.n, "symbols per point (default 100000)");
    ser->add_option("--seed", c.seed, "RNG seed")->capture_default_str();

    auto* waveform = app.add_subcommand("waveform", "transmitted intensity x(t) for random symbols");
    common(waveform);
    waveform->add_option("--a", c.a, "amplitude A (default 1)");
    waveform->add_option("--mu", c.mu, "bias (default: minimum required)");
    waveform->add_option("--n", c.n, "payload symbols (default 64)");
    waveform->add_option("--rate", c.rate, "samples per symbol")->capture_default_str();
    waveform->add_option("--seed", c.seed, "RNG seed")->capture_default_str();

    auto* eye = app.add_subcommand("eye", "noise-free eye diagram traces");
    common(eye);
    eye->add_option("--receiver", c.receiver, "sampling or matched");
    eye->add_option("--n", c.n, "number of traces (default 64)");
    eye->add_option("--rate", c.rate, "samples per symbol")->capture_default_str();
    eye->add_option("--seed", c.seed, "RNG seed")->capture_default_str();

    auto* repro = app.add_subcommand("reproduce", "write the data behind a figure (fig2 .. fig6)");
    repro->add_option("figure", c.figure, "fig2, fig3, fig4, fig5 or fig6")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6"}));
    repro->add_option("--out", c.out, "output directory (default: $IMDD_OUTPUT_DIR or .)");
    repro->add_option("--format", c.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), c);
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ContractError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
