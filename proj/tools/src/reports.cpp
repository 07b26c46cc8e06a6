#include "reports.hpp"

#include "imdd/bias.hpp"
#include "imdd/errors.hpp"
#include "imdd/link.hpp"
#include "imdd/version.hpp"
#include "imdd/waveform.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <tuple>

namespace imdd::reports {

namespace {

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
        throw DomainError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<Receiver> default_receivers(const PulseSpec& pulse) {
    const PulseMetadata meta = metadata(pulse);
    std::vector<Receiver> out;
    if (meta.is_nyquist) out.push_back(Receiver::Sampling);
    if (meta.is_root_nyquist) out.push_back(Receiver::MatchedFilter);
    return out;
}

std::string name(PulseFamily f) { return std::string(to_string(f)); }

void sort_rows(Table& t, const std::vector<std::size_t>& key_columns) {
    auto key = [&](const std::vector<Cell>& row) {
        std::vector<Cell> k;
        for (std::size_t c : key_columns) k.push_back(row[c]);
        return k;
    };
    std::stable_sort(t.rows.begin(), t.rows.end(),
                     [&](const auto& a, const auto& b) { return key(a) < key(b); });
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) return {parse_double(parts[0])};
    if (parts.size() != 3) throw DomainError("grid must be 'value' or 'start:stop:step', got '" + std::string(text) + "'");
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0)) throw DomainError("grid step must be positive");
    if (stop < start) throw DomainError("grid stop lies below start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    if (n > 1'000'000) throw DomainError("grid has more than 10^6 points");
    std::vector<double> out;
    out.reserve(n + 1);
    // Multiply rather than accumulate so 0.3:1.0:0.005 hits 1.0 exactly enough
    // to reproduce across runs; round to 12 digits to drop representation noise.
    for (std::size_t i = 0; i <= n; ++i) {
        const double v = start + static_cast<double>(i) * step;
        out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
}

std::vector<PulseFamily> parse_families(std::string_view text) {
    if (text == "all") return {kAllFamilies.begin(), kAllFamilies.end()};
    std::vector<PulseFamily> out;
    for (auto part : split(text, ',')) {
        const PulseFamily f = parse_pulse_family(part);
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    return out;
}

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw DomainError("format must be csv or json, got '" + std::string(name) + "'");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void write_csv(std::ostream& out, const Table& table) {
    out << "# imdd " << kVersion << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out << format_number(v);
                    } else if constexpr (std::is_same_v<T, std::string>) {
                        // Error messages may contain commas or quotes.
                        if (v.find_first_of(",\"\n") == std::string::npos) {
                            out << v;
                        } else {
                            out << '"';
                            for (char c : v) out << (c == '"' ? "\"\"" : std::string(1, c == '\n' ? ' ' : c));
                            out << '"';
                        }
                    } else {
                        out << v;
                    }
                },
                row[i]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        r[table.columns[i]] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
                    } else {
                        r[table.columns[i]] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(r));
    }
    nlohmann::ordered_json doc;
    doc["generator"] = std::string("imdd ") + std::string(kVersion);
    doc["kind"] = table.kind;
    doc["columns"] = table.columns;
    doc["rows"] = rows;
    out << doc.dump(2) << '\n';
}

void write(std::ostream& out, const Table& table, Format format) {
    if (format == Format::Csv) {
        write_csv(out, table);
    } else {
        write_json(out, table);
    }
}

Table bias_table(const BiasRequest& request) {
    Table t{"bias", {"pulse", "alpha", "m", "mu", "mu_over_a_hat", "argmax_t", "k_trunc", "error"}, {}, 0};
    bool diverged = false;
    for (PulseFamily f : request.families) {
        for (int m : request.m_values) {
            const auto c = Constellation::pam(m);
            for (double a : request.alphas) {
                try {
                    const auto s = required_bias(PulseSpec(f, a), c);
                    t.rows.push_back({name(f), a, std::int64_t{m}, s.mu, s.mu / c.a_hat(), s.argmax_t,
                                      std::int64_t{s.k_trunc}, std::string()});
                } catch (const NumericalError& e) {
                    diverged = diverged || dynamic_cast<const DivergenceError*>(&e) != nullptr;
                    ++t.failed_rows;
                    const double nan = std::nan("");
                    t.rows.push_back({name(f), a, std::int64_t{m}, nan, nan, nan, std::int64_t{0}, std::string(e.what())});
                }
            }
        }
    }
    if (t.failed_rows == t.rows.size() && diverged) {
        throw DivergenceError(std::get<std::string>(t.rows.front().back()));
    }
    if (t.failed_rows == 0) {
        for (auto& row : t.rows) row.pop_back();
        t.columns.pop_back();
    }
    sort_rows(t, {0, 1, 2});
    return t;
}

Table gain_table(const SweepRequest& request, bool debug_columns) {
    const auto points = sweep(request);
    Table t{"gain", {"scenario", "receiver", "pulse", "alpha", "m", "b_tb", "gain_db", "mu", "q_bar", "q_zero"}, {}, 0};
    if (debug_columns) t.columns.push_back("gain_unreferenced_db");
    for (const auto& g : points) {
        if (!g.error.empty()) ++t.failed_rows;
    }
    if (t.failed_rows > 0) t.columns.push_back("error");
    for (const auto& g : points) {
        std::vector<Cell> row{std::string(to_string(g.scenario)), std::string(to_string(g.receiver)), name(g.family),
                              g.alpha, std::int64_t{g.m}, g.b_tb, g.gain_db, g.mu, g.q_bar, g.q_zero};
        if (debug_columns) row.emplace_back(g.gain_unreferenced_db);
        if (t.failed_rows > 0) row.emplace_back(g.error);
        t.rows.push_back(std::move(row));
    }
    sort_rows(t, {2, 3, 4, 1});
    return t;
}

Table ser_table(const SerRequest& request) {
    Table t{"ser", {"pulse", "alpha", "M", "receiver", "A", "N0", "p_analytic", "p_hat", "ci95", "n"}, {}, 0};
    for (PulseFamily f : request.families) {
        for (double a : request.alphas) {
            const PulseSpec pulse(f, a);
            const auto receivers = request.receivers.empty() ? default_receivers(pulse) : request.receivers;
            for (int m : request.m_values) {
                for (Receiver rx : receivers) {
                    LinkConfig cfg{pulse, Constellation::pam(m)};
                    cfg.receiver = rx;
                    cfg.n0 = request.n0;
                    cfg.seed = request.seed;
                    cfg.amp_a = request.amp ? *request.amp : amplitude_for_ser(cfg, request.target);
                    const auto e = monte_carlo_ser(cfg, request.n_symbols);
                    t.rows.push_back({name(f), a, std::int64_t{m}, std::string(to_string(rx)), cfg.amp_a, cfg.n0,
                                      e.p_analytic, e.p_hat, e.ci95, static_cast<std::int64_t>(e.n_symbols)});
                }
            }
        }
    }
    sort_rows(t, {0, 1, 2, 3});
    return t;
}

Table waveform_table(const WaveformRequest& request) {
    const auto c = Constellation::pam(request.m);
    const PulseSpec& p = request.pulse;
    const int guard = support_symbols(p);
    SynthesisOptions o;
    o.amp = request.amp.value_or(1.0);
    o.mu = request.mu ? *request.mu : required_bias(p, c).mu;
    o.rate = request.rate;
    o.guard = guard;
    const auto symbols = random_symbols(c, request.n_symbols + 2 * static_cast<std::size_t>(guard), request.seed);
    const auto w = synthesize(p, c, symbols, o);
    Table t{"waveform", {"t", "value"}, {}, 0};
    const std::size_t first = w.first_symbol * static_cast<std::size_t>(w.rate);
    const auto payload = w.payload();
    for (std::size_t i = 0; i < payload.size(); ++i) {
        // Time measured from the first payload symbol.
        t.rows.push_back({w.time(first + i) - w.time(first), payload[i]});
    }
    return t;
}

Table eye_table(const EyeRequest& request) {
    const auto e = eye_diagram(request.pulse, Constellation::pam(request.m), request.receiver, request.n_traces,
                               request.rate, request.seed);
    Table t{"eye", {"trace", "t", "value"}, {}, 0};
    for (std::size_t j = 0; j < e.traces.size(); ++j) {
        for (std::size_t i = 0; i < e.traces[j].size(); ++i) {
            t.rows.push_back({static_cast<std::int64_t>(j), e.time(i), e.traces[j][i]});
        }
    }
    return t;
}

std::vector<std::filesystem::path> reproduce(std::string_view figure, const std::filesystem::path& dir, Format format) {
    std::filesystem::create_directories(dir);
    const std::string ext = format == Format::Csv ? ".csv" : ".json";
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& stem, const Table& t) {
        const auto path = dir / (stem + ext);
        std::ofstream out(path);
        if (!out) throw DomainError("cannot write " + path.string());
        write(out, t, format);
        written.push_back(path);
    };
    const auto alphas = parse_grid("0.01:1:0.005");

    if (figure == "fig2") {
        WaveformRequest w;
        w.pulse = PulseSpec(PulseFamily::RC, 0.6);
        w.n_symbols = 32;
        w.seed = 2;
        emit("fig2_rc_biased", waveform_table(w));
        w.mu = 0.0;
        emit("fig2_rc_unbiased", waveform_table(w));
    } else if (figure == "fig3") {
        for (PulseFamily f : {PulseFamily::RC, PulseFamily::PL, PulseFamily::BTN, PulseFamily::Xia}) {
            EyeRequest e;
            e.pulse = PulseSpec(f, 0.6);
            e.n_traces = 128;
            e.seed = 3;
            std::string stem = "fig3_eye_" + name(f);
            std::transform(stem.begin(), stem.end(), stem.begin(), [](unsigned char ch) { return std::tolower(ch); });
            emit(stem, eye_table(e));
        }
    } else if (figure == "fig4") {
        BiasRequest b;
        b.families = {kAllFamilies.begin(), kAllFamilies.end()};
        b.alphas = alphas;
        emit("fig4_bias", bias_table(b));
    } else if (figure == "fig5") {
        SweepRequest s;
        s.scenario = Scenario::EqualEye;
        for (PulseFamily f : kAllFamilies) {
            if (f != PulseFamily::RRC) s.families.push_back(f);
        }
        s.alphas = alphas;
        s.m_values = {2, 4};
        emit("fig5_gain_equal_eye", gain_table(s, false));
    } else if (figure == "fig6") {
        SweepRequest s;
        s.scenario = Scenario::EqualSer;
        s.families = {kAllFamilies.begin(), kAllFamilies.end()};
        s.alphas = alphas;
        s.m_values = {2};
        s.p_err = 1e-6;
        emit("fig6_gain_equal_ser", gain_table(s, false));
    } else {
        throw DomainError("unknown figure '" + std::string(figure) + "' (fig2 .. fig6)");
    }
    return written;
}

}  // namespace imdd::reports
