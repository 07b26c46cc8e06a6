#pragma once

#include "imdd/constellation.hpp"
#include "imdd/power.hpp"
#include "imdd/pulse.hpp"
#include "imdd/receiver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace imdd::reports {

/// "0.6" or "start:stop:step"; stop is included when it lies on the grid
/// (to within 1e-9 step). Throws DomainError on malformed input.
std::vector<double> parse_grid(std::string_view text);

/// Comma-separated family names, or "all".
std::vector<PulseFamily> parse_families(std::string_view text);

enum class Format { Csv, Json };
Format parse_format(std::string_view name);

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
    std::string kind;  ///< "bias", "gain", ... echoed in the JSON envelope
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::size_t failed_rows = 0;
};

/// Shortest decimal that round-trips.
std::string format_number(double v);

/// Every file starts with a "# imdd <version>" comment line.
void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);
void write(std::ostream& out, const Table& table, Format format);

struct BiasRequest {
    std::vector<PulseFamily> families;
    std::vector<double> alphas;
    std::vector<int> m_values{2};
};
Table bias_table(const BiasRequest& request);

/// Columns: scenario,receiver,pulse,alpha,m,b_tb,gain_db,mu,q_bar,q_zero,
/// then gain_unreferenced_db with debug_columns, then error when any row failed.
Table gain_table(const SweepRequest& request, bool debug_columns);

struct SerRequest {
    std::vector<PulseFamily> families;
    std::vector<double> alphas;
    std::vector<int> m_values{2};
    std::vector<Receiver> receivers;  ///< empty: sampling for Nyquist, matched for root-Nyquist
    std::optional<double> amp;        ///< unset: tuned so the analytic SER equals target
    double target = 1e-2;
    double n0 = 1.0;
    std::size_t n_symbols = 100000;
    std::uint64_t seed = 1;
};
Table ser_table(const SerRequest& request);

struct WaveformRequest {
    PulseSpec pulse{PulseFamily::RC, 0.6};
    int m = 2;
    std::size_t n_symbols = 64;
    int rate = 32;
    std::uint64_t seed = 1;
    std::optional<double> amp;
    std::optional<double> mu;  ///< unset: required_bias
};
Table waveform_table(const WaveformRequest& request);

struct EyeRequest {
    PulseSpec pulse{PulseFamily::RC, 0.6};
    int m = 2;
    Receiver receiver = Receiver::Sampling;
    std::size_t n_traces = 64;
    int rate = 32;
    std::uint64_t seed = 1;
};
Table eye_table(const EyeRequest& request);

/// Writes the data behind one figure (fig2 .. fig6) into `dir`; returns the files written.
std::vector<std::filesystem::path> reproduce(std::string_view figure, const std::filesystem::path& dir, Format format);

}  // namespace imdd::reports
