#pragma once

#include "parampstat/multimode.hpp"
#include "parampstat/sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace parampstat
{

enum class OutputFormat
{
    Csv,
    Json,
};

OutputFormat parse_output_format(std::string_view name);

// 17 significant digits, '.' as decimal point, independent of the locale.
std::string format_number(double x);

// Throws ConfigParse on anything that is not a complete number.
double parse_number(std::string_view text);

inline constexpr std::string_view kSweepCsvHeader = "scheme,xi,delta,tau,mean,variance,third,fano,quad_err";
inline constexpr std::string_view kFigureCsvHeader = "xi_over_gamma,mean,variance";

void write_sweep_csv(std::ostream &os, const std::vector<SweepRecord> &records);

// Throws ConfigParse on a malformed table.
std::vector<SweepRecord> read_sweep_csv(std::istream &is);

// {"config": ..., "records": [...], "skipped": [...]}
void write_sweep_json(std::ostream &os, const SweepConfig &cfg, const SweepResult &result);

// Throws OutputIO when the file cannot be written.
void write_sweep_file(const std::filesystem::path &path, OutputFormat format, const SweepConfig &cfg,
                      const SweepResult &result);

void write_figure_csv(std::ostream &os, const FigureCurve &curve);

struct FigureConfig
{
    double gamma = 1.0;
    std::vector<double> xi_over_gamma = default_figure_xi_grid();
    std::filesystem::path out_dir = ".";
    quad::QuadratureSpec quadrature;
};

std::string figure_file_name(const FigureCurve &curve);

// Writes one table per curve into out_dir (created if missing) and returns the
// paths in curve order. Throws OutputIO.
std::vector<std::filesystem::path> emit_figure_sv(const FigureConfig &cfg);

} // namespace parampstat
