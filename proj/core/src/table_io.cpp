#include "parampstat/table_io.hpp"

#include "parampstat/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace parampstat
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string optional_number(const std::optional<double> &x)
{
    return x ? format_number(*x) : std::string();
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos)
        {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::optional<double> parse_optional(std::string_view field)
{
    if (field.empty())
    {
        return std::nullopt;
    }
    return parse_number(field);
}

// Minimal JSON emitter; numbers go through format_number.
class JsonWriter
{
public:
    explicit JsonWriter(std::ostream &os) : os_(os) {}

    void number(double x)
    {
        if (std::isfinite(x))
        {
            os_ << format_number(x);
        }
        else
        {
            os_ << "null";
        }
    }

    void optional(const std::optional<double> &x)
    {
        if (x)
        {
            number(*x);
        }
        else
        {
            os_ << "null";
        }
    }

    void string(std::string_view s)
    {
        os_ << '"';
        for (char c : s)
        {
            switch (c)
            {
            case '"':
                os_ << "\\\"";
                break;
            case '\\':
                os_ << "\\\\";
                break;
            case '\n':
                os_ << "\\n";
                break;
            case '\t':
                os_ << "\\t";
                break;
            default:
                if (static_cast<unsigned char>(c) < 0x20)
                {
                    constexpr char hex[] = "0123456789abcdef";
                    os_ << "\\u00" << hex[(c >> 4) & 0xf] << hex[c & 0xf];
                }
                else
                {
                    os_ << c;
                }
            }
        }
        os_ << '"';
    }

    void key(std::string_view k)
    {
        comma();
        string(k);
        os_ << ':';
        fresh_ = true;
    }

    void open(char bracket)
    {
        comma();
        os_ << bracket;
        fresh_ = true;
    }

    void close(char bracket)
    {
        os_ << bracket;
        fresh_ = false;
    }

    // Call before a bare value inside an array.
    void item() { comma(); }

    template <class F>
    void field(std::string_view k, F &&emit)
    {
        key(k);
        emit();
        fresh_ = false;
    }

    void array(std::string_view k, const std::vector<double> &xs)
    {
        key(k);
        open('[');
        for (double x : xs)
        {
            item();
            number(x);
            fresh_ = false;
        }
        close(']');
    }

private:
    void comma()
    {
        if (!fresh_)
        {
            os_ << ',';
        }
        fresh_ = true;
    }

    std::ostream &os_;
    bool fresh_ = true;
};

void write_filter(JsonWriter &w, const FilterSpec &f)
{
    w.key("filter");
    w.open('{');
    w.field("shape", [&] { w.string(shape_name(f)); });
    w.field("width", [&] { w.number(filter_width(f)); });
    w.field("center", [&] { w.number(f.center); });
    w.close('}');
}

void write_scheme(JsonWriter &w, const Scheme &scheme)
{
    std::visit(overloaded{
                   [&](const SingleModeScheme &s) { write_filter(w, s.filter); },
                   [&](const MultimodeLimitScheme &s) { w.field("tau", [&] { w.number(s.tau); }); },
                   [&](const MultimodeFiniteScheme &s) {
                       w.field("tau", [&] { w.number(s.tau); });
                       w.field("generator", [&] { w.string(kind_name(s.generator.kind)); });
                       w.field("mode_width", [&] { w.number(s.generator.delta); });
                       std::visit(overloaded{
                                      [&](const FixedCutoff &c) {
                                          w.field("mode_cutoff", [&] { w.number(static_cast<double>(c.max_index)); });
                                      },
                                      [&](const AdaptiveTail &c) {
                                          w.field("mode_cutoff", [&] { w.string("adaptive"); });
                                          w.field("tail_threshold", [&] { w.number(c.threshold); });
                                      },
                                  },
                                  s.cutoff);
                   },
               },
               scheme);
}

std::string_view mapping_name(const quad::Mapping &m)
{
    return std::visit(overloaded{
                          [](const quad::RationalCompactification &) { return std::string_view("rational"); },
                          [](const quad::TangentMap &) { return std::string_view("tangent"); },
                          [](const quad::TruncatedWindow &) { return std::string_view("window"); },
                      },
                      m);
}

void write_text_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw Error(ErrorCode::OutputIO, "cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out)
    {
        throw Error(ErrorCode::OutputIO, "failed writing '" + path.string() + "'");
    }
}

} // namespace

OutputFormat parse_output_format(std::string_view name)
{
    if (name == "csv")
    {
        return OutputFormat::Csv;
    }
    if (name == "json")
    {
        return OutputFormat::Json;
    }
    throw Error(ErrorCode::ConfigParse, "unknown output format '" + std::string(name) + "'");
}

std::string format_number(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text)
{
    double x = 0.0;
    const char *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end)
    {
        throw Error(ErrorCode::ConfigParse, "not a number: '" + std::string(text) + "'");
    }
    return x;
}

void write_sweep_csv(std::ostream &os, const std::vector<SweepRecord> &records)
{
    std::string text(kSweepCsvHeader);
    text += '\n';
    for (const SweepRecord &r : records)
    {
        text += r.scheme;
        for (const std::string &field :
             {format_number(r.xi), format_number(r.delta), optional_number(r.tau), format_number(r.mean),
              format_number(r.variance), optional_number(r.third), optional_number(r.fano), format_number(r.quad_err)})
        {
            text += ',';
            text += field;
        }
        text += '\n';
    }
    os << text;
}

std::vector<SweepRecord> read_sweep_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || line != kSweepCsvHeader)
    {
        throw Error(ErrorCode::ConfigParse, "missing or unexpected sweep header");
    }
    std::vector<SweepRecord> records;
    while (std::getline(is, line))
    {
        if (line.empty())
        {
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 9)
        {
            throw Error(ErrorCode::ConfigParse, "expected 9 fields in '" + line + "'");
        }
        SweepRecord r;
        r.scheme = std::string(f[0]);
        r.xi = parse_number(f[1]);
        r.delta = parse_number(f[2]);
        r.tau = parse_optional(f[3]);
        r.mean = parse_number(f[4]);
        r.variance = parse_number(f[5]);
        r.third = parse_optional(f[6]);
        r.fano = parse_optional(f[7]);
        r.quad_err = parse_number(f[8]);
        records.push_back(std::move(r));
    }
    return records;
}

void write_sweep_json(std::ostream &os, const SweepConfig &cfg, const SweepResult &result)
{
    std::ostringstream buf;
    JsonWriter w(buf);
    w.open('{');

    w.key("config");
    w.open('{');
    w.field("scheme", [&] { w.string(scheme_label(cfg.scheme)); });
    w.field("gamma", [&] { w.number(cfg.base.gamma); });
    w.field("xi_arg", [&] { w.number(cfg.base.xi_arg); });
    w.field("nu0", [&] { w.number(cfg.base.nu0); });
    w.array("xi_grid", cfg.xi_grid);
    w.array("delta_grid", cfg.delta_grid);
    write_scheme(w, cfg.scheme);
    w.key("quadrature");
    w.open('{');
    w.field("rel_tol", [&] { w.number(cfg.quadrature.rel_tol); });
    w.field("abs_tol", [&] { w.number(cfg.quadrature.abs_tol); });
    w.field("max_subdivisions", [&] { w.number(cfg.quadrature.max_subdivisions); });
    w.field("mapping", [&] { w.string(mapping_name(cfg.quadrature.mapping)); });
    if (const auto *t = std::get_if<quad::TruncatedWindow>(&cfg.quadrature.mapping))
    {
        w.field("nu_max", [&] { w.number(t->nu_max); });
    }
    w.close('}');
    w.close('}');

    w.key("records");
    w.open('[');
    for (const SweepRecord &r : result.records)
    {
        w.open('{');
        w.field("scheme", [&] { w.string(r.scheme); });
        w.field("xi", [&] { w.number(r.xi); });
        w.field("delta", [&] { w.number(r.delta); });
        w.field("tau", [&] { w.optional(r.tau); });
        w.field("mean", [&] { w.number(r.mean); });
        w.field("variance", [&] { w.number(r.variance); });
        w.field("third", [&] { w.optional(r.third); });
        w.field("fano", [&] { w.optional(r.fano); });
        w.field("quad_err", [&] { w.number(r.quad_err); });
        w.close('}');
    }
    w.close(']');

    w.key("skipped");
    w.open('[');
    for (const SkippedPoint &s : result.skipped)
    {
        w.open('{');
        w.field("xi", [&] { w.number(s.xi); });
        w.field("delta", [&] { w.number(s.delta); });
        w.field("reason", [&] { w.string(s.reason); });
        w.close('}');
    }
    w.close(']');

    w.close('}');
    buf << '\n';
    os << buf.str();
}

void write_sweep_file(const std::filesystem::path &path, OutputFormat format, const SweepConfig &cfg,
                      const SweepResult &result)
{
    std::ostringstream buf;
    if (format == OutputFormat::Csv)
    {
        write_sweep_csv(buf, result.records);
    }
    else
    {
        write_sweep_json(buf, cfg, result);
    }
    write_text_file(path, buf.str());
}

void write_figure_csv(std::ostream &os, const FigureCurve &curve)
{
    std::string text(kFigureCsvHeader);
    text += '\n';
    for (const FigurePoint &p : curve.points)
    {
        text += format_number(p.xi_over_gamma);
        text += ',';
        text += format_number(p.mean);
        text += ',';
        text += format_number(p.variance);
        text += '\n';
    }
    os << text;
}

std::string figure_file_name(const FigureCurve &curve)
{
    return "figure_sv_" + curve.label + ".csv";
}

std::vector<std::filesystem::path> emit_figure_sv(const FigureConfig &cfg)
{
    const auto taus = figure_sv_taus(cfg.gamma);
    const auto curves = figure_sv_dataset(cfg.gamma, taus, cfg.xi_over_gamma, cfg.quadrature);

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec)
    {
        throw Error(ErrorCode::OutputIO, "cannot create '" + cfg.out_dir.string() + "': " + ec.message());
    }
    std::vector<std::filesystem::path> paths;
    for (const FigureCurve &c : curves)
    {
        std::ostringstream buf;
        write_figure_csv(buf, c);
        const auto path = cfg.out_dir / figure_file_name(c);
        write_text_file(path, buf.str());
        paths.push_back(path);
    }
    return paths;
}

} // namespace parampstat
