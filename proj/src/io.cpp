#include "phev/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "phev/error.hpp"

namespace phev::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

double parse_number(std::string_view field, std::size_t line_no)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw IoError("profile CSV line " + std::to_string(line_no) + ": bad number '"
                      + std::string(field) + "'");
    }
    return v;
}

std::string escape_xml(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

// Rounds the axis maximum up to 1, 2 or 5 times a power of ten.
double nice_ceiling(double v)
{
    if (!(v > 0.0)) {
        return 1.0;
    }
    const double magnitude = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * magnitude >= v) {
            return m * magnitude;
        }
    }
    return 10.0 * magnitude;
}

std::string fixed(double v, int digits)
{
    std::array<char, 64> buf{};
    const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, digits);
    return std::string(buf.data(), r.ptr);
}

constexpr std::array<std::string_view, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string format_number(double v)
{
    std::array<char, 64> buf{};
    const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
    return std::string(buf.data(), r.ptr);
}

std::string profile_to_csv(const DemandProfile& profile)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (std::size_t i = 0; i < profile.grid.bins(); ++i) {
        out += format_number(profile.grid.start_of(i));
        out += ',';
        out += format_number(profile.grid.end_of(i));
        out += ',';
        out += format_number(profile.values[i]);
        out += ',';
        if (profile.std_error) {
            out += format_number((*profile.std_error)[i]);
        }
        out += '\n';
    }
    return out;
}

DemandProfile profile_from_csv(std::string_view text)
{
    std::vector<std::string_view> lines;
    for (auto line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            lines.push_back(line);
        }
    }
    if (lines.empty() || lines.front() != kCsvHeader) {
        throw IoError("profile CSV: missing header '" + std::string(kCsvHeader) + "'");
    }
    const std::size_t rows = lines.size() - 1;
    if (rows == 0) {
        throw IoError("profile CSV: no rows");
    }
    TimeGrid grid = [&] {
        try {
            return TimeGrid::with_resolution(kHoursPerDay / static_cast<double>(rows));
        } catch (const InvalidParameter& e) {
            throw IoError(std::string("profile CSV: ") + e.what());
        }
    }();

    DemandProfile profile(grid);
    std::vector<double> err;
    bool any_err = false;
    bool any_blank = false;
    for (std::size_t i = 0; i < rows; ++i) {
        const auto fields = split(lines[i + 1], ',');
        const std::size_t line_no = i + 2;
        if (fields.size() != 4) {
            throw IoError("profile CSV line " + std::to_string(line_no) + ": expected 4 fields");
        }
        const double start = parse_number(fields[0], line_no);
        const double end = parse_number(fields[1], line_no);
        if (std::fabs(start - grid.start_of(i)) > 1e-9 || std::fabs(end - grid.end_of(i)) > 1e-9) {
            throw IoError("profile CSV line " + std::to_string(line_no)
                          + ": bin edges do not form a uniform 24 h grid");
        }
        profile.values[i] = parse_number(fields[2], line_no);
        if (fields[3].empty()) {
            any_blank = true;
            err.push_back(0.0);
        } else {
            any_err = true;
            err.push_back(parse_number(fields[3], line_no));
        }
    }
    if (any_err && any_blank) {
        throw IoError("profile CSV: stderr column partially filled");
    }
    if (any_err) {
        profile.std_error = std::move(err);
        profile.meta.provenance = Provenance::MonteCarlo;
    }
    return profile;
}

std::string profiles_to_svg(std::span<const LabeledProfile> profiles, std::string_view title)
{
    if (profiles.empty()) {
        throw InvalidParameter("emit_svg: no profiles to draw");
    }
    const TimeGrid& grid = profiles.front().profile->grid;
    double ymax = 0.0;
    for (const auto& p : profiles) {
        if (!(p.profile->grid == grid)) {
            throw GridMismatch("emit_svg: profiles use different time grids");
        }
        for (double v : p.profile->values) {
            ymax = std::max(ymax, v);
        }
    }
    ymax = nice_ceiling(ymax * 1.05);

    constexpr double width = 800, height = 450;
    constexpr double left = 70, right = 20, top = 40, bottom = 60;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;
    const auto x_of = [&](double h) { return left + plot_w * h / kHoursPerDay; };
    const auto y_of = [&](double kw) { return top + plot_h * (1.0 - kw / ymax); };

    std::ostringstream svg;
    svg << R"(<?xml version="1.0" encoding="UTF-8"?>)" << '\n'
        << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << width << R"(" height=")"
        << height << R"(" viewBox="0 0 )" << width << ' ' << height << R"(">)" << '\n'
        << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
    if (!title.empty()) {
        svg << R"(<text x=")" << width / 2 << R"(" y="24" text-anchor="middle" font-size="16">)"
            << escape_xml(title) << "</text>\n";
    }

    // Axes, ticks and labels.
    svg << R"(<g stroke="black" stroke-width="1">)" << '\n'
        << R"(<line x1=")" << left << R"(" y1=")" << top + plot_h << R"(" x2=")"
        << left + plot_w << R"(" y2=")" << top + plot_h << R"("/>)" << '\n'
        << R"(<line x1=")" << left << R"(" y1=")" << top << R"(" x2=")" << left
        << R"(" y2=")" << top + plot_h << R"("/>)" << '\n'
        << "</g>\n";
    svg << R"(<g font-size="12" fill="black">)" << '\n';
    for (int h = 0; h <= 24; h += 3) {
        svg << R"(<text x=")" << x_of(h) << R"(" y=")" << top + plot_h + 18
            << R"(" text-anchor="middle">)" << h << "</text>\n";
    }
    for (int k = 0; k <= 5; ++k) {
        const double kw = ymax * k / 5.0;
        svg << R"(<text x=")" << left - 8 << R"(" y=")" << y_of(kw) + 4
            << R"(" text-anchor="end">)" << fixed(kw, 3) << "</text>\n";
    }
    svg << R"(<text x=")" << left + plot_w / 2 << R"(" y=")" << height - 15
        << R"svg(" text-anchor="middle">Time of day (hours)</text>)svg" << '\n'
        << R"(<text x="18" y=")" << top + plot_h / 2 << R"(" text-anchor="middle" transform="rotate(-90 18 )"
        << top + plot_h / 2 << R"svg()">Power (kW)</text>)svg" << '\n'
        << "</g>\n";

    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& p = *profiles[i].profile;
        const auto color = kPalette[i % kPalette.size()];
        svg << R"(<polyline fill="none" stroke=")" << color
            << R"(" stroke-width="1.5" points=")";
        for (std::size_t b = 0; b < grid.bins(); ++b) {
            svg << fixed(x_of(grid.center_of(b)), 2) << ',' << fixed(y_of(p.values[b]), 2)
                << (b + 1 < grid.bins() ? " " : "");
        }
        svg << R"("/>)" << '\n';
        const double ly = top + 10 + 18.0 * static_cast<double>(i);
        svg << R"(<g class="legend"><line x1=")" << left + plot_w - 190 << R"(" y1=")" << ly
            << R"(" x2=")" << left + plot_w - 165 << R"(" y2=")" << ly << R"(" stroke=")"
            << color << R"(" stroke-width="2"/><text x=")" << left + plot_w - 158
            << R"(" y=")" << ly + 4 << R"(" font-size="12">)" << escape_xml(profiles[i].label)
            << "</text></g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(std::span<const LabeledProfile> profiles, const std::filesystem::path& path,
              std::string_view title)
{
    write_text(path, profiles_to_svg(profiles, title));
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": "
                          + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

}  // namespace phev::io
