#include "rabisim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rabisim/errors.hpp"

namespace rabi::io {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_csv(const std::string& path, const TimeSeries& series, bool write_label,
               const std::vector<std::string>& trailing_comments) {
    std::ofstream out(path);
    if (!out)
        throw SimError("cannot open for writing: " + path);
    if (write_label && !series.label.empty())
        out << "# " << series.label << "\n";
    out << "t,value\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_double(series.time_at(i)) << "," << format_double(series.values[i]) << "\n";
    for (const std::string& comment : trailing_comments)
        out << "# " << comment << "\n";
    if (!out)
        throw SimError("write failed: " + path);
}

TimeSeries read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SimError("cannot open for reading: " + path);

    TimeSeries series;
    std::vector<double> times;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!saw_header && series.label.empty()) {
                std::size_t start = line.find_first_not_of("# \t");
                if (start != std::string::npos) series.label = line.substr(start);
            }
            continue;
        }
        if (!saw_header) {
            if (line != "t,value")
                throw SimError(path + ": expected 't,value' header, got '" + line + "'");
            saw_header = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw SimError(path + ": malformed row '" + line + "'");
        times.push_back(std::stod(line.substr(0, comma)));
        series.values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (!saw_header)
        throw SimError(path + ": missing 't,value' header");
    if (series.values.empty())
        throw SimError(path + ": no data rows");

    series.t0 = times.front();
    series.dt = times.size() > 1 ? times[1] - times[0] : 0.0;
    if (times.size() > 1) {
        if (!(series.dt > 0.0))
            throw AlignmentError(path + ": time column is not increasing");
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double expected = series.t0 + series.dt * static_cast<double>(i);
            if (std::abs(times[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
                throw AlignmentError(path + ": time column is not a uniform grid");
        }
    }
    return series;
}

} // namespace rabi::io
