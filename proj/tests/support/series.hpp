#pragma once
// CSV column access and peak timing for trajectory outputs.

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbloch::testing {

using Columns = std::map<std::string, std::vector<double>>;

inline Columns read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> names;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            names.push_back(cell);
    }
    Columns cols;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        for (const auto& name : names) {
            std::getline(ss, cell, ',');
            cols[name].push_back(std::stod(cell));
        }
    }
    return cols;
}

/// Times of the local maxima of y above `threshold`, refined by a parabola
/// through the sample and its two neighbours.
inline std::vector<double> peak_times(const std::vector<double>& t, const std::vector<double>& y,
                                      double threshold)
{
    std::vector<double> peaks;
    for (std::size_t k = 1; k + 1 < y.size(); ++k) {
        if (!(y[k] > y[k - 1] && y[k] >= y[k + 1] && y[k] > threshold))
            continue;
        const double h = t[k + 1] - t[k];
        const double denom = y[k - 1] - 2.0 * y[k] + y[k + 1];
        const double shift = denom != 0.0 ? 0.5 * (y[k - 1] - y[k + 1]) / denom : 0.0;
        peaks.push_back(t[k] + shift * h);
    }
    return peaks;
}

/// Mean spacing of consecutive peaks; NaN with fewer than two peaks.
inline double mean_period(const std::vector<double>& peaks)
{
    if (peaks.size() < 2)
        return std::nan("");
    return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

} // namespace qbloch::testing
