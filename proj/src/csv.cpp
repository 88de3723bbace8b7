#include "aoi/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aoi/analysis.hpp"

namespace aoi {

std::string format_sig6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

namespace {

std::string cell(double value) {
    return std::isnan(value) ? std::string{} : format_sig6(value);
}

}  // namespace

std::string csv_string(std::span<const ExperimentSummary> rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const ExperimentSummary& row : rows) {
        TheoryReport theory = theory_report(row.k, ChannelParams{row.p1, row.p2});
        double delta2_upper = row.scheme == Scheme::Adaptive ? theory.delta2_upper
                                                             : std::nan("");
        out << to_string(row.scheme) << ',' << row.k << ',' << cell(row.p1) << ','
            << cell(row.p2) << ',' << row.horizon << ',' << row.num_paths << ','
            << row.master_seed << ',' << cell(row.delta1_hat) << ',' << cell(row.ci1) << ','
            << cell(row.delta2_hat) << ',' << cell(row.ci2) << ',' << cell(row.t1_mean) << ','
            << cell(row.t2_mean) << ',' << cell(row.t3_mean) << ',' << cell(theory.delta1)
            << ',' << cell(delta2_upper) << '\n';
    }
    return out.str();
}

void write_csv(std::span<const ExperimentSummary> rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << csv_string(rows);
    if (!out.flush()) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace aoi
