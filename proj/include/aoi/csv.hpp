#ifndef AOI_CSV_HPP
#define AOI_CSV_HPP

#include <span>
#include <string>

#include "aoi/montecarlo.hpp"

namespace aoi {

/// Fixed sweep/experiment schema. Floats carry 6 significant digits; NaN
/// cells (inapplicable values) are left empty.
inline constexpr const char* kCsvHeader =
    "scheme,K,p1,p2,horizon,paths,seed,delta1_hat,ci1,delta2_hat,ci2,"
    "t1_mean,t2_mean,t3_mean,delta1_theory,delta2_upper";

/// 6-significant-digit rendering shared by CSV and report output.
std::string format_sig6(double value);

std::string csv_string(std::span<const ExperimentSummary> rows);

/// UTF-8, LF line endings, header first. Throws std::runtime_error on I/O
/// failure.
void write_csv(std::span<const ExperimentSummary> rows, const std::string& path);

}  // namespace aoi

#endif
