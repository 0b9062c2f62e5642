#pragma once

#include "crp/crc.hpp"

#include <string>

namespace crp {

// Header `confidence,delta,err,unc`, one row per grid point, confidence
// descending from 1.0, shortest round-trip float formatting.
std::string write_crc_csv(const CrcCurve& curve);

// Inverse of write_crc_csv; n is not stored in the table and is left 0.
CrcCurve parse_crc_csv(const std::string& text);

std::string write_crc_summary_json(const CrcCurve& curve, const CalibrationVerdict& verdict,
                                   int grid_intervals);

// Fig. 1 layout: diagonal reference, dashed error line, solid width line on
// [0,1]x[0,1] axes with the confidence level on the horizontal axis.
std::string render_crc_svg(const CrcCurve& curve);

} // namespace crp
