#pragma once

#include <string>

#include "wiou/metrics.hpp"
#include "wiou/palette.hpp"

namespace wiou {

// Deterministic serializations of a metric report. Every floating-point value
// is rendered with 12 significant digits; undefined values serialize as JSON
// null / empty CSV fields. The palette, when given, supplies class names.
std::string report_to_json(const MetricReport& report, const Palette* palette = nullptr);
std::string report_to_csv(const MetricReport& report, const Palette* palette = nullptr);

// One stable line: "mIoU=<v> mwIoU[a=<alpha>]=<v> ... edgeF1=<v>".
std::string summary_line(const MetricReport& report);

// 12-significant-digit rendering used by every text serialization.
std::string format_value(double v);
// The double that format_value's rendering parses back to.
double round12(double v);

}  // namespace wiou
