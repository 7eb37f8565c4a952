// csv.hpp — trajectory file I/O

#pragma once

#include <string>
#include <vector>

#include "rabisim/time_series.hpp"

namespace rabi::io {

// Schema: optional '#'-prefixed comment lines, a "t,value" header, then one
// "t,value" row per sample with 17 significant digits (lossless round trip).
// write_label emits "# <label>" before the header; extra comment lines are
// appended verbatim (each prefixed "# ") after the data.
void write_csv(const std::string& path, const TimeSeries& series, bool write_label = false,
               const std::vector<std::string>& trailing_comments = {});

// Read a CSV written by write_csv. Comments are skipped; the label is
// recovered from a leading "# <label>" line when present. The time column
// must form a uniform grid (AlignmentError otherwise).
TimeSeries read_csv(const std::string& path);

} // namespace rabi::io
