#pragma once

#include <iosfwd>
#include <string>

#include "hlab/grid.hpp"

namespace hlab {

// CSV layout: header "s,re,im", one row per sample, %.17g formatting so that
// round trips are bit-faithful.
void write_csv(std::ostream& os, const SampledFunction& f);
void write_csv_file(const std::string& path, const SampledFunction& f);
SampledFunction read_csv(std::istream& is);
SampledFunction read_csv_file(const std::string& path);

// Binary dump: magic "HLAB", version u32, N u64, L f64, then N*(re,im) as
// little-endian f64.
constexpr std::uint32_t kDumpVersion = 1;
void write_dump(std::ostream& os, const SampledFunction& f);
void write_dump_file(const std::string& path, const SampledFunction& f);
SampledFunction read_dump(std::istream& is);
SampledFunction read_dump_file(const std::string& path);

/// %.17g rendering used for all CSV output (deterministic bodies).
std::string format_double(double x);

}  // namespace hlab
