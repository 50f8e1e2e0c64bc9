#include "hlab/serialize.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hlab {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& os, const SampledFunction& f) {
    os << "s,re,im\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        os << format_double(f.grid().point(k)) << ',' << format_double(f.value(k).real()) << ','
           << format_double(f.value(k).imag()) << '\n';
    }
}

void write_csv_file(const std::string& path, const SampledFunction& f) {
    std::ofstream os(path);
    if (!os) throw config_error("cannot open for writing: " + path);
    write_csv(os, f);
}

SampledFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw input_error("empty CSV");
    std::vector<double> ss;
    std::vector<cplx> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double s, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &s, &re, &im) != 3) {
            throw input_error("malformed CSV row: " + line);
        }
        ss.push_back(s);
        vals.emplace_back(re, im);
    }
    if (vals.size() < 8) throw input_error("CSV has too few rows for a grid");
    const double h = ss[1] - ss[0];
    const double L = -ss[0];
    Grid grid(L, vals.size());
    if (std::abs(grid.spacing() - h) > 1e-12 * std::abs(h)) {
        throw input_error("CSV rows are not a uniform symmetric grid");
    }
    return SampledFunction(grid, std::move(vals));
}

SampledFunction read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open: " + path);
    return read_csv(is);
}

namespace {
template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw input_error("truncated dump");
    return v;
}
}  // namespace

void write_dump(std::ostream& os, const SampledFunction& f) {
    os.write("HLAB", 4);
    put<std::uint32_t>(os, kDumpVersion);
    put<std::uint64_t>(os, f.size());
    put<double>(os, f.grid().half_width());
    for (std::size_t k = 0; k < f.size(); ++k) {
        put<double>(os, f.value(k).real());
        put<double>(os, f.value(k).imag());
    }
}

void write_dump_file(const std::string& path, const SampledFunction& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open for writing: " + path);
    write_dump(os, f);
}

SampledFunction read_dump(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "HLAB", 4) != 0) throw input_error("bad dump magic");
    const auto version = get<std::uint32_t>(is);
    if (version != kDumpVersion) throw input_error("unsupported dump version");
    const auto n = get<std::uint64_t>(is);
    const auto L = get<double>(is);
    std::vector<cplx> vals(n);
    for (auto& v : vals) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        v = cplx(re, im);
    }
    return SampledFunction(Grid(L, static_cast<std::size_t>(n)), std::move(vals));
}

SampledFunction read_dump_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open: " + path);
    return read_dump(is);
}

}  // namespace hlab
