#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fracq/core.hpp"

namespace fracq {

// Shortest text form that round-trips the double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    double back = 0;
    std::sscanf(buf, "%lf", &back);
    if (back == v || (std::isnan(back) && std::isnan(v)))
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[40];
            std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v)
                return shorter;
        }
    return buf;
}

// 8-byte magic, then little-endian: u32 kind code, f64 Hurst (NaN = absent),
// u64 length, length f64 payload values.
inline constexpr char kMagic[8] = {'F', 'R', 'A', 'C', 'Q', '0', '0', '1'};

inline constexpr std::uint32_t kKindCodeWhite = 0;
inline constexpr std::uint32_t kKindCodeFgn = 1;
inline constexpr std::uint32_t kKindCodeFbm = 2;
inline constexpr std::uint32_t kKindCodeErrorRaw = 3;
inline constexpr std::uint32_t kKindCodeErrorSigmaDelta = 4;

inline std::uint32_t kind_code(Kind k) {
    switch (k) {
    case Kind::white: return kKindCodeWhite;
    case Kind::fgn: return kKindCodeFgn;
    case Kind::fbm: return kKindCodeFbm;
    }
    throw DomainError("unknown kind");
}

struct Container {
    std::uint32_t kind_code = kKindCodeWhite;
    double hurst = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> values;

    bool is_signal() const { return kind_code <= kKindCodeFbm; }

    SignalPath to_signal() const {
        if (!is_signal())
            throw DomainError("container holds an error series, not a signal path");
        SignalPath p;
        p.kind = kind_code == kKindCodeWhite ? Kind::white
                 : kind_code == kKindCodeFgn ? Kind::fgn
                                             : Kind::fbm;
        p.hurst = hurst;
        p.values = values;
        return p;
    }

    ErrorSeries to_error() const {
        if (is_signal())
            throw DomainError("container holds a signal path, not an error series");
        ErrorSeries e;
        e.source = kind_code == kKindCodeErrorRaw ? ErrorSource::raw
                                                  : ErrorSource::sigma_delta;
        e.values = values;
        return e;
    }
};

namespace detail {

template <typename T>
void put_le(std::string& out, T v) {
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &v, sizeof(T));
    out.append(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(const char* p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return v;
}

}  // namespace detail

// All writes go through a temp file in the target directory plus a rename, so
// readers never observe a half-written file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / (path.filename().string() + ".tmp." +
                                std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw IoError("short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() +
                      ": " + ec.message());
}

inline void write_container(const std::filesystem::path& path, const Container& c) {
    std::string out;
    out.reserve(28 + 8 * c.values.size());
    out.append(kMagic, 8);
    detail::put_le(out, c.kind_code);
    detail::put_le(out, c.hurst);
    detail::put_le(out, static_cast<std::uint64_t>(c.values.size()));
    for (double v : c.values)
        detail::put_le(out, v);
    atomic_write(path, out);
}

inline Container read_container(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() < 28 || std::memcmp(data.data(), kMagic, 8) != 0)
        throw IoError(path.string() + " is not a FRACQ001 container (bad magic at offset 0)");
    Container c;
    c.kind_code = detail::get_le<std::uint32_t>(data.data() + 8);
    if (c.kind_code > kKindCodeErrorSigmaDelta)
        throw IoError(path.string() + ": unknown kind code " + std::to_string(c.kind_code) +
                      " at offset 8");
    c.hurst = detail::get_le<double>(data.data() + 12);
    const std::uint64_t len = detail::get_le<std::uint64_t>(data.data() + 20);
    if (data.size() != 28 + 8 * len)
        throw IoError(path.string() + ": payload size mismatch, header says " +
                      std::to_string(len) + " values at offset 20");
    c.values.resize(len);
    for (std::uint64_t i = 0; i < len; ++i)
        c.values[i] = detail::get_le<double>(data.data() + 28 + 8 * i);
    return c;
}

inline bool is_container_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    char head[8] = {};
    in.read(head, 8);
    return in.gcount() == 8 && std::memcmp(head, kMagic, 8) == 0;
}

// Comma-delimited with a header row; one column per entry in names/cols.
inline std::string csv_format(const std::vector<std::string>& names,
                              const std::vector<const std::vector<double>*>& cols) {
    if (names.size() != cols.size() || cols.empty())
        throw DomainError("csv column names and data mismatch");
    const std::size_t rows = cols[0]->size();
    for (const auto* c : cols)
        if (c->size() != rows)
            throw DomainError("csv columns have unequal lengths");
    std::string out;
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (j)
            out += ',';
        out += names[j];
    }
    out += '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (j)
                out += ',';
            out += format_double((*cols[j])[i]);
        }
        out += '\n';
    }
    return out;
}

inline void write_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& names,
                      const std::vector<const std::vector<double>*>& cols) {
    atomic_write(path, csv_format(names, cols));
}

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

// Parses a comma-delimited file; a non-numeric first row is the header. Parse
// failures name the 1-based line they occur on.
inline CsvData read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    CsvData data;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            cells.push_back(line.substr(start, pos == std::string::npos
                                                   ? std::string::npos
                                                   : pos - start));
            if (pos == std::string::npos)
                break;
            start = pos + 1;
        }
        bool numeric = true;
        std::vector<double> vals(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const char* s = cells[j].c_str();
            char* end = nullptr;
            vals[j] = std::strtod(s, &end);
            if (end == s || *end != '\0') {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (lineno == 1 && data.columns.empty()) {
                data.header = cells;
                continue;
            }
            throw IoError(path.string() + ": line " + std::to_string(lineno) +
                          " is not numeric");
        }
        if (data.columns.empty())
            data.columns.resize(cells.size());
        if (cells.size() != data.columns.size())
            throw IoError(path.string() + ": line " + std::to_string(lineno) +
                          " has " + std::to_string(cells.size()) + " fields, expected " +
                          std::to_string(data.columns.size()));
        for (std::size_t j = 0; j < cells.size(); ++j)
            data.columns[j].push_back(vals[j]);
    }
    if (data.columns.empty())
        throw IoError(path.string() + " holds no numeric rows");
    return data;
}

// Reads either container format; CSV convention: the last column is the data
// (two-column files are (index, value)).
inline std::vector<double> read_series(const std::filesystem::path& path) {
    if (is_container_file(path))
        return read_container(path).values;
    return read_csv(path).columns.back();
}

inline SignalPath read_signal(const std::filesystem::path& path) {
    if (is_container_file(path)) {
        const Container c = read_container(path);
        if (c.is_signal())
            return c.to_signal();
        SignalPath p;  // error series treated as a plain (white-kind) sequence
        p.kind = Kind::white;
        p.values = c.values;
        return p;
    }
    SignalPath p;
    p.kind = Kind::white;
    p.values = read_csv(path).columns.back();
    return p;
}

}  // namespace fracq
