#include "manifuse/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace manifuse::io {

namespace {

// Pulls "key=value" out of a header line; returns false if absent.
bool header_field(const std::string& line, const std::string& key, std::string& out) {
    const std::string needle = key + "=";
    const auto pos = line.find(needle);
    if (pos == std::string::npos) return false;
    auto end = line.find(' ', pos);
    if (end == std::string::npos) end = line.size();
    out = line.substr(pos + needle.size(), end - (pos + needle.size()));
    return true;
}

long header_long(const std::string& line, const std::string& key,
                 const std::filesystem::path& path) {
    std::string raw;
    if (!header_field(line, key, raw))
        throw io_error(path.string() + ": header missing '" + key + "='");
    try {
        return std::stol(raw);
    } catch (const std::exception&) {
        throw io_error(path.string() + ": bad header value for '" + key + "'");
    }
}

double parse_double(const std::string& token, const std::filesystem::path& path) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    double v = 0.0;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw io_error(path.string() + ": malformed number '" + token + "'");
    return v;
}

void parse_row(const std::string& line, Eigen::Index row, Matrix& out,
               const std::filesystem::path& path) {
    std::stringstream ss(line);
    std::string token;
    Eigen::Index col = 0;
    while (std::getline(ss, token, ',')) {
        if (col >= out.cols())
            throw io_error(path.string() + ": row " + std::to_string(row) +
                           " has more than " + std::to_string(out.cols()) + " columns");
        out(row, col++) = parse_double(token, path);
    }
    if (col != out.cols())
        throw io_error(path.string() + ": row " + std::to_string(row) + " has " +
                       std::to_string(col) + " columns, expected " +
                       std::to_string(out.cols()));
}

void write_rows(std::ofstream& f, const Matrix& values) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            if (j) f << ',';
            f << format_double(values(i, j));
        }
        f << '\n';
    }
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_matrix(const std::filesystem::path& path, const Matrix& values,
                  const std::string& kind) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path.string() + "' for writing");
    f << "# rows=" << values.rows() << " cols=" << values.cols() << " kind=" << kind << '\n';
    write_rows(f, values);
    if (!f) throw io_error("write failed for '" + path.string() + "'");
}

MatrixFile read_matrix(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path.string() + "'");
    std::string header;
    if (!std::getline(f, header) || header.rfind("# rows=", 0) != 0)
        throw io_error(path.string() + ": missing '# rows=...' header");

    const long rows = header_long(header, "rows", path);
    const long cols = header_long(header, "cols", path);
    if (rows < 0 || cols < 0) throw io_error(path.string() + ": negative shape");
    MatrixFile out;
    if (!header_field(header, "kind", out.kind))
        throw io_error(path.string() + ": header missing 'kind='");

    out.values.resize(rows, cols);
    std::string line;
    Eigen::Index row = 0;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (row >= rows)
            throw io_error(path.string() + ": more than " + std::to_string(rows) + " rows");
        parse_row(line, row++, out.values, path);
    }
    if (row != rows)
        throw io_error(path.string() + ": got " + std::to_string(row) + " rows, expected " +
                       std::to_string(rows));
    return out;
}

void write_embedding(const std::filesystem::path& path, const Embedding& e) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path.string() + "' for writing");
    f << "# rows=" << e.coordinates.rows() << " cols=" << e.coordinates.cols()
      << " kind=embedding\n";
    f << "# eigenvalues=";
    for (std::size_t l = 0; l < e.eigenvalues_used.size(); ++l) {
        if (l) f << ',';
        f << format_double(e.eigenvalues_used[l]);
    }
    f << " t=" << e.t << " complex=" << (e.has_complex_components ? 1 : 0) << '\n';
    write_rows(f, e.coordinates);
    if (!f) throw io_error("write failed for '" + path.string() + "'");
}

Embedding read_embedding(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path.string() + "'");
    std::string header, spectral;
    if (!std::getline(f, header) || header.rfind("# rows=", 0) != 0)
        throw io_error(path.string() + ": missing '# rows=...' header");
    if (!std::getline(f, spectral) || spectral.rfind("# eigenvalues=", 0) != 0)
        throw io_error(path.string() + ": missing '# eigenvalues=...' header");

    const long rows = header_long(header, "rows", path);
    const long cols = header_long(header, "cols", path);
    std::string kind;
    if (!header_field(header, "kind", kind) || kind != "embedding")
        throw io_error(path.string() + ": kind is not 'embedding'");

    Embedding e;
    e.t = static_cast<int>(header_long(spectral, "t", path));
    e.has_complex_components = header_long(spectral, "complex", path) != 0;

    std::string eig_list;
    header_field(spectral, "eigenvalues", eig_list);
    std::stringstream ss(eig_list);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty()) e.eigenvalues_used.push_back(parse_double(token, path));
    if (static_cast<long>(e.eigenvalues_used.size()) != cols)
        throw io_error(path.string() + ": eigenvalue list length != cols");

    e.coordinates.resize(rows, cols);
    std::string line;
    Eigen::Index row = 0;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (row >= rows)
            throw io_error(path.string() + ": more than " + std::to_string(rows) + " rows");
        parse_row(line, row++, e.coordinates, path);
    }
    if (row != rows)
        throw io_error(path.string() + ": got " + std::to_string(row) + " rows, expected " +
                       std::to_string(rows));
    return e;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path.string() + "' for digest");
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[4096];
    while (f.read(buf, sizeof(buf)) || f.gcount() > 0) {
        const std::streamsize got = f.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
        if (got < static_cast<std::streamsize>(sizeof(buf))) break;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016" PRIx64, h);
    return out;
}

} // namespace manifuse::io
