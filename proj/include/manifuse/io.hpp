#pragma once

#include <filesystem>
#include <string>

#include "manifuse/types.hpp"

// Shared matrix file format: UTF-8 CSV with the header line
//   # rows=<N> cols=<D> kind=<tag>
// followed by N comma-separated rows of decimal floats written with 17
// significant digits (lossless double round trip). Embedding files carry a
// second header line
//   # eigenvalues=<comma list> t=<t> complex=<0|1>
// Readers reject any shape mismatch.

namespace manifuse::io {

struct MatrixFile {
    Matrix values;
    std::string kind;
};

std::string format_double(double v);   // 17 significant digits

void write_matrix(const std::filesystem::path& path, const Matrix& values,
                  const std::string& kind);
MatrixFile read_matrix(const std::filesystem::path& path);

void write_embedding(const std::filesystem::path& path, const Embedding& e);
Embedding read_embedding(const std::filesystem::path& path);

// FNV-1a over the file bytes, as a 16-hex-digit string. Used in manifests.
std::string file_digest(const std::filesystem::path& path);

} // namespace manifuse::io
