// SPDX-License-Identifier: MIT
// JSON serialization for matrices and superoperators. Numbers round-trip
// bit-exactly (shortest-representation doubles), so writing and re-reading a
// matrix reproduces it entry for entry. Parse failures throw ParseError with
// the offending file, field, and, for syntax errors, line and column.

#pragma once

#include <string>

#include "opdiam/matrix.hpp"
#include "opdiam/superop.hpp"

namespace opdiam {

// Matrix schema: {"rows": r, "cols": c, "re": [[...]], "im": [[...]]} with
// row-major nested arrays. "im" may be omitted for real matrices; writers
// omit it when every imaginary part is exactly zero.
ComplexMatrix matrix_from_json_text(const std::string& text,
                                    const std::string& context = "matrix");
std::string matrix_to_json_text(const ComplexMatrix& a, int indent = 2);
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& a);

// Superoperator schema: {"dim_in": n, "dim_out": m, "kind": k, "data": ...}
// with kind "choi" or "transfer" carrying one matrix object and kind "kraus"
// carrying {"plus": [matrix...], "minus": [matrix...]} ("minus" optional).
// Writers emit the canonical Choi form.
SuperOp superop_from_json_text(const std::string& text,
                               const std::string& context = "superop");
std::string superop_to_json_text(const SuperOp& phi, int indent = 2);
SuperOp read_superop_file(const std::string& path);
void write_superop_file(const std::string& path, const SuperOp& phi);

// Whole-file helpers; reading a missing or unreadable file throws ParseError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace opdiam
