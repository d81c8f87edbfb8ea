// SPDX-License-Identifier: MIT

#include "opdiam/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "opdiam/errors.hpp"

namespace opdiam {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const std::string& context) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann's message already carries line/column for syntax errors.
        throw ParseError(context + ": " + e.what());
    }
}

std::size_t require_dim(const json& j, const char* field, const std::string& context) {
    if (!j.contains(field))
        throw ParseError(context + ": missing field '" + field + "'");
    const json& v = j.at(field);
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
        throw ParseError(context + ": field '" + field + "' must be a positive integer");
    return v.get<std::size_t>();
}

// Reads a rows x cols nested array of numbers into `out` via `set`.
void read_plane(const json& j, const char* field, std::size_t rows, std::size_t cols,
                const std::string& context,
                const std::function<void(std::size_t, std::size_t, double)>& set) {
    const json& plane = j.at(field);
    if (!plane.is_array() || plane.size() != rows)
        throw ParseError(context + ": field '" + field + "' must be an array of " +
                         std::to_string(rows) + " rows");
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = plane.at(i);
        if (!row.is_array() || row.size() != cols)
            throw ParseError(context + ": field '" + field + "' row " + std::to_string(i) +
                             " must have " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            const json& cell = row.at(k);
            if (!cell.is_number())
                throw ParseError(context + ": field '" + field + "' row " + std::to_string(i) +
                                 " column " + std::to_string(k) + " is not a number");
            set(i, k, cell.get<double>());
        }
    }
}

ComplexMatrix matrix_from_json(const json& j, const std::string& context) {
    if (!j.is_object()) throw ParseError(context + ": expected a JSON object");
    const std::size_t rows = require_dim(j, "rows", context);
    const std::size_t cols = require_dim(j, "cols", context);
    if (!j.contains("re")) throw ParseError(context + ": missing field 're'");
    ComplexMatrix a(rows, cols);
    read_plane(j, "re", rows, cols, context, [&](std::size_t i, std::size_t k, double v) {
        a(i, k) = cplx(v, a(i, k).imag());
    });
    if (j.contains("im"))
        read_plane(j, "im", rows, cols, context, [&](std::size_t i, std::size_t k, double v) {
            a(i, k) = cplx(a(i, k).real(), v);
        });
    return a;
}

json matrix_to_json(const ComplexMatrix& a) {
    json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    json re = json::array();
    json im = json::array();
    bool any_imag = false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            re_row.push_back(a(i, k).real());
            im_row.push_back(a(i, k).imag());
            if (a(i, k).imag() != 0.0) any_imag = true;
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    j["re"] = std::move(re);
    if (any_imag) j["im"] = std::move(im);
    return j;
}

} // namespace

ComplexMatrix matrix_from_json_text(const std::string& text, const std::string& context) {
    return matrix_from_json(parse_or_throw(text, context), context);
}

std::string matrix_to_json_text(const ComplexMatrix& a, int indent) {
    return matrix_to_json(a).dump(indent) + "\n";
}

ComplexMatrix read_matrix_file(const std::string& path) {
    return matrix_from_json_text(read_text_file(path), path);
}

void write_matrix_file(const std::string& path, const ComplexMatrix& a) {
    write_text_file(path, matrix_to_json_text(a));
}

SuperOp superop_from_json_text(const std::string& text, const std::string& context) {
    const json j = parse_or_throw(text, context);
    if (!j.is_object()) throw ParseError(context + ": expected a JSON object");
    const std::size_t dim_in = require_dim(j, "dim_in", context);
    const std::size_t dim_out = require_dim(j, "dim_out", context);
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw ParseError(context + ": missing string field 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (!j.contains("data")) throw ParseError(context + ": missing field 'data'");
    const json& data = j.at("data");

    if (kind == "choi") {
        ComplexMatrix choi = matrix_from_json(data, context + ": data");
        const std::size_t want = dim_in * dim_out;
        if (choi.rows() != want || choi.cols() != want)
            throw ParseError(context + ": choi data must be " + std::to_string(want) + "x" +
                             std::to_string(want) + " for the declared dimensions");
        return SuperOp::from_choi(std::move(choi), dim_in, dim_out);
    }
    if (kind == "transfer") {
        ComplexMatrix transfer = matrix_from_json(data, context + ": data");
        if (transfer.rows() != dim_out * dim_out || transfer.cols() != dim_in * dim_in)
            throw ParseError(context + ": transfer data must be " +
                             std::to_string(dim_out * dim_out) + "x" +
                             std::to_string(dim_in * dim_in) + " for the declared dimensions");
        return SuperOp::from_transfer(transfer, dim_in, dim_out);
    }
    if (kind == "kraus") {
        if (!data.is_object()) throw ParseError(context + ": kraus data must be an object");
        auto read_list = [&](const char* field) {
            std::vector<ComplexMatrix> ops;
            if (!data.contains(field)) return ops;
            const json& list = data.at(field);
            if (!list.is_array())
                throw ParseError(context + ": field '" + field + "' must be an array");
            for (std::size_t s = 0; s < list.size(); ++s) {
                ComplexMatrix op = matrix_from_json(
                    list.at(s), context + ": " + field + "[" + std::to_string(s) + "]");
                if (op.rows() != dim_out || op.cols() != dim_in)
                    throw ParseError(context + ": " + field + "[" + std::to_string(s) +
                                     "] must be " + std::to_string(dim_out) + "x" +
                                     std::to_string(dim_in));
                ops.push_back(std::move(op));
            }
            return ops;
        };
        const std::vector<ComplexMatrix> plus = read_list("plus");
        const std::vector<ComplexMatrix> minus = read_list("minus");
        if (plus.empty() && minus.empty())
            throw ParseError(context + ": kraus data needs at least one operator");
        return SuperOp::from_kraus(plus, minus);
    }
    throw ParseError(context + ": unknown kind '" + kind + "' (expected choi, kraus, or transfer)");
}

std::string superop_to_json_text(const SuperOp& phi, int indent) {
    json j;
    j["dim_in"] = phi.dim_in();
    j["dim_out"] = phi.dim_out();
    j["kind"] = "choi";
    j["data"] = matrix_to_json(phi.choi());
    return j.dump(indent) + "\n";
}

SuperOp read_superop_file(const std::string& path) {
    return superop_from_json_text(read_text_file(path), path);
}

void write_superop_file(const std::string& path, const SuperOp& phi) {
    write_text_file(path, superop_to_json_text(phi));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << text;
    if (!out) throw ParseError(path + ": write failed");
}

} // namespace opdiam
