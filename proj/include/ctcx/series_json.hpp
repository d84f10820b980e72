#pragma once

// Series file format:
//   {"order": N, "coeffs": [[re, im], ...], "tag": "f"}
// with c_0 listed first and exactly N + 1 coefficient pairs.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ctcx/errors.hpp"
#include "ctcx/series.hpp"

namespace ctcx {

inline nlohmann::json complex_to_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline nlohmann::json series_to_json(const Series& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.coeffs()) {
        coeffs.push_back(complex_to_json(c));
    }
    return {{"order", s.order()}, {"coeffs", std::move(coeffs)}, {"tag", s.tag()}};
}

inline Series series_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs")) {
        throw ParseError("series JSON needs \"order\" and \"coeffs\"");
    }
    if (!j["order"].is_number_integer() || j["order"].get<long long>() < 0) {
        throw ParseError("series \"order\" must be a nonnegative integer");
    }
    const auto order = j["order"].get<std::size_t>();
    const auto& arr = j["coeffs"];
    if (!arr.is_array() || arr.size() != order + 1) {
        throw ParseError("series \"coeffs\" must hold order + 1 pairs");
    }
    std::vector<Complex> coeffs;
    coeffs.reserve(arr.size());
    for (const auto& c : arr) {
        coeffs.push_back(complex_from_json(c));
    }
    std::string tag;
    if (j.contains("tag")) {
        if (!j["tag"].is_string()) {
            throw ParseError("series \"tag\" must be a string");
        }
        tag = j["tag"].get<std::string>();
    }
    return Series(std::move(coeffs), std::move(tag));
}

inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileIOError("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FileIOError("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw FileIOError("write failed for " + path);
    }
}

}  // namespace ctcx
