// io.hpp
// Trace files (CSV / JSON) and the oracle text format.

#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "grover/core.hpp"
#include "grover/termination.hpp"

namespace grover {

enum class TraceFormat { csv, json };

inline TraceFormat parse_trace_format(std::string_view s) {
    if (s == "csv") return TraceFormat::csv;
    if (s == "json") return TraceFormat::json;
    throw error(errc::parse_error, "format: expected csv or json, got '" + std::string(s) + "'");
}

inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr std::string_view trace_header = "iter,vx,va,p_success,entropy_bits";

inline void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << trace_header << '\n';
    for (const TraceRow& r : rows) {
        out << r.iter << ',' << format_real(r.vx) << ',' << format_real(r.va) << ',' << format_real(r.p_success) << ',';
        if (r.entropy_bits) out << format_real(*r.entropy_bits);
        out << '\n';
    }
}

inline void write_trace_json(std::ostream& out, const std::vector<TraceRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TraceRow& r : rows) {
        nlohmann::json o;
        o["iter"] = r.iter;
        o["vx"] = r.vx;
        o["va"] = r.va;
        o["p_success"] = r.p_success;
        o["entropy_bits"] = r.entropy_bits ? nlohmann::json(*r.entropy_bits) : nlohmann::json(nullptr);
        arr.push_back(std::move(o));
    }
    out << arr.dump(1) << '\n';
}

inline void write_trace(std::ostream& out, const std::vector<TraceRow>& rows, TraceFormat format) {
    if (format == TraceFormat::csv)
        write_trace_csv(out, rows);
    else
        write_trace_json(out, rows);
}

inline void emit_trace(const std::vector<TraceRow>& rows, TraceFormat format, const std::string& path) {
    if (rows.empty()) throw error(errc::io_error, "refusing to write an empty trace to '" + path + "'");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::io_error, "cannot open trace '" + path + "' for writing");
    write_trace(out, rows, format);
    out.flush();
    if (!out) throw error(errc::io_error, "write to trace '" + path + "' failed");
}

inline std::vector<TraceRow> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != trace_header)
        throw error(errc::parse_error, "trace: missing header '" + std::string(trace_header) + "'");
    std::vector<TraceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest = line;
        for (;;) {
            const auto c = rest.find(',');
            f.push_back(rest.substr(0, c));
            if (c == std::string_view::npos) break;
            rest = rest.substr(c + 1);
        }
        if (f.size() != 5) throw error(errc::parse_error, "trace: expected 5 fields in '" + line + "'");
        TraceRow r;
        r.iter = detail::parse_uint(f[0], "trace iter");
        r.vx = detail::parse_real(f[1], "trace vx");
        r.va = detail::parse_real(f[2], "trace va");
        r.p_success = detail::parse_real(f[3], "trace p_success");
        if (!f[4].empty()) r.entropy_bits = detail::parse_real(f[4], "trace entropy_bits");
        rows.push_back(r);
    }
    return rows;
}

inline std::vector<TraceRow> read_trace_json(std::istream& in) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::parse_error, std::string("trace json: ") + e.what());
    }
    if (!arr.is_array()) throw error(errc::parse_error, "trace json: expected an array");
    std::vector<TraceRow> rows;
    for (const auto& o : arr) {
        TraceRow r;
        r.iter = o.at("iter").get<std::uint64_t>();
        r.vx = o.at("vx").get<double>();
        r.va = o.at("va").get<double>();
        r.p_success = o.at("p_success").get<double>();
        if (!o.at("entropy_bits").is_null()) r.entropy_bits = o.at("entropy_bits").get<double>();
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Oracle text format:
//   n=<int>
//   marked=<comma-separated decimal indices>

inline std::vector<index_t> parse_index_list(std::string_view text) {
    std::vector<index_t> out;
    std::string_view rest = text;
    while (true) {
        const auto c = rest.find(',');
        const std::string_view tok = detail::trim(rest.substr(0, c));
        if (tok.empty()) throw error(errc::parse_error, "marked: empty entry in '" + std::string(text) + "'");
        out.push_back(detail::parse_uint(tok, "marked index"));
        if (c == std::string_view::npos) break;
        rest = rest.substr(c + 1);
    }
    return out;
}

inline OracleSpec parse_oracle(std::istream& in) {
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::string> lines;
    std::istringstream ls(content);
    std::string line;
    while (std::getline(ls, line)) {
        std::string stripped;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) stripped += ch;
        if (!stripped.empty()) lines.push_back(std::move(stripped));
    }
    if (lines.size() != 2) throw error(errc::parse_error, "oracle file: expected 2 lines (n=..., marked=...)");
    if (lines[0].rfind("n=", 0) != 0) throw error(errc::parse_error, "oracle file: first line must be n=<int>");
    if (lines[1].rfind("marked=", 0) != 0)
        throw error(errc::parse_error, "oracle file: second line must be marked=<list>");
    const std::uint64_t n = detail::parse_uint(std::string_view(lines[0]).substr(2), "oracle n");
    if (n > static_cast<std::uint64_t>(max_qubits)) throw error(errc::qubit_count_out_of_range, "oracle n=" + lines[0]);
    return make_oracle(static_cast<int>(n), parse_index_list(std::string_view(lines[1]).substr(7)));
}

inline OracleSpec read_oracle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::io_error, "cannot open oracle file '" + path + "'");
    return parse_oracle(in);
}

inline void write_oracle(std::ostream& out, const OracleSpec& oracle) {
    out << "n=" << oracle.n() << "\nmarked=";
    for (std::size_t i = 0; i < oracle.marked().size(); ++i) out << (i ? "," : "") << oracle.marked()[i];
    out << '\n';
}

}  // namespace grover
