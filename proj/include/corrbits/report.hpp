#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "corrbits/error.hpp"
#include "corrbits/inequality.hpp"
#include "corrbits/rng.hpp"
#include "corrbits/version.hpp"

namespace corrbits {

enum class OutputFormat { tree, csv };

// Fixed-point formatting with 6 decimals. printf is correctly rounded here,
// which resolves exact decimal ties to the even digit; fixture comparisons
// rely on this being stable across platforms.
inline std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

inline std::string format_bool(bool value) { return value ? "true" : "false"; }

// Ordered key/value document with one optional table, rendering either as an
// indented tree (keys with dots group under their prefix) or as flat CSV.
class Document {
public:
    struct Table {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;
    };

    void add(std::string key, std::string value) {
        fields_.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    void add(std::string key, double value) { add(std::move(key), format_real(value)); }
    void add(std::string key, bool value) { add(std::move(key), format_bool(value)); }
    void add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, unsigned value) { add(std::move(key), std::to_string(value)); }

    Table& table() {
        has_table_ = true;
        return table_;
    }

    std::string render(OutputFormat format) const {
        return format == OutputFormat::tree ? render_tree() : render_csv();
    }

private:
    static std::string csv_escape(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\"\"";
            else out.push_back(c);
        }
        out.push_back('"');
        return out;
    }

    std::string render_tree() const {
        std::string out;
        std::string open_prefix;
        for (const auto& [key, value] : fields_) {
            const auto dot = key.find('.');
            if (dot == std::string::npos) {
                open_prefix.clear();
                out += key + ": " + value + "\n";
                continue;
            }
            const std::string prefix = key.substr(0, dot);
            if (prefix != open_prefix) {
                open_prefix = prefix;
                out += prefix + ":\n";
            }
            out += "  " + key.substr(dot + 1) + ": " + value + "\n";
        }
        if (has_table_) {
            if (!out.empty()) out += "\n";
            std::vector<std::size_t> widths(table_.header.size(), 0);
            for (std::size_t c = 0; c < table_.header.size(); ++c)
                widths[c] = table_.header[c].size();
            for (const auto& row : table_.rows)
                for (std::size_t c = 0; c < row.size(); ++c)
                    widths[c] = std::max(widths[c], row[c].size());
            const auto emit_row = [&](const std::vector<std::string>& row) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    out += row[c];
                    if (c + 1 < row.size())
                        out += std::string(widths[c] - row[c].size() + 2, ' ');
                }
                out += "\n";
            };
            emit_row(table_.header);
            for (const auto& row : table_.rows) emit_row(row);
        }
        return out;
    }

    std::string render_csv() const {
        std::string out = "key,value\n";
        for (const auto& [key, value] : fields_)
            out += csv_escape(key) + "," + csv_escape(value) + "\n";
        if (has_table_) {
            out += "\n";
            const auto emit_row = [&](const std::vector<std::string>& row) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    out += csv_escape(row[c]);
                    if (c + 1 < row.size()) out += ",";
                }
                out += "\n";
            };
            emit_row(table_.header);
            for (const auto& row : table_.rows) emit_row(row);
        }
        return out;
    }

    std::vector<std::pair<std::string, std::string>> fields_;
    Table table_;
    bool has_table_ = false;
};

// Standard preamble: tool identity and the deterministic-randomness id.
inline void append_preamble(Document& doc) {
    doc.add("tool", kToolName);
    doc.add("version", kToolVersion);
    doc.add("rng_id", kRngId);
}

// Serializes a chain evaluation with its fixed field set; the sampling fields
// appear only when the evaluation actually sampled.
inline void append_report(Document& doc, const InequalityReport& report) {
    doc.add("n_settings", report.n_settings);
    doc.add("block_size_k", report.block_size_k);
    doc.add("mode", to_string(report.mode));
    doc.add("source", to_string(report.source));
    doc.add("lhs", report.lhs);
    for (std::size_t i = 0; i < report.rhs_terms.size(); ++i)
        doc.add("rhs_terms." + std::to_string(i), report.rhs_terms[i]);
    doc.add("rhs_sum", report.rhs_sum);
    doc.add("correction", report.correction);
    doc.add("violated", report.violated);
    if (report.mode == EvalMode::monte_carlo) {
        doc.add("violated_uncorrected", report.violated_uncorrected);
        doc.add("n_bits", *report.n_bits);
        doc.add("seed", *report.seed);
        doc.add("rng_id", *report.rng_id);
    }
}

}  // namespace corrbits
