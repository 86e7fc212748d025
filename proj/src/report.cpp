#include "grd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "grd/common.hpp"

namespace grd {

Json Json::array() {
    Json j;
    j.kind_ = Kind::Array;
    return j;
}

Json Json::object() {
    Json j;
    j.kind_ = Kind::Object;
    return j;
}

void Json::push_back(Json v) {
    if (kind_ == Kind::Null) kind_ = Kind::Array;
    arr_.push_back(std::move(v));
}

Json& Json::operator[](const std::string& key) {
    if (kind_ == Kind::Null) kind_ = Kind::Object;
    return obj_[key];
}

std::string Json::format_number(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e400" : "-1e400";  // out-of-range sentinel, never expected
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    std::string s(buf);
    // Ensure the token parses as a JSON number with a decimal point or exponent.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

static void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

void Json::emit(std::string& out, int indent, bool pretty) const {
    auto pad = [&](int n) {
        if (pretty) {
            out += '\n';
            out.append(static_cast<std::size_t>(2 * n), ' ');
        }
    };
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += bool_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(int_); break;
        case Kind::Real: out += format_number(real_); break;
        case Kind::Str: escape_into(out, str_); break;
        case Kind::Array: {
            out += '[';
            bool first = true;
            for (const auto& v : arr_) {
                if (!first) out += ',';
                first = false;
                pad(indent + 1);
                v.emit(out, indent + 1, pretty);
            }
            if (!arr_.empty()) pad(indent);
            out += ']';
            break;
        }
        case Kind::Object: {
            out += '{';
            bool first = true;
            for (const auto& [k, v] : obj_) {
                if (!first) out += ',';
                first = false;
                pad(indent + 1);
                escape_into(out, k);
                out += pretty ? ": " : ":";
                v.emit(out, indent + 1, pretty);
            }
            if (!obj_.empty()) pad(indent);
            out += '}';
            break;
        }
    }
}

std::string Json::dump() const {
    std::string out;
    emit(out, 0, false);
    return out;
}

std::string Json::dump_pretty() const {
    std::string out;
    emit(out, 0, true);
    out += '\n';
    return out;
}

void CheckReport::add_inequality(const std::string& id, const std::string& instance, double lhs,
                                 double rhs, double tol, const std::string& note) {
    CheckRow row;
    row.check_id = id;
    row.instance = instance;
    row.lhs = lhs;
    row.rhs = rhs;
    row.slack = rhs - lhs;
    row.pass = row.slack >= -tol;
    row.note = note;
    rows.push_back(std::move(row));
}

void CheckReport::add_equality(const std::string& id, const std::string& instance, double lhs,
                               double rhs, double tol, const std::string& note) {
    CheckRow row;
    row.check_id = id;
    row.instance = instance;
    row.lhs = lhs;
    row.rhs = rhs;
    row.slack = -std::abs(lhs - rhs);
    row.pass = row.slack >= -tol;
    row.note = note;
    rows.push_back(std::move(row));
}

void CheckReport::add_flag(const std::string& id, const std::string& instance, bool ok,
                           const std::string& note) {
    CheckRow row;
    row.check_id = id;
    row.instance = instance;
    row.lhs = ok ? 1.0 : 0.0;
    row.rhs = 1.0;
    row.slack = ok ? 0.0 : -1.0;
    row.pass = ok;
    row.note = note;
    rows.push_back(std::move(row));
}

void CheckReport::merge(const CheckReport& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

bool CheckReport::pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::size_t CheckReport::failures() const {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (!r.pass) ++n;
    return n;
}

Json CheckReport::to_json() const {
    std::vector<const CheckRow*> sorted;
    sorted.reserve(rows.size());
    for (const auto& r : rows) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](const CheckRow* a, const CheckRow* b) {
        if (a->check_id != b->check_id) return a->check_id < b->check_id;
        return a->instance < b->instance;
    });

    Json j = Json::object();
    j["command"] = command;
    j["params"] = params;
    j["seed"] = static_cast<long long>(seed);
    j["system"] = system;
    j["budget"] = budget;
    j["tolerance"] = tolerance;
    Json arr = Json::array();
    for (const CheckRow* r : sorted) {
        Json row = Json::object();
        row["check"] = r->check_id;
        row["instance"] = r->instance;
        row["lhs"] = r->lhs;
        row["rhs"] = r->rhs;
        row["slack"] = r->slack;
        row["verdict"] = r->pass ? "pass" : "fail";
        if (!r->note.empty()) row["note"] = r->note;
        arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    j["summary"] = pass() ? "pass" : "fail";
    j["failures"] = static_cast<long long>(failures());
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace grd
