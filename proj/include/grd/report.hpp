#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace grd {

/// Minimal JSON value with deterministic emission: object keys are sorted,
/// numbers are printed at 15 significant digits, so identical content gives
/// identical bytes.
class Json {
public:
    enum class Kind { Null, Bool, Int, Real, Str, Array, Object };

    Json() : kind_(Kind::Null) {}
    Json(bool b) : kind_(Kind::Bool), bool_(b) {}
    Json(int v) : kind_(Kind::Int), int_(v) {}
    Json(long long v) : kind_(Kind::Int), int_(v) {}
    Json(std::uint64_t v) : kind_(Kind::Int), int_(static_cast<long long>(v)) {}
    Json(double v) : kind_(Kind::Real), real_(v) {}
    Json(const char* s) : kind_(Kind::Str), str_(s) {}
    Json(std::string s) : kind_(Kind::Str), str_(std::move(s)) {}

    static Json array();
    static Json object();

    void push_back(Json v);                      // array
    Json& operator[](const std::string& key);    // object

    Kind kind() const { return kind_; }
    std::string dump() const;                    // compact
    std::string dump_pretty() const;             // 2-space indent

    /// Formats a double exactly as the JSON writer does ("%.15g").
    static std::string format_number(double v);

private:
    void emit(std::string& out, int indent, bool pretty) const;

    Kind kind_;
    bool bool_ = false;
    long long int_ = 0;
    double real_ = 0.0;
    std::string str_;
    std::vector<Json> arr_;
    std::map<std::string, Json> obj_;
};

/// One verified instance of a check. For an inequality lhs <= rhs the slack
/// is rhs - lhs; for an equality |lhs - rhs| <= tol the slack is -|lhs - rhs|.
/// Either way "pass" means slack >= -tolerance.
struct CheckRow {
    std::string check_id;
    std::string instance;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = true;
    std::string note;
};

struct CheckReport {
    std::string command;
    Json params = Json::object();
    std::uint64_t seed = 0;
    std::string system;
    std::string budget;
    double tolerance = 0.0;
    std::vector<CheckRow> rows;

    void add_inequality(const std::string& id, const std::string& instance, double lhs, double rhs,
                        double tol, const std::string& note = "");
    void add_equality(const std::string& id, const std::string& instance, double lhs, double rhs,
                      double tol, const std::string& note = "");
    void add_flag(const std::string& id, const std::string& instance, bool ok, const std::string& note = "");
    void merge(const CheckReport& other);

    bool pass() const;
    std::size_t failures() const;

    /// Rows sorted by (check_id, instance); part of the byte-stability contract.
    Json to_json() const;
    std::string to_json_text() const { return to_json().dump_pretty(); }
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace grd
