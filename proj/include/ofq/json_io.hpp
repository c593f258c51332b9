#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ofq/fmatrix.hpp"
#include "ofq/polynomial.hpp"

namespace ofq::jsonio {

// Deterministic JSON output: keys sorted lexicographically, numbers printed
// with %.17g, '.' decimal point, no locale dependence. Values are built up
// front and dumped in one pass; enough structure for the CLI's flat reports.
class Value {
  public:
    using Array = std::vector<Value>;
    using Object = std::map<std::string, Value>;

    Value() : data_(nullptr) {}
    Value(bool b) : data_(b) {}
    Value(int v) : data_(static_cast<long long>(v)) {}
    Value(long long v) : data_(v) {}
    Value(double v) : data_(v) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(Array a) : data_(std::move(a)) {}
    Value(Object o) : data_(std::move(o)) {}

    static Value array(std::vector<double> xs);

    std::string dump() const;  // compact
    std::string dump_pretty() const;

  private:
    void write(std::string& out, int indent, bool pretty) const;
    std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> data_;
};

std::string format_double(double v);  // %.17g with inf/nan guards

// Input side (tolerant parsing via nlohmann/json).

// {"n": N, "re": [[...]], "im": [[...]]} ("im" optional) or the canonical
// shorthand {"lambda": [...], "sign": 1}.
struct FInput {
    bool is_shorthand = false;
    Eigen::MatrixXcd matrix;         // when !is_shorthand
    std::vector<double> lambda;      // when is_shorthand
    int sign = 1;
};

FInput parse_f_input(const std::string& text);

// {"lambda": [...], "sign": 1, "terms": [{"s": [...], "t": [...], "re": x, "im": y}, ...]}
AnalyticPoly parse_polynomial(const std::string& text);

std::string polynomial_to_json(const AnalyticPoly& f);

}  // namespace ofq::jsonio
