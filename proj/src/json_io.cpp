#include "ofq/json_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace ofq::jsonio {

std::string format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Value Value::array(std::vector<double> xs) {
    Array a;
    a.reserve(xs.size());
    for (double x : xs) a.emplace_back(x);
    return Value(std::move(a));
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    out += '"';
}

}  // namespace

void Value::write(std::string& out, int indent, bool pretty) const {
    const std::string pad(pretty ? 2 * (indent + 1) : 0, ' ');
    const std::string close_pad(pretty ? 2 * indent : 0, ' ');
    const char* nl = pretty ? "\n" : "";
    if (std::holds_alternative<std::nullptr_t>(data_)) {
        out += "null";
    } else if (std::holds_alternative<bool>(data_)) {
        out += std::get<bool>(data_) ? "true" : "false";
    } else if (std::holds_alternative<long long>(data_)) {
        out += std::to_string(std::get<long long>(data_));
    } else if (std::holds_alternative<double>(data_)) {
        out += format_double(std::get<double>(data_));
    } else if (std::holds_alternative<std::string>(data_)) {
        write_escaped(out, std::get<std::string>(data_));
    } else if (std::holds_alternative<Array>(data_)) {
        const auto& a = std::get<Array>(data_);
        out += '[';
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) out += ',';
            out += nl;
            out += pad;
            a[i].write(out, indent + 1, pretty);
        }
        if (!a.empty()) {
            out += nl;
            out += close_pad;
        }
        out += ']';
    } else {
        const auto& o = std::get<Object>(data_);
        out += '{';
        bool first = true;
        for (const auto& [k, v] : o) {
            if (!first) out += ',';
            first = false;
            out += nl;
            out += pad;
            write_escaped(out, k);
            out += pretty ? ": " : ":";
            v.write(out, indent + 1, pretty);
        }
        if (!o.empty()) {
            out += nl;
            out += close_pad;
        }
        out += '}';
    }
}

std::string Value::dump() const {
    std::string out;
    write(out, 0, false);
    return out;
}

std::string Value::dump_pretty() const {
    std::string out;
    write(out, 0, true);
    return out;
}

namespace {

nlohmann::json parse_or_fail(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::invalid_argument, "malformed JSON input");
    return j;
}

}  // namespace

FInput parse_f_input(const std::string& text) {
    nlohmann::json j = parse_or_fail(text);
    FInput in;
    if (j.contains("lambda")) {
        in.is_shorthand = true;
        in.lambda = j.at("lambda").get<std::vector<double>>();
        in.sign = j.value("sign", 1);
        return in;
    }
    if (!j.contains("n") || !j.contains("re"))
        fail(errc::invalid_argument, "matrix input needs \"n\" and \"re\" (or \"lambda\")");
    const int n = j.at("n").get<int>();
    auto re = j.at("re").get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im;
    if (j.contains("im")) im = j.at("im").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(re.size()) != n) fail(errc::not_square, "re has wrong row count");
    in.matrix.resize(n, n);
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(re[static_cast<std::size_t>(r)].size()) != n)
            fail(errc::not_square, "re has a wrong-length row");
        for (int ccol = 0; ccol < n; ++ccol) {
            double vr = re[static_cast<std::size_t>(r)][static_cast<std::size_t>(ccol)];
            double vi = 0.0;
            if (!im.empty()) {
                if (static_cast<int>(im.size()) != n ||
                    static_cast<int>(im[static_cast<std::size_t>(r)].size()) != n)
                    fail(errc::not_square, "im shape mismatch");
                vi = im[static_cast<std::size_t>(r)][static_cast<std::size_t>(ccol)];
            }
            in.matrix(r, ccol) = std::complex<double>(vr, vi);
        }
    }
    return in;
}

AnalyticPoly parse_polynomial(const std::string& text) {
    nlohmann::json j = parse_or_fail(text);
    if (!j.contains("lambda")) fail(errc::invalid_argument, "polynomial needs \"lambda\"");
    CanonicalF c = canonical_from_lambda(j.at("lambda").get<std::vector<double>>(),
                                         j.value("sign", 1));
    AnalyticPoly f(c);
    if (j.contains("terms")) {
        for (const auto& term : j.at("terms")) {
            IndexTuple s = term.value("s", IndexTuple{});
            IndexTuple t = term.value("t", IndexTuple{});
            double re = term.value("re", 0.0);
            double im = term.value("im", 0.0);
            f.add_term(s, t, {re, im});
        }
    }
    return f;
}

std::string polynomial_to_json(const AnalyticPoly& f) {
    Value::Array terms;
    for (const auto& [k, deg] : f.terms())
        for (const auto& [key, x] : deg) {
            Value::Object term;
            Value::Array s, t;
            for (int v : key.first) s.emplace_back(v);
            for (int v : key.second) t.emplace_back(v);
            term["s"] = Value(std::move(s));
            term["t"] = Value(std::move(t));
            term["re"] = Value(x.real());
            term["im"] = Value(x.imag());
            terms.emplace_back(Value(std::move(term)));
        }
    Value::Object root;
    root["lambda"] = Value::array(f.context().lambda);
    root["sign"] = Value(f.context().sign);
    root["terms"] = Value(std::move(terms));
    return Value(std::move(root)).dump();
}

}  // namespace ofq::jsonio
