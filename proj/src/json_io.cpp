#include "ifcr/json_io.hpp"

#include <fstream>

namespace ifcr::json_io {

namespace {

const json& require(const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end()) raise(errc::missing_field, std::string("required field \"") + field + "\"");
    return *it;
}

double require_number(const json& obj, const char* field) {
    const json& v = require(obj, field);
    if (!v.is_number()) raise(errc::bad_value, std::string("field \"") + field + "\" must be a number");
    return v.get<double>();
}

cplx require_complex(const json& obj, const char* field) {
    const json& v = require(obj, field);
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_object()) {
        if (!v.contains("re") || !v.contains("im"))
            raise(errc::bad_value, std::string("field \"") + field + "\" needs \"re\" and \"im\"");
        if (!v["re"].is_number() || !v["im"].is_number())
            raise(errc::bad_value, std::string("field \"") + field + "\" re/im must be numbers");
        return cplx(v["re"].get<double>(), v["im"].get<double>());
    }
    raise(errc::bad_value, std::string("field \"") + field + "\" must be a number or {re, im}");
}

std::vector<double> require_number_array(const json& obj, const char* field) {
    const json& v = require(obj, field);
    if (!v.is_array()) raise(errc::bad_value, std::string("field \"") + field + "\" must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) raise(errc::bad_value, std::string("field \"") + field + "\" must contain numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

json complex_to_json(const cplx& z) {
    if (z.imag() == 0.0) return json(z.real());
    return json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

AnyChannel parse_channel(const json& spec) {
    if (!spec.is_object()) raise(errc::bad_value, "channel spec must be a JSON object");
    const json& kind = require(spec, "kind");
    if (!kind.is_string()) raise(errc::bad_value, "field \"kind\" must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "gaussian") {
        GaussianChannel ch;
        ch.h11 = require_number(spec, "h11");
        ch.h22 = require_number(spec, "h22");
        ch.h1c = require_number(spec, "h1c");
        ch.h2c = require_number(spec, "h2c");
        ch.h12 = require_complex(spec, "h12");
        ch.h21 = require_complex(spec, "h21");
        return validate(ch);
    }
    if (k == "discrete") {
        const json& sizes = require(spec, "sizes");
        if (!sizes.is_array() || sizes.size() != 5)
            raise(errc::bad_value, "field \"sizes\" must be [n1, n2, nc, m1, m2]");
        for (const auto& s : sizes)
            if (!s.is_number_integer() || s.get<int>() < 1)
                raise(errc::bad_value, "field \"sizes\" entries must be integers >= 1");
        DiscreteChannel ch;
        ch.n1 = sizes[0].get<int>();
        ch.n2 = sizes[1].get<int>();
        ch.nc = sizes[2].get<int>();
        ch.m1 = sizes[3].get<int>();
        ch.m2 = sizes[4].get<int>();
        ch.t = require_number_array(spec, "t");
        return validate(ch);
    }
    raise(errc::unknown_kind, "channel kind '" + k + "' (expected \"gaussian\" or \"discrete\")");
}

namespace {

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::bad_value, "cannot open '" + path + "'");
    json spec;
    try {
        in >> spec;
    } catch (const json::exception& e) {
        raise(errc::bad_value, "invalid JSON in '" + path + "': " + e.what());
    }
    return spec;
}

}  // namespace

AnyChannel load_channel(const std::string& path) { return parse_channel(load_file(path)); }

ProductInputDistribution parse_product_distribution(const json& spec) {
    if (!spec.is_object()) raise(errc::bad_value, "distribution spec must be a JSON object");
    ProductInputDistribution d;
    d.p1 = require_number_array(spec, "p1");
    d.p2 = require_number_array(spec, "p2");
    d.pc = require_number_array(spec, "pc");
    return validate(d);
}

ProductInputDistribution load_product_distribution(const std::string& path) {
    return parse_product_distribution(load_file(path));
}

json to_json(const GaussianChannel& ch) {
    return json{{"kind", "gaussian"}, {"h11", ch.h11},
                {"h22", ch.h22},      {"h1c", ch.h1c},
                {"h2c", ch.h2c},      {"h12", complex_to_json(ch.h12)},
                {"h21", complex_to_json(ch.h21)}};
}

json to_json(const DiscreteChannel& ch) {
    return json{{"kind", "discrete"},
                {"sizes", {ch.n1, ch.n2, ch.nc, ch.m1, ch.m2}},
                {"t", ch.t}};
}

json to_json(const ProductInputDistribution& d) {
    return json{{"p1", d.p1}, {"p2", d.p2}, {"pc", d.pc}};
}

json to_json(const RegimeLabel& label) {
    return json{{"label", regime_name(label.regime)},
                {"user", label.user},
                {"strongMargin", label.strongMargin},
                {"veryStrongMargin", label.veryStrongMargin},
                {"strongBoundary", label.strongBoundary},
                {"veryStrongBoundary", label.veryStrongBoundary}};
}

json to_json(const discrete::ConditionReport& rep) {
    return json{{"eq5Min", rep.eq5Min},
                {"eq10Min", rep.eq10Min},
                {"eq5Witness", to_json(rep.eq5Witness)},
                {"eq10Witness", to_json(rep.eq10Witness)},
                {"nSamples", rep.nSamples},
                {"seed", rep.seed}};
}

}  // namespace ifcr::json_io
