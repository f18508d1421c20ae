#include "fw/set_descriptor.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fw {

using nlohmann::json;

void validate(const SetDescriptor& set) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SymmetricIntervals>) {
                if (!(0.0 < v.C && v.C < v.D))
                    throw std::invalid_argument("SymmetricIntervals: need 0 < C < D");
            } else if constexpr (std::is_same_v<T, StarIntervals>) {
                if (v.n < 1) throw std::invalid_argument("StarIntervals: need n >= 1");
                if (!(0.0 < v.C && v.C < v.D))
                    throw std::invalid_argument("StarIntervals: need 0 < C < D");
            } else if constexpr (std::is_same_v<T, AffineImage>) {
                if (v.alpha == cxd(0.0))
                    throw std::invalid_argument("AffineImage: alpha must be nonzero");
                if (!v.base) throw std::invalid_argument("AffineImage: missing base set");
                validate(*v.base);
            } else {
                if (std::abs(std::abs(v.lambda) - 1.0) > 1e-12)
                    throw std::invalid_argument("KochLiesenPreimage: lambda must be unimodular");
                if (!(v.opening > 0.0 && v.opening < 2.0 * std::numbers::pi))
                    throw std::invalid_argument("KochLiesenPreimage: opening out of range");
                if (!(v.R >= 1.0))
                    throw std::invalid_argument("KochLiesenPreimage: R must be >= 1");
                if (v.n < 2) throw std::invalid_argument("KochLiesenPreimage: need n >= 2");
            }
        },
        set.value);
}

namespace {

cxd complex_from_json(const json& j) {
    if (j.is_number()) return cxd(j.get<double>(), 0.0);
    return cxd(j.at("re").get<double>(), j.at("im").get<double>());
}

json complex_to_json(cxd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

SetDescriptor set_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    SetDescriptor out;
    if (type == "symmetric_intervals") {
        out.value = SymmetricIntervals{j.at("C").get<double>(), j.at("D").get<double>()};
    } else if (type == "star_intervals") {
        out.value = StarIntervals{j.at("n").get<int>(), j.at("C").get<double>(),
                                  j.at("D").get<double>()};
    } else if (type == "affine_image") {
        AffineImage a;
        a.alpha = complex_from_json(j.at("alpha"));
        a.beta = complex_from_json(j.at("beta"));
        a.base = std::make_shared<SetDescriptor>(set_from_json(j.at("base")));
        out.value = std::move(a);
    } else if (type == "koch_liesen_preimage") {
        out.value = KochLiesenPreimage{complex_from_json(j.at("lambda")),
                                       j.at("opening").get<double>(), j.at("R").get<double>(),
                                       j.at("n").get<int>()};
    } else {
        throw std::invalid_argument("set descriptor: unknown type '" + type + "'");
    }
    validate(out);
    return out;
}

json set_to_json(const SetDescriptor& set) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SymmetricIntervals>) {
                return json{{"type", "symmetric_intervals"}, {"C", v.C}, {"D", v.D}};
            } else if constexpr (std::is_same_v<T, StarIntervals>) {
                return json{{"type", "star_intervals"}, {"n", v.n}, {"C", v.C}, {"D", v.D}};
            } else if constexpr (std::is_same_v<T, AffineImage>) {
                return json{{"type", "affine_image"},
                            {"alpha", complex_to_json(v.alpha)},
                            {"beta", complex_to_json(v.beta)},
                            {"base", set_to_json(*v.base)}};
            } else {
                return json{{"type", "koch_liesen_preimage"},
                            {"lambda", complex_to_json(v.lambda)},
                            {"opening", v.opening},
                            {"R", v.R},
                            {"n", v.n}};
            }
        },
        set.value);
}

}  // namespace

SetDescriptor set_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("set descriptor: invalid JSON: ") + e.what());
    }
    try {
        return set_from_json(j);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("set descriptor: bad fields: ") + e.what());
    }
}

SetDescriptor set_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("set descriptor: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return set_from_json_text(ss.str());
}

std::string set_to_json_text(const SetDescriptor& set) { return set_to_json(set).dump(2); }

}  // namespace fw
