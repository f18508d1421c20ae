#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>

namespace fw {

using cxd = std::complex<double>;

// [-D,-C] u [C,D] on the real axis, 0 < C < D.
struct SymmetricIntervals {
    double C = 0.0;
    double D = 0.0;
};

// n rotated copies of [C,D]: union of e^{2 pi i j / n} [C, D].
struct StarIntervals {
    int n = 0;
    double C = 0.0;
    double D = 0.0;
};

struct SetDescriptor;

// alpha * (base set) + beta, alpha != 0.
struct AffineImage {
    cxd alpha{1.0, 0.0};
    cxd beta{0.0, 0.0};
    std::shared_ptr<const SetDescriptor> base;
};

// n-th root preimage of the circular-boundary region Omega(lambda, opening, R):
// E = {z : z^n in Omega}. |lambda| = 1, 0 < opening < 2 pi, 1 <= R < radius bound.
struct KochLiesenPreimage {
    cxd lambda{-1.0, 0.0};
    double opening = 0.0;
    double R = 1.0;
    int n = 2;
};

struct SetDescriptor {
    std::variant<SymmetricIntervals, StarIntervals, AffineImage, KochLiesenPreimage> value;
};

// Validates structural constraints; throws std::invalid_argument.
void validate(const SetDescriptor& set);

// JSON round trip. Schema is documented in the README; complex numbers are
// {"re": x, "im": y} objects.
SetDescriptor set_from_json_text(const std::string& text);
SetDescriptor set_from_json_file(const std::string& path);
std::string set_to_json_text(const SetDescriptor& set);

}  // namespace fw
