#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fw {

// Locale-independent decimal form with 17 significant digits, enough for an
// exact double round trip.
inline std::string format_double(double v) {
    if (v == 0.0) return "0";  // fold out the sign of zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("parse_double: bad number '" + std::string(s) + "'");
    return v;
}

}  // namespace fw
