#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fw/complex_poly.hpp"

namespace fw {

// Axis-aligned sampling grid. Pixel (row r, column c) samples the point
// x0 + (c+0.5)*dx + i*(y1 - (r+0.5)*dy): row 0 is the top of the picture.
struct GridSpec {
    double x0 = -1.0;
    double x1 = 1.0;
    double y0 = -1.0;
    double y1 = 1.0;
    int nx = 0;
    int ny = 0;
};

struct PhasePortrait {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major from the top
};

// Polynomial values over the grid in pixel order. threads = 0 takes the
// FW_THREADS / hardware default; the pixel values do not depend on the
// thread count.
std::vector<cxd> grid_values(const ComplexPolynomial& p, const GridSpec& grid, int threads = 0);

// Colors each pixel by arg p(z): hue (arg + pi)/(2 pi), full saturation and
// value.
PhasePortrait phase_portrait(const ComplexPolynomial& p, const GridSpec& grid, int threads = 0);

// Binary P6, maxval 255.
void write_ppm(const PhasePortrait& img, const std::string& path);

// FW_THREADS when set (positive integer, else rejected), otherwise the
// hardware concurrency.
int thread_count_from_env();

}  // namespace fw
