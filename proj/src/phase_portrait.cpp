#include "fw/phase_portrait.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace fw {

namespace {

void validate_grid(const GridSpec& g) {
    if (!(g.x0 < g.x1) || !(g.y0 < g.y1))
        throw std::invalid_argument("grid: need x0 < x1 and y0 < y1");
    if (!std::isfinite(g.x0) || !std::isfinite(g.x1) || !std::isfinite(g.y0) ||
        !std::isfinite(g.y1))
        throw std::invalid_argument("grid: bounds must be finite");
    if (g.nx < 1 || g.ny < 1 || g.nx > 4096 || g.ny > 4096)
        throw std::invalid_argument("grid: nx, ny must lie in [1, 4096]");
}

void hue_to_rgb(double h, std::uint8_t* out) {
    // S = V = 1: walk the six hue sectors.
    h -= std::floor(h);
    const double x6 = h * 6.0;
    const int sector = std::min(5, int(x6));
    const double f = x6 - double(sector);
    const double q = 1.0 - f;
    double r = 0.0, g = 0.0, b = 0.0;
    switch (sector) {
        case 0: r = 1.0; g = f; break;
        case 1: r = q; g = 1.0; break;
        case 2: g = 1.0; b = f; break;
        case 3: g = q; b = 1.0; break;
        case 4: r = f; b = 1.0; break;
        default: r = 1.0; b = q; break;
    }
    out[0] = std::uint8_t(std::lround(255.0 * r));
    out[1] = std::uint8_t(std::lround(255.0 * g));
    out[2] = std::uint8_t(std::lround(255.0 * b));
}

}  // namespace

int thread_count_from_env() {
    if (const char* env = std::getenv("FW_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 1024)
            throw std::invalid_argument("FW_THREADS must be a positive integer");
        return int(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

std::vector<cxd> grid_values(const ComplexPolynomial& p, const GridSpec& grid, int threads) {
    validate_grid(grid);
    if (threads <= 0) threads = thread_count_from_env();

    const double dx = (grid.x1 - grid.x0) / double(grid.nx);
    const double dy = (grid.y1 - grid.y0) / double(grid.ny);
    std::vector<cxd> values(size_t(grid.nx) * size_t(grid.ny));

    // Whole rows per task: the batch evaluation always sees one full row, so
    // lane grouping (and with it every pixel value) is independent of the
    // thread count.
    auto run_rows = [&](int r0, int r1) {
        std::vector<cxd> pts(static_cast<size_t>(grid.nx));
        for (int r = r0; r < r1; ++r) {
            const double y = grid.y1 - (double(r) + 0.5) * dy;
            for (int c = 0; c < grid.nx; ++c)
                pts[size_t(c)] = cxd(grid.x0 + (double(c) + 0.5) * dx, y);
            p.eval_many(pts, std::span<cxd>(values).subspan(size_t(r) * size_t(grid.nx),
                                                            size_t(grid.nx)));
        }
    };

    const int T = std::min(threads, grid.ny);
    if (T <= 1) {
        run_rows(0, grid.ny);
        return values;
    }
    std::vector<std::thread> pool;
    pool.reserve(size_t(T));
    const int chunk = (grid.ny + T - 1) / T;
    for (int t = 0; t < T; ++t) {
        const int r0 = t * chunk;
        const int r1 = std::min(grid.ny, r0 + chunk);
        if (r0 >= r1) break;
        pool.emplace_back(run_rows, r0, r1);
    }
    for (auto& th : pool) th.join();
    return values;
}

PhasePortrait phase_portrait(const ComplexPolynomial& p, const GridSpec& grid, int threads) {
    const std::vector<cxd> values = grid_values(p, grid, threads);
    PhasePortrait img;
    img.width = grid.nx;
    img.height = grid.ny;
    img.rgb.resize(values.size() * 3);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (size_t i = 0; i < values.size(); ++i) {
        const double h = (std::arg(values[i]) + std::numbers::pi) / two_pi;
        hue_to_rgb(h, &img.rgb[3 * i]);
    }
    return img;
}

void write_ppm(const PhasePortrait& img, const std::string& path) {
    if (img.width < 1 || img.height < 1 ||
        img.rgb.size() != 3 * size_t(img.width) * size_t(img.height))
        throw std::invalid_argument("write_ppm: inconsistent image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_ppm: cannot open " + path);
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()),
              std::streamsize(img.rgb.size()));
    if (!out) throw std::runtime_error("write_ppm: write failed for " + path);
}

}  // namespace fw
