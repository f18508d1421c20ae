// Command line front end: poly / norms / acf / phase / series / check.
//
// Exit codes: 0 success, 2 bad configuration or arguments, 3 numerical
// failure (quadrature that refuses to converge, inversion failures, ...).

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fw/conformal_maps.hpp"
#include "fw/faber_walsh.hpp"
#include "fw/lemniscatic.hpp"
#include "fw/numio.hpp"
#include "fw/phase_portrait.hpp"
#include "fw/set_descriptor.hpp"

namespace {

using fw::cxd;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        const size_t comma = s.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

int parse_int(const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

cxd parse_complex(const std::string& s) {
    const auto parts = split_commas(s);
    if (parts.size() == 1) return cxd(fw::parse_double(parts[0]), 0.0);
    if (parts.size() == 2)
        return cxd(fw::parse_double(parts[0]), fw::parse_double(parts[1]));
    throw std::invalid_argument("complex value must be re or re,im: '" + s + "'");
}

fw::GridSpec parse_grid(const std::string& s) {
    const auto parts = split_commas(s);
    if (parts.size() != 6)
        throw std::invalid_argument("--grid needs x0,x1,y0,y1,nx,ny");
    fw::GridSpec g;
    g.x0 = fw::parse_double(parts[0]);
    g.x1 = fw::parse_double(parts[1]);
    g.y0 = fw::parse_double(parts[2]);
    g.y1 = fw::parse_double(parts[3]);
    g.nx = parse_int(parts[4]);
    g.ny = parse_int(parts[5]);
    return g;
}

fw::FirstFocus parse_order(const std::string& s) {
    if (s == "descending") return fw::FirstFocus::descending_real;
    if (s == "ascending") return fw::FirstFocus::ascending_real;
    if (s == "domain") return fw::FirstFocus::domain_order;
    throw std::invalid_argument("--seq-order must be descending, ascending or domain");
}

// Output sink: file when --out is given, stdout otherwise.
struct OutStream {
    std::ofstream file;
    std::ostream* os = nullptr;

    explicit OutStream(const std::string& path) {
        if (path.empty()) {
            os = &std::cout;
        } else {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file " + path);
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

struct Common {
    std::string set_path;
    std::string map_path;
    std::string out_path;
    std::string seq_order = "descending";
};

void add_common(CLI::App* sub, Common& c, bool with_map = true) {
    sub->add_option("--set", c.set_path, "set descriptor JSON file");
    if (with_map)
        sub->add_option("--map", c.map_path, "tabulated conformal map JSON file");
    sub->add_option("--out", c.out_path, "output file (stdout when omitted)");
    sub->add_option("--seq-order", c.seq_order,
                    "focus tie-break: descending | ascending | domain");
}

fw::ConformalPair load_pair(const Common& c, int laurent_order) {
    if (c.set_path.empty() == c.map_path.empty())
        throw std::invalid_argument("exactly one of --set or --map is required");
    if (!c.map_path.empty()) return fw::tabulated_pair_from_json_file(c.map_path);
    return fw::pair_from_descriptor(fw::set_from_json_file(c.set_path), laurent_order);
}

void check_degree(int degree) {
    if (degree < 0 || degree > 64)
        throw std::invalid_argument("degree / kmax must lie in [0, 64]");
}

void print_sequence_header(std::ostream& os, const fw::ConformalPair& pair,
                           const fw::FocusSequence& seq) {
    os << "# capacity = " << fw::format_double(pair.domain.capacity) << '\n';
    os << "# foci =";
    for (cxd a : pair.domain.foci)
        os << ' ' << fw::format_double(a.real()) << ',' << fw::format_double(a.imag());
    os << '\n';
    os << "# exponents =";
    for (double m : pair.domain.exponents) os << ' ' << fw::format_double(m);
    os << '\n';
    os << "# sequence =";
    for (int k = 1; k <= seq.length(); ++k) os << ' ' << seq.entry_index(k);
    os << '\n';
}

void run_poly(const Common& c, int degree, const std::string& method, bool as_json) {
    check_degree(degree);
    fw::ConformalPair pair = load_pair(c, std::max(64, degree + 8));
    const fw::FocusSequence seq =
        fw::build_focus_sequence(pair.domain, std::max(1, degree), parse_order(c.seq_order));

    std::vector<fw::ComplexPolynomial> polys;
    if (method == "recursion") {
        polys = fw::recursion_family(pair.psi_laurent, seq, degree).polys;
    } else if (method == "contour") {
        for (int k = 0; k <= degree; ++k)
            polys.push_back(fw::contour_polynomial(pair, seq, k));
    } else if (method == "laurent") {
        for (int k = 0; k <= degree; ++k)
            polys.push_back(fw::laurent_part_polynomial(pair, seq, k));
    } else {
        throw std::invalid_argument("--method must be recursion, contour or laurent");
    }

    OutStream out(c.out_path);
    if (as_json) {
        nlohmann::ordered_json j;
        j["capacity"] = pair.domain.capacity;
        j["foci"] = nlohmann::ordered_json::array();
        for (cxd a : pair.domain.foci)
            j["foci"].push_back({{"re", a.real()}, {"im", a.imag()}});
        j["exponents"] = pair.domain.exponents;
        j["sequence"] = nlohmann::ordered_json::array();
        for (int k = 1; k <= seq.length(); ++k) j["sequence"].push_back(seq.entry_index(k));
        j["polynomials"] = nlohmann::ordered_json::array();
        for (const auto& p : polys) {
            nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
            for (int i = 0; i <= p.degree(); ++i)
                coeffs.push_back({{"re", p.coeff(i).real()}, {"im", p.coeff(i).imag()}});
            j["polynomials"].push_back(std::move(coeffs));
        }
        out.get() << j.dump(2) << '\n';
        return;
    }

    print_sequence_header(out.get(), pair, seq);
    out.get() << "k,power,re,im\n";
    for (size_t k = 0; k < polys.size(); ++k)
        for (int i = 0; i <= polys[k].degree(); ++i)
            out.get() << k << ',' << i << ',' << fw::format_double(polys[k].coeff(i).real())
                      << ',' << fw::format_double(polys[k].coeff(i).imag()) << '\n';
}

void run_norms(const Common& c, int kmax, const std::string& z0s, int density) {
    check_degree(kmax);
    if (c.set_path.empty())
        throw std::invalid_argument("norms requires --set (sup norms need set geometry)");
    if (!c.map_path.empty())
        throw std::invalid_argument("norms does not accept --map");
    const cxd z0 = parse_complex(z0s);
    fw::ConformalPair pair = load_pair(c, std::max(64, kmax + 8));
    const fw::FocusSequence seq =
        fw::build_focus_sequence(pair.domain, std::max(1, kmax), parse_order(c.seq_order));
    const fw::FaberWalshFamily fam = fw::recursion_family(pair.psi_laurent, seq, kmax);
    const auto rows = fw::norm_decay_table(fam, pair, z0, kmax, density);

    OutStream out(c.out_path);
    out.get() << "k,norm,normalized,acf_power\n";
    for (const auto& r : rows)
        out.get() << r.k << ',' << fw::format_double(r.norm) << ','
                  << fw::format_double(r.normalized) << ',' << fw::format_double(r.acf_power)
                  << '\n';
}

void run_acf(const Common& c, const std::string& z0s, const std::string& grids,
             const std::string& profiles) {
    fw::ConformalPair pair = load_pair(c, 64);
    OutStream out(c.out_path);

    if (!grids.empty()) {
        const fw::GridSpec g = parse_grid(grids);
        if (g.nx < 1 || g.ny < 1 || g.nx > 4096 || g.ny > 4096)
            throw std::invalid_argument("--grid nx, ny must lie in [1, 4096]");
        if (!(g.x0 < g.x1) || !(g.y0 < g.y1))
            throw std::invalid_argument("--grid needs x0 < x1 and y0 < y1");
        const double dx = (g.x1 - g.x0) / double(g.nx);
        const double dy = (g.y1 - g.y0) / double(g.ny);
        out.get() << "x,y,acf\n";
        for (int r = 0; r < g.ny; ++r) {
            const double y = g.y1 - (double(r) + 0.5) * dy;
            for (int col = 0; col < g.nx; ++col) {
                const double x = g.x0 + (double(col) + 0.5) * dx;
                out.get() << fw::format_double(x) << ',' << fw::format_double(y) << ','
                          << fw::format_double(fw::acf(pair, cxd(x, y))) << '\n';
            }
        }
        return;
    }
    if (!profiles.empty()) {
        const auto parts = split_commas(profiles);
        if (parts.size() != 5)
            throw std::invalid_argument("--profile needs re0,im0,re1,im1,n");
        const cxd a(fw::parse_double(parts[0]), fw::parse_double(parts[1]));
        const cxd b(fw::parse_double(parts[2]), fw::parse_double(parts[3]));
        const int n = parse_int(parts[4]);
        if (n < 2) throw std::invalid_argument("--profile needs n >= 2");
        out.get() << "x,y,acf\n";
        for (int i = 0; i < n; ++i) {
            const cxd z = a + (b - a) * (double(i) / double(n - 1));
            out.get() << fw::format_double(z.real()) << ',' << fw::format_double(z.imag())
                      << ',' << fw::format_double(fw::acf(pair, z)) << '\n';
        }
        return;
    }
    if (z0s.empty())
        throw std::invalid_argument("acf needs one of --z0, --grid or --profile");
    out.get() << fw::format_double(fw::acf(pair, parse_complex(z0s))) << '\n';
}

void run_phase(const Common& c, int degree, const std::string& grids) {
    check_degree(degree);
    if (c.out_path.empty()) throw std::invalid_argument("phase requires --out");
    if (grids.empty()) throw std::invalid_argument("phase requires --grid");
    fw::ConformalPair pair = load_pair(c, std::max(64, degree + 8));
    const fw::FocusSequence seq =
        fw::build_focus_sequence(pair.domain, std::max(1, degree), parse_order(c.seq_order));
    const fw::FaberWalshFamily fam = fw::recursion_family(pair.psi_laurent, seq, degree);
    fw::write_ppm(fw::phase_portrait(fam[degree], parse_grid(grids)), c.out_path);
}

std::function<cxd(cxd)> parse_function(const std::string& s) {
    if (s == "exp") return [](cxd z) { return std::exp(z); };
    if (s.rfind("poly:", 0) == 0) {
        std::vector<cxd> coeffs;
        for (const auto& part : split_commas(s.substr(5)))
            coeffs.emplace_back(fw::parse_double(part), 0.0);
        const fw::ComplexPolynomial p(std::move(coeffs));
        return [p](cxd z) { return p.eval(z); };
    }
    if (s.rfind("rational:", 0) == 0) {
        const cxd pole = parse_complex(s.substr(9));
        return [pole](cxd z) { return 1.0 / (z - pole); };
    }
    throw std::invalid_argument(
        "--function must be exp, poly:c0,c1,... or rational:re,im");
}

void run_series(const Common& c, int kmax, const std::string& fns, double lambda,
                int max_nodes) {
    check_degree(kmax);
    fw::ConformalPair pair = load_pair(c, std::max(64, kmax + 8));
    const fw::FocusSequence seq =
        fw::build_focus_sequence(pair.domain, kmax + 1, parse_order(c.seq_order));
    fw::SeriesContour contour;
    if (lambda > 0.0) {
        contour.entire = false;
        contour.lambda = lambda;
    }
    if (max_nodes > 0) {
        if (max_nodes < 64) throw std::invalid_argument("--nodes must be >= 64");
        contour.max_nodes = max_nodes;
    }
    const fw::SeriesExpansion se =
        fw::series_expansion(pair, seq, parse_function(fns), kmax, contour);

    OutStream out(c.out_path);
    out.get() << "k,re,im\n";
    for (size_t k = 0; k < se.coeffs.size(); ++k)
        out.get() << k << ',' << fw::format_double(se.coeffs[k].real()) << ','
                  << fw::format_double(se.coeffs[k].imag()) << '\n';
}

void run_check(const Common& c, int kmax) {
    check_degree(kmax);
    if (kmax < 2) throw std::invalid_argument("check needs --kmax >= 2");
    fw::ConformalPair pair = load_pair(c, std::max(64, kmax + 8));
    OutStream out(c.out_path);
    int failures = 0;
    auto report = [&](bool ok, const std::string& what) {
        out.get() << (ok ? "[PASS] " : "[FAIL] ") << what << '\n';
        if (!ok) ++failures;
    };

    const auto& L = pair.psi_laurent;
    report(std::abs(L.linear() - 1.0) <= 1e-9 && std::abs(L.constant()) <= 1e-9,
           "psi series normalized at infinity");

    const fw::FocusSequence long_seq = fw::build_focus_sequence(
        pair.domain, 10000, parse_order(c.seq_order));
    report(long_seq.max_balance_deviation() <= 1.0 + 1e-9,
           "focus sequence balance within 1");

    const fw::FocusSequence seq =
        fw::build_focus_sequence(pair.domain, std::max(1, kmax), parse_order(c.seq_order));
    const fw::FaberWalshFamily fam = fw::recursion_family(pair.psi_laurent, seq, kmax);
    bool monic = true;
    for (int k = 0; k <= kmax; ++k)
        monic = monic && fam[k].degree() == k && std::abs(fam[k].leading() - 1.0) <= 1e-9;
    report(monic, "recursion family monic with exact degrees");

    const fw::ComplexPolynomial alt = fw::laurent_part_polynomial(pair, seq, kmax);
    double dev = 0.0;
    const fw::ComplexPolynomial diff = fam[kmax] - alt;
    for (cxd v : diff.coeffs()) dev = std::max(dev, std::abs(v));
    report(dev <= 1e-7, "recursion agrees with the series product route");

    const double far = 2.0 * fw::outer_modulus(pair.domain) + 1.0;
    const double R = fw::acf_generic(pair, cxd(far, 0.17));
    report(R > 0.0 && R < 1.0, "acf at a far exterior point lies in (0,1)");

    if (pair.set) {
        const double norm = fw::sup_norm_on_set(fam[kmax], *pair.set);
        const double cap_power = std::pow(pair.domain.capacity, double(kmax));
        report(norm >= cap_power * (1.0 - 1e-9),
               "sup norm respects the capacity lower bound");
    }

    const auto pts = fw::level_curve_points(pair.domain, 2.0, 256);
    const auto rb = fw::ratio_bounds(seq, pair.domain, pts, kmax);
    report(rb.lower > 1e-12 && rb.upper < 1e12 && rb.lower <= rb.upper,
           "u_k / U^k ratio bounded on a level curve");

    if (failures > 0)
        throw std::runtime_error(std::to_string(failures) + " invariant check(s) failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Faber-Walsh polynomial families, convergence factors, and series expansions"};
    app.require_subcommand(1);

    Common c_poly, c_norms, c_acf, c_phase, c_series, c_check;
    int degree = 8, kmax_norms = 20, kmax_series = 20, kmax_check = 10;
    int density = 256, max_nodes = 0;
    std::string method = "recursion", z0_norms, z0_acf, grid_acf, profile_acf;
    std::string grid_phase, function_series;
    double lambda = 0.0;
    bool poly_json = false;

    CLI::App* poly = app.add_subcommand("poly", "polynomial coefficients");
    add_common(poly, c_poly);
    poly->add_option("--degree", degree, "highest degree")->required();
    poly->add_option("--method", method, "recursion | contour | laurent");
    poly->add_flag("--json", poly_json, "JSON instead of CSV");

    CLI::App* norms = app.add_subcommand("norms", "sup norm decay table");
    add_common(norms, c_norms, false);
    norms->add_option("--kmax", kmax_norms, "highest degree")->required();
    norms->add_option("--z0", z0_norms, "reference point re,im")->required();
    norms->add_option("--density", density, "boundary sample density");

    CLI::App* acf_cmd = app.add_subcommand("acf", "asymptotic convergence factor");
    add_common(acf_cmd, c_acf);
    acf_cmd->add_option("--z0", z0_acf, "point re,im");
    acf_cmd->add_option("--grid", grid_acf, "x0,x1,y0,y1,nx,ny");
    acf_cmd->add_option("--profile", profile_acf, "segment re0,im0,re1,im1,n");

    CLI::App* phase = app.add_subcommand("phase", "phase portrait PPM");
    add_common(phase, c_phase);
    phase->add_option("--degree", degree, "degree of the rendered polynomial")->required();
    phase->add_option("--grid", grid_phase, "x0,x1,y0,y1,nx,ny")->required();

    CLI::App* series = app.add_subcommand("series", "expansion coefficients");
    add_common(series, c_series);
    series->add_option("--kmax", kmax_series, "highest coefficient")->required();
    series->add_option("--function", function_series, "exp | poly:c0,c1,... | rational:re,im")
        ->required();
    series->add_option("--lambda", lambda, "integrate on the level |U| = lambda * capacity");
    series->add_option("--nodes", max_nodes, "quadrature node cap");

    CLI::App* check = app.add_subcommand("check", "invariant battery");
    add_common(check, c_check);
    check->add_option("--kmax", kmax_check, "degree for the polynomial checks");

    poly->callback([&] { run_poly(c_poly, degree, method, poly_json); });
    norms->callback([&] { run_norms(c_norms, kmax_norms, z0_norms, density); });
    acf_cmd->callback([&] { run_acf(c_acf, z0_acf, grid_acf, profile_acf); });
    phase->callback([&] { run_phase(c_phase, degree, grid_phase); });
    series->callback([&] { run_series(c_series, kmax_series, function_series, lambda, max_nodes); });
    check->callback([&] { run_check(c_check, kmax_check); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
