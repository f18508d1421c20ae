#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fw/faber_walsh.hpp"
#include "fw/numio.hpp"
#include "fw/phase_portrait.hpp"

namespace fs = std::filesystem;
using fw::cxd;

namespace {

struct Workspace {
    fs::path dir;
    std::string sym;   // C=0.25, D=1
    std::string sym2;  // C=0.5, D=1

    Workspace() {
        dir = fs::temp_directory_path() /
              ("fw_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        sym = (dir / "sym.json").string();
        sym2 = (dir / "sym2.json").string();
        std::ofstream(sym) << "{\"type\": \"symmetric_intervals\", \"C\": 0.25, \"D\": 1.0}\n";
        std::ofstream(sym2) << "{\"type\": \"symmetric_intervals\", \"C\": 0.5, \"D\": 1.0}\n";
    }
};

const Workspace& ws() {
    static Workspace w;
    return w;
}

int run(const std::string& args) {
    const std::string cmd = std::string(FW_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

int run_env(const std::string& env, const std::string& args) {
    const std::string cmd =
        env + " " + std::string(FW_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_CASE("poly output is exact and deterministic") {
    const auto a = ws().dir / "poly_a.csv";
    const auto b = ws().dir / "poly_b.csv";
    const std::string base = "poly --set " + ws().sym + " --degree 6 --out ";
    REQUIRE(run(base + a.string()) == 0);
    REQUIRE(run(base + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));

    // Every CSV value round-trips to the in-process coefficient bit for bit.
    const fw::ConformalPair pair = fw::symmetric_intervals_pair(0.25, 1.0);
    const auto fam = fw::recursion_family(
        pair.psi_laurent, fw::build_focus_sequence(pair.domain, 6), 6);
    const auto rows = csv_rows(slurp(a));
    REQUIRE(!rows.empty());
    CHECK(rows[0] == std::vector<std::string>{"k", "power", "re", "im"});
    size_t seen = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 4);
        const int k = std::stoi(rows[i][0]);
        const int p = std::stoi(rows[i][1]);
        const cxd c = fam[k].coeff(p);
        CHECK(fw::parse_double(rows[i][2]) == c.real());
        CHECK(fw::parse_double(rows[i][3]) == c.imag());
        // Negative zero is folded away in the output.
        CHECK(rows[i][2] != "-0");
        CHECK(rows[i][3] != "-0");
        ++seen;
    }
    CHECK(seen == 2 + 3 + 4 + 5 + 6 + 7 + 1);  // sum of (k+1) for k = 0..6

    const auto j = ws().dir / "poly.json";
    REQUIRE(run("poly --set " + ws().sym + " --degree 3 --json --out " + j.string()) == 0);
    const auto parsed = nlohmann::json::parse(slurp(j));
    CHECK(parsed.at("capacity").get<double>() == pair.domain.capacity);
    CHECK(parsed.at("polynomials").size() == 4);
    CHECK(parsed.at("polynomials")[2][0].at("re").get<double>() == -0.53125);
    CHECK(parsed.at("sequence")[0].get<int>() == 0);
}

TEST_CASE("poly methods agree through the command line") {
    const auto rec = ws().dir / "m_rec.csv";
    const auto lau = ws().dir / "m_lau.csv";
    REQUIRE(run("poly --set " + ws().sym + " --degree 5 --method recursion --out " +
                rec.string()) == 0);
    REQUIRE(run("poly --set " + ws().sym + " --degree 5 --method laurent --out " +
                lau.string()) == 0);
    const auto r1 = csv_rows(slurp(rec));
    const auto r2 = csv_rows(slurp(lau));
    REQUIRE(r1.size() == r2.size());
    for (size_t i = 1; i < r1.size(); ++i) {
        CHECK(std::abs(fw::parse_double(r1[i][2]) - fw::parse_double(r2[i][2])) < 1e-9);
        CHECK(std::abs(fw::parse_double(r1[i][3]) - fw::parse_double(r2[i][3])) < 1e-9);
    }
}

TEST_CASE("norms table round-trips the library values") {
    const auto n = ws().dir / "norms.csv";
    REQUIRE(run("norms --set " + ws().sym2 + " --kmax 8 --z0 2,0 --out " + n.string()) ==
            0);
    const fw::ConformalPair pair = fw::symmetric_intervals_pair(0.5, 1.0);
    const auto fam = fw::recursion_family(
        pair.psi_laurent, fw::build_focus_sequence(pair.domain, 8), 8);
    const auto want = fw::norm_decay_table(fam, pair, cxd(2.0, 0.0), 8);
    const auto rows = csv_rows(slurp(n));
    REQUIRE(rows.size() == want.size() + 1);
    CHECK(rows[0] == std::vector<std::string>{"k", "norm", "normalized", "acf_power"});
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& w = want[i - 1];
        CHECK(std::stoi(rows[i][0]) == w.k);
        CHECK(fw::parse_double(rows[i][1]) == w.norm);
        CHECK(fw::parse_double(rows[i][2]) == w.normalized);
        CHECK(fw::parse_double(rows[i][3]) == w.acf_power);
    }
    // The degree-4 norm is the exact equioscillation value 2 mu^4.
    CHECK(fw::parse_double(rows[5][1]) == doctest::Approx(0.0703125).epsilon(1e-8));
}

TEST_CASE("acf single point, grid, and profile") {
    const auto single = ws().dir / "acf_one.txt";
    REQUIRE(run("acf --set " + ws().sym2 + " --z0 0,0 --out " + single.string()) == 0);
    std::string text = slurp(single);
    CHECK(fw::parse_double(text.substr(0, text.size() - 1)) ==
          fw::acf(fw::symmetric_intervals_pair(0.5, 1.0), cxd(0.0)));

    const auto grid = ws().dir / "acf_grid.csv";
    const auto grid2 = ws().dir / "acf_grid2.csv";
    const std::string gr = "acf --set " + ws().sym2 + " --grid -2,2,-2,2,4,4 --out ";
    REQUIRE(run(gr + grid.string()) == 0);
    REQUIRE(run(gr + grid2.string()) == 0);
    CHECK(slurp(grid) == slurp(grid2));
    const auto rows = csv_rows(slurp(grid));
    REQUIRE(rows.size() == 17);
    // Pixel centers: first row is the top-left cell.
    CHECK(fw::parse_double(rows[1][0]) == -1.5);
    CHECK(fw::parse_double(rows[1][1]) == 1.5);
    for (size_t i = 1; i < rows.size(); ++i) {
        const double v = fw::parse_double(rows[i][2]);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }

    const auto prof = ws().dir / "acf_prof.csv";
    REQUIRE(run("acf --set " + ws().sym2 + " --profile 1.5,0,3,0,5 --out " +
                prof.string()) == 0);
    const auto prows = csv_rows(slurp(prof));
    REQUIRE(prows.size() == 6);
    CHECK(fw::parse_double(prows[1][0]) == 1.5);
    CHECK(fw::parse_double(prows[5][0]) == 3.0);
    // The factor decays monotonically along the outward ray.
    for (size_t i = 2; i < prows.size(); ++i)
        CHECK(fw::parse_double(prows[i][2]) < fw::parse_double(prows[i - 1][2]));
}

TEST_CASE("phase portrait bytes are reproducible and thread-invariant") {
    const auto p1 = ws().dir / "phase1.ppm";
    const auto p2 = ws().dir / "phase2.ppm";
    const auto p3 = ws().dir / "phase3.ppm";
    const std::string base =
        "phase --set " + ws().sym2 + " --degree 5 --grid -2,2,-1.5,1.5,48,32 --out ";
    REQUIRE(run(base + p1.string()) == 0);
    REQUIRE(run_env("FW_THREADS=1", base + p2.string()) == 0);
    REQUIRE(run_env("FW_THREADS=3", base + p3.string()) == 0);
    const std::string img = slurp(p1);
    CHECK(img == slurp(p2));
    CHECK(img == slurp(p3));

    const std::string header = "P6\n48 32\n255\n";
    REQUIRE(img.size() == header.size() + size_t(48) * 32 * 3);
    CHECK(img.substr(0, header.size()) == header);

    // The kernel dispatch must not change a single byte either.
    const auto p4 = ws().dir / "phase4.ppm";
    REQUIRE(run_env("FW_ISA=scalar", base + p4.string()) == 0);
    CHECK(img == slurp(p4));

    // In-process render matches the file written by the tool.
    const fw::ConformalPair pair = fw::symmetric_intervals_pair(0.5, 1.0);
    const auto fam = fw::recursion_family(
        pair.psi_laurent, fw::build_focus_sequence(pair.domain, 5), 5);
    fw::GridSpec g;
    g.x0 = -2.0;
    g.x1 = 2.0;
    g.y0 = -1.5;
    g.y1 = 1.5;
    g.nx = 48;
    g.ny = 32;
    const auto direct = fw::phase_portrait(fam[5], g);
    REQUIRE(direct.rgb.size() == img.size() - header.size());
    CHECK(std::equal(direct.rgb.begin(), direct.rgb.end(),
                     reinterpret_cast<const std::uint8_t*>(img.data() + header.size())));
}

TEST_CASE("series command emits the expansion coefficients") {
    const auto s = ws().dir / "series.csv";
    REQUIRE(run("series --set " + ws().sym2 + " --kmax 6 --function exp --out " +
                s.string()) == 0);
    const auto rows = csv_rows(slurp(s));
    REQUIRE(rows.size() == 8);
    CHECK(fw::parse_double(rows[1][1]) == doctest::Approx(2.167451763208704).epsilon(1e-11));
    CHECK(std::abs(fw::parse_double(rows[1][2])) < 1e-11);

    REQUIRE(run("series --set " + ws().sym2 +
                " --kmax 4 --function rational:3,0 --lambda 1.5 --out " +
                (ws().dir / "series_rat.csv").string()) == 0);

    REQUIRE(run("series --set " + ws().sym2 + " --kmax 4 --function poly:1,0,2 --out " +
                (ws().dir / "series_poly.csv").string()) == 0);
    const auto prows = csv_rows(slurp(ws().dir / "series_poly.csv"));
    // 1 + 2 z^2 reproduced: a_2 = 2.
    CHECK(fw::parse_double(prows[3][1]) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("check battery passes on a healthy set") {
    const auto c = ws().dir / "check.txt";
    REQUIRE(run("check --set " + ws().sym + " --out " + c.string()) == 0);
    const std::string text = slurp(c);
    size_t passes = 0, pos = 0;
    while ((pos = text.find("[PASS]", pos)) != std::string::npos) {
        ++passes;
        pos += 6;
    }
    CHECK(passes == 7);
    CHECK(text.find("[FAIL]") == std::string::npos);
}

TEST_CASE("invalid invocations exit with code 2") {
    CHECK(run("poly --degree 4") == 2);                       // neither --set nor --map
    CHECK(run("poly --set /nonexistent.json --degree 4") == 2);
    CHECK(run("poly --set " + ws().sym + " --degree 65") == 2);
    CHECK(run("poly --set " + ws().sym + " --degree 4 --method simd") == 2);
    CHECK(run("poly --set " + ws().sym) == 2);                // missing required --degree
    CHECK(run("norms --set " + ws().sym + " --kmax 4 --z0 2,0 --map x.json") == 2);
    CHECK(run("acf --set " + ws().sym) == 2);                 // no selector
    CHECK(run("acf --set " + ws().sym + " --grid -2,2,-2,2,5000,5000") == 2);
    CHECK(run("phase --set " + ws().sym + " --degree 4 --grid -2,2,-2,2,32,32") == 2);
    CHECK(run("series --set " + ws().sym + " --kmax 4 --function exp --nodes 8") == 2);
    CHECK(run("series --set " + ws().sym + " --kmax 4 --function tanh") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("") == 2);

    const auto bad = ws().dir / "bad.json";
    std::ofstream(bad) << "{\"type\": \"symmetric_intervals\", \"C\": 1.0, \"D\": 0.25}";
    CHECK(run("poly --set " + bad.string() + " --degree 4") == 2);
    const auto garbage = ws().dir / "garbage.json";
    std::ofstream(garbage) << "this is not json";
    CHECK(run("poly --set " + garbage.string() + " --degree 4") == 2);

    const std::string phase_cmd = "phase --set " + ws().sym +
                                  " --degree 4 --grid -2,2,-2,2,16,16 --out " +
                                  (ws().dir / "threads.ppm").string();
    CHECK(run_env("FW_THREADS=0", phase_cmd) == 2);
    CHECK(run_env("FW_THREADS=notanumber", phase_cmd) == 2);
}

TEST_CASE("numerical breakdown exits with code 3") {
    // For C = 1/2, D = 1 the critical level of |U| sits exactly at
    // sigma = s / mu = sqrt(3); the level curve degenerates there and the
    // contour builder reports a hard error.
    std::ostringstream cmd;
    cmd << "series --set " << ws().sym2 << " --kmax 4 --function exp --lambda "
        << fw::format_double(std::sqrt(3.0)) << " --out "
        << (ws().dir / "series_fail.csv").string();
    CHECK(run(cmd.str()) == 3);
}
