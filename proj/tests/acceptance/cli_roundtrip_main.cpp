// Exercises every CLI subcommand once: each emitted CSV must re-parse
// through the tool's own reader with every numeric cell surviving a
// parse/format round trip, every manifest must verify, and the documented
// exit codes must hold. Expects the CLI path as argv[1].

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "aggregatio/io/csv.hpp"
#include "aggregatio/io/manifest.hpp"

namespace fs = std::filesystem;
using namespace aggregatio;

namespace {

std::string g_cli;
int g_failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        std::cout << "FAIL: " << what << "\n";
        ++g_failures;
    }
}

int run(const std::string& args) {
    return std::system((g_cli + " " + args + " > /dev/null 2>&1").c_str());
}

bool cell_is_numeric(const std::string& cell) {
    if (cell.empty()) return false;
    char* end = nullptr;
    std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

void verify_outputs(const fs::path& dir, const std::string& label) {
    check(io::verify_manifest(dir / "manifest.json").empty(),
          label + ": manifest digest mismatch");
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".csv") continue;
        const auto table = io::read_csv(entry.path());
        check(!table.columns.empty(), label + ": empty header");
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                const std::string& cell = table.rows[r][c];
                if (!cell_is_numeric(cell)) continue;
                // Numeric cells round-trip exactly: value -> text -> value
                // -> text is a fixed point at 17 significant digits.
                const double value = table.as_double(r, c);
                if (cell.find('.') != std::string::npos ||
                    cell.find('e') != std::string::npos) {
                    check(io::CsvWriter::format_double(value) == cell,
                          label + ": lossy double cell '" + cell + "'");
                }
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_roundtrip <path-to-cli>\n";
        return 2;
    }
    g_cli = argv[1];
    const fs::path base = fs::temp_directory_path() / "aggregatio_cli_roundtrip";
    fs::remove_all(base);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"eq", "cjt-equilibrium --qa 0.8 --qb 0.6 --w 0 --n 2 --format csv"},
        {"welfare", "cjt-welfare --qa 0.8 --qb 0.6 --w-grid 0:0.4:0.1 --n-grid 1:6:1"},
        {"rates", "cjt-rates --qa 0.8 --qb 0.6 --w 0 --n-grid 50:200:50"},
        {"thr", "slm-threshold --p 0.75 --w 0.4 --format csv"},
        {"curve", "slm-welfare-curve --p 0.75 --w-grid 0:0.6:0.05"},
        {"finite", "slm-welfare-finite --p 0.75 --w 0.2 --n-grid 4:64:10"},
        {"opt", "slm-optimal-w --p 0.75 --n-grid 4:32:4"},
        {"stop", "slm-stopping-time --p 0.75 --w 0.4 --n-max 30"},
        {"mc", "mc --model cjt --qa 0.7 --qb 0.6 --w 0.1 --n 3 --samples 2000 --seed 9 --shards 3"},
    };
    for (const auto& [name, args] : commands) {
        const fs::path dir = base / name;
        const int code = run(args + " --outdir " + dir.string());
        check(code == 0, name + ": exit code " + std::to_string(code));
        if (code == 0) verify_outputs(dir, name);
    }

    // JSON format variant still produces a verifiable manifest.
    {
        const fs::path dir = base / "eq_json";
        check(run("cjt-equilibrium --qa 0.8 --qb 0.6 --w 0.3 --n 4 --format json "
                  "--outdir " + dir.string()) == 0,
              "json format run failed");
        check(io::verify_manifest(dir / "manifest.json").empty(),
              "json format manifest mismatch");
    }

    // Documented exit codes: validation errors are 1.
    const int unknown = run("no-such-command");
    check(WIFEXITED(unknown) && WEXITSTATUS(unknown) == 1,
          "unknown subcommand must exit 1");
    const int bad_param =
        run("cjt-equilibrium --qa 0.4 --qb 0.3 --w 0 --n 2 --outdir " +
            (base / "bad").string());
    check(WIFEXITED(bad_param) && WEXITSTATUS(bad_param) == 1,
          "out-of-range parameter must exit 1");
    const int bad_grid =
        run("slm-welfare-curve --p 0.75 --w-grid nonsense --outdir " +
            (base / "bad2").string());
    check(WIFEXITED(bad_grid) && WEXITSTATUS(bad_grid) == 1,
          "bad grid spec must exit 1");

    // Invalid thread cap is a validation error.
    setenv("AGGREGATIO_THREADS", "zero", 1);
    const int bad_threads =
        run("mc --model slm --p 0.75 --w 0 --n 10 --samples 100 --seed 1 --outdir " +
            (base / "bad3").string());
    unsetenv("AGGREGATIO_THREADS");
    check(WIFEXITED(bad_threads) && WEXITSTATUS(bad_threads) == 1,
          "invalid AGGREGATIO_THREADS must exit 1");

    fs::remove_all(base);
    if (g_failures == 0) {
        std::cout << "cli round trip: all checks passed\n";
        return 0;
    }
    std::cout << g_failures << " checks failed\n";
    return 1;
}
