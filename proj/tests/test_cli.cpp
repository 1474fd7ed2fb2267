#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "catch2/catch_amalgamated.hpp"
#include "json.hpp"

#include "fracq/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "fracq_cli_tests" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

CliResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = std::string(FRACQ_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    CliResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::size_t line_count(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("cli selftest passes") {
    const auto dir = fresh_dir("selftest");
    const auto r = run_cli("selftest", dir);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.at("schema") == "fracq/1");
    REQUIRE(j.at("pass") == true);
    for (const auto& check : j.at("checks"))
        REQUIRE(check.at("pass") == true);
}

TEST_CASE("cli help exits zero, bad usage exits one") {
    const auto dir = fresh_dir("usage");
    REQUIRE(run_cli("--help", dir).exit_code == 0);
    REQUIRE(run_cli("", dir).exit_code == 1);
    REQUIRE(run_cli("no-such-command", dir).exit_code == 1);
    REQUIRE(run_cli("synth --bogus 1", dir).exit_code == 1);
}

TEST_CASE("cli weights writes the exact csv") {
    const auto dir = fresh_dir("weights");
    const fs::path csv = dir / "w.csv";
    const auto r = run_cli("weights --d 0.5 --n 4 --out " + csv.string(), dir);
    REQUIRE(r.exit_code == 0);
    REQUIRE(slurp(csv) ==
            "index,weight\n0,1\n1,0.5\n2,0.375\n3,0.3125\n4,0.2734375\n");
    const json j = json::parse(r.out);
    REQUIRE(j.at("config").at("d") == 0.5);
    REQUIRE(j.at("count") == 5);
}

TEST_CASE("cli synth reruns are byte identical") {
    const auto dir = fresh_dir("synth_det");
    const fs::path a = dir / "a.csv";
    const fs::path b = dir / "b.csv";
    REQUIRE(run_cli("synth --kind fgn --hurst 0.3 --n 256 --seed 5 --out " +
                        a.string(),
                    dir)
                .exit_code == 0);
    REQUIRE(run_cli("synth --kind fgn --hurst 0.3 --n 256 --seed 5 --out " +
                        b.string(),
                    dir)
                .exit_code == 0);
    const std::string ca = slurp(a);
    REQUIRE(ca == slurp(b));
    REQUIRE(line_count(ca) == 257);  // header plus one row per sample
}

TEST_CASE("cli synth binary container carries kind and hurst") {
    const auto dir = fresh_dir("synth_bin");
    const fs::path p = dir / "p.fq";
    const auto r = run_cli(
        "synth --kind fbm --hurst 0.8 --n 128 --seed 2 --format binary --out " +
            p.string(),
        dir);
    REQUIRE(r.exit_code == 0);
    const auto c = fracq::read_container(p);
    REQUIRE(c.kind_code == fracq::kKindCodeFbm);
    REQUIRE(c.hurst == 0.8);
    REQUIRE(c.values.size() == 128);
}

TEST_CASE("cli synth rejects inconsistent hurst flags") {
    const auto dir = fresh_dir("synth_bad");
    const fs::path p = dir / "x.csv";
    const auto white = run_cli(
        "synth --kind white --hurst 0.5 --n 16 --out " + p.string(), dir);
    REQUIRE(white.exit_code == 1);
    REQUIRE(white.err.find("hurst") != std::string::npos);
    REQUIRE(run_cli("synth --kind fgn --n 16 --out " + p.string(), dir)
                .exit_code == 1);
}

TEST_CASE("cli quantize analyze pipeline") {
    const auto dir = fresh_dir("pipeline");
    const fs::path p = dir / "p.fq";
    REQUIRE(run_cli("synth --kind fgn --hurst 0.3 --n 20000 --seed 3 "
                    "--format binary --out " +
                        p.string(),
                    dir)
                .exit_code == 0);

    const fs::path e = dir / "e.fq";
    const fs::path sd = dir / "sd.fq";
    const fs::path qrep = dir / "q.json";
    const auto q = run_cli("quantize --in " + p.string() +
                               " --auto-hires 0.0625 --error-out " + e.string() +
                               " --sigma-delta-error-out " + sd.string() +
                               " --format binary --report " + qrep.string(),
                           dir);
    REQUIRE(q.exit_code == 0);
    const json qj = json::parse(slurp(qrep));
    REQUIRE(qj.at("delta").get<double>() > 0.0);
    REQUIRE(qj.at("saturation_count") == 0);
    REQUIRE(qj.at("m").get<long long>() % 2 == 1);
    REQUIRE(qj.at("error_file") == e.string());
    REQUIRE(fracq::read_container(e).kind_code == fracq::kKindCodeErrorRaw);
    REQUIRE(fracq::read_container(sd).kind_code ==
            fracq::kKindCodeErrorSigmaDelta);

    const fs::path rep = dir / "r.json";
    const fs::path psd = dir / "psd.csv";
    const std::string analyze_args = "analyze --error " + sd.string() +
                                     " --signal " + p.string() +
                                     " --max-lag 50 --psd " + psd.string() +
                                     " --out " + rep.string();
    REQUIRE(run_cli(analyze_args, dir).exit_code == 0);
    const std::string first_report = slurp(rep);
    const json aj = json::parse(first_report);
    REQUIRE(aj.at("n_samples") == 20000);
    REQUIRE(aj.at("ks_pass") == true);
    REQUIRE(aj.at("autocorrelation").size() == 51);
    REQUIRE(std::fabs(aj.at("cross_corr_with_signal").get<double>()) < 0.05);
    REQUIRE(aj.at("psd").at("slope_loglog").is_number());
    REQUIRE(slurp(psd).rfind("frequency,power\n", 0) == 0);

    REQUIRE(run_cli(analyze_args, dir).exit_code == 0);
    REQUIRE(slurp(rep) == first_report);
}

TEST_CASE("cli coarse quantizer zeroes the path without saturating") {
    const auto dir = fresh_dir("coarse");
    const fs::path p = dir / "p.csv";
    REQUIRE(run_cli("synth --kind fgn --hurst 0.4 --n 1000 --seed 9 --out " +
                        p.string(),
                    dir)
                .exit_code == 0);
    const fs::path qcsv = dir / "q.csv";
    const fs::path rep = dir / "r.json";
    const auto r = run_cli("quantize --in " + p.string() +
                               " --levels 3 --half-range 1e9 --out " +
                               qcsv.string() + " --report " + rep.string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    REQUIRE(json::parse(slurp(rep)).at("saturation_count") == 0);
    for (double v : fracq::read_csv(qcsv).columns.back())
        REQUIRE(v == 0.0);
}

TEST_CASE("cli exit codes distinguish io and domain failures") {
    const auto dir = fresh_dir("exit_codes");
    const auto io = run_cli("quantize --in " + (dir / "nope.csv").string() +
                                " --levels 3 --half-range 1",
                            dir);
    REQUIRE(io.exit_code == 2);
    REQUIRE(io.err.find("cannot open") != std::string::npos);

    const fs::path e = dir / "e.csv";
    REQUIRE(run_cli("synth --kind white --n 500 --seed 1 --out " + e.string(),
                    dir)
                .exit_code == 0);
    const auto dom = run_cli("analyze --error " + e.string() + " --max-lag 200",
                             dir);
    REQUIRE(dom.exit_code == 1);
    REQUIRE(dom.err.find("max_lag") != std::string::npos);
}

TEST_CASE("cli cf emits profiles and a dichotomy report") {
    const auto dir = fresh_dir("cf");
    const fs::path prof = dir / "prof.csv";
    const fs::path rep = dir / "cf.json";
    const auto r = run_cli("cf --hurst 0.3 --l-max 2 --n 400 --out " +
                               prof.string() + " --report " + rep.string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(slurp(rep));
    REQUIRE(j.at("entries").size() == 3);
    REQUIRE(j.at("entries")[0].at("l") == 0);
    for (const auto& ent : j.at("entries"))
        REQUIRE(ent.at("pass") == true);
    REQUIRE(j.at("pass") == true);
    const std::string csv = slurp(prof);
    REQUIRE(csv.rfind("l,n,log_magnitude\n", 0) == 0);
    REQUIRE(line_count(csv) == 1 + 3 * 401);
}

TEST_CASE("cli eigen reports slope and crossover fields") {
    const auto dir = fresh_dir("eigen");
    const fs::path p = dir / "p.fq";
    REQUIRE(run_cli("synth --kind fbm --hurst 0.7 --n 2048 --seed 4 "
                    "--format binary --out " +
                        p.string(),
                    dir)
                .exit_code == 0);
    const fs::path spec = dir / "spec.csv";
    const fs::path rep = dir / "eig.json";
    const auto r = run_cli("eigen --in " + p.string() + " --window 16 --out " +
                               spec.string() + " --report " + rep.string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(slurp(rep));
    REQUIRE(j.at("signal_kind") == "fbm");
    REQUIRE(j.at("windows") == 128);
    REQUIRE(j.at("config").at("fit_min") == 2);
    REQUIRE(j.at("config").at("fit_max") == 8);
    REQUIRE(j.at("slope").get<double>() < 0.0);
    REQUIRE(j.at("breakpoint").is_number());
    REQUIRE(line_count(slurp(spec)) == 17);
}

TEST_CASE("cli figure one reproduction is deterministic") {
    const auto dir = fresh_dir("fig1");
    const fs::path d1 = dir / "run1";
    const fs::path d2 = dir / "run2";
    REQUIRE(run_cli("reproduce-fig1 --seed 7 --out-dir " + d1.string(), dir)
                .exit_code == 0);
    REQUIRE(run_cli("reproduce-fig1 --seed 7 --out-dir " + d2.string(), dir)
                .exit_code == 0);
    REQUIRE(slurp(d1 / "psd.csv") == slurp(d2 / "psd.csv"));
    const json j = json::parse(slurp(d1 / "report.json"));
    REQUIRE(j.at("config").at("n") == 16384);
    REQUIRE(j.at("config").at("delta") == 1.0);
    REQUIRE(j.at("slope_loglog").is_number());
    REQUIRE(j.at("pass").is_boolean());
    REQUIRE(run_cli("reproduce-fig1 --n 100 --out-dir " + d1.string(), dir)
                .exit_code == 1);
}

TEST_CASE("cli figure two reproduction emits three spectra") {
    const auto dir = fresh_dir("fig2");
    const fs::path d = dir / "out";
    const auto r = run_cli(
        "reproduce-fig2 --seed 3 --n 16384 --out-dir " + d.string(), dir);
    REQUIRE(r.exit_code == 0);
    for (const char* name :
         {"path_spectrum.csv", "quantized_spectrum.csv", "error_spectrum.csv"})
        REQUIRE(line_count(slurp(d / name)) == 65);
    const json j = json::parse(slurp(d / "report.json"));
    REQUIRE(j.at("path_slope").get<double>() < -1.0);
    REQUIRE(j.at("error_slope").is_number());
    REQUIRE(j.at("crossover").at("breakpoint").get<int>() >= 4);
    REQUIRE(j.at("crossover").at("sse_ratio").is_number());
}
