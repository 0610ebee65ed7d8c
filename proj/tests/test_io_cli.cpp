#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldpower/cli.hpp"
#include "ldpower/empirical.hpp"
#include "ldpower/error.hpp"
#include "ldpower/estimation.hpp"
#include "ldpower/io.hpp"
#include "ldpower/synth.hpp"
#include "ldpower/table.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ldpower;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("ldpower_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_fixture(const fs::path& dir) {
    write(dir / "users.csv", "user_id\na\nb\nc\nd\n");
    write(dir / "areas.csv", "area_id,name\nX,\"Area, X\"\n");
    write(dir / "issues.csv", "issue_id,area_id,quorum_num,quorum_den\nI1,X,1,2\nI2,X,2,3\n");
    write(dir / "initiatives.csv", "initiative_id,issue_id,author_id\nn1,I1,a\nn2,I2,\n");
    write(dir / "ballots.csv",
          "initiative_id,voter_id,decision,ts\n"
          "n1,a,1,2014-02-01T10:00:00Z\nn1,b,0,2014-02-01T11:00:00Z\nn1,c,0,2014-02-01T12:00:00Z\n"
          "n2,a,1,2014-02-03T10:00:00Z\nn2,c,1,2014-02-03T10:30:00Z\n");
    write(dir / "delegations.csv",
          "truster_id,trustee_id,scope,scope_id,valid_from,valid_to\n"
          "d,a,global,,2014-01-01T00:00:00Z,\nb,a,area,X,2014-01-01T00:00:00Z,2014-02-02T00:00:00Z\n");
}

SynthConfig small_config() {
    SynthConfig c;
    c.users = 400;
    c.initiatives = 80;
    c.seed = 11;
    return c;
}

} // namespace

TEST_CASE("load a well-formed fixture") {
    TempDir dir("fixture");
    write_fixture(dir.path);
    const auto d = load_dataset(dir.path);
    CHECK(d.users.size() == 4);
    CHECK(d.areas.front().name == "Area, X");
    CHECK(d.issues[1].quorum == Quorum(2, 3));
    CHECK(d.initiatives[0].author == "a");
    CHECK_FALSE(d.initiatives[1].author.has_value());
    CHECK(d.ballots.size() == 5);
    CHECK(d.ballots[1].yes == false);
    CHECK(d.delegations[1].scope.kind == ScopeKind::area);
    CHECK(d.delegations[1].valid_to.has_value());
    CHECK_FALSE(d.delegations[0].valid_to.has_value());

    const auto data = resolve_dataset(d);
    CHECK(data.find("n1")->vote_of("a").weight == 2); // d only; b voted directly
    CHECK(data.find("n2")->vote_of("a").weight == 2); // d; b's area edge has expired
    CHECK(data.find("n2")->unresolved == 1);           // b
}

TEST_CASE("integrity errors name file and row") {
    TempDir dir("integrity");
    write_fixture(dir.path);
    write(dir.path / "ballots.csv", "initiative_id,voter_id,decision,ts\nn1,a,1,2014-02-01\nn9,b,0,2014-02-01\n");
    try {
        load_dataset(dir.path);
        FAIL("expected a data error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("ballots.csv row 3") != std::string::npos);
        CHECK(std::string(e.what()).find("n9") != std::string::npos);
    }

    write(dir.path / "ballots.csv", "initiative_id,voter_id,decision,ts\nn1,a,1,2014-02-01\nn1,a,0,2014-02-02\n");
    try {
        load_dataset(dir.path);
        FAIL("expected a data error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }

    write(dir.path / "ballots.csv", "initiative_id,voter_id,decision,ts\nn1,a,yes,2014-02-01\n");
    CHECK_THROWS_WITH_AS(load_dataset(dir.path), doctest::Contains("ballots.csv row 2"), DataError);

    write_fixture(dir.path);
    write(dir.path / "issues.csv", "issue_id,area_id,quorum_num,quorum_den\nI1,X,1,2\nI2,X,3,2\n");
    CHECK_THROWS_WITH_AS(load_dataset(dir.path), doctest::Contains("issues.csv row 3"), DataError);

    fs::remove(dir.path / "users.csv");
    CHECK_THROWS_AS(load_dataset(dir.path), DataError);
}

TEST_CASE("csv helpers") {
    CHECK(split_csv_line("a,\"b,c\",\"d\"\"e\",") == std::vector<std::string>{"a", "b,c", "d\"e", ""});
    CHECK(csv_escape("x,y") == "\"x,y\"");
    CHECK(csv_escape("plain") == "plain");
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("synthetic round trip and determinism") {
    const auto cfg = small_config();
    const auto a = generate_synthetic(cfg);
    CHECK(a == generate_synthetic(cfg));
    auto other = cfg;
    other.seed = 12;
    CHECK_FALSE(a == generate_synthetic(other));

    TempDir dir("roundtrip");
    write_dataset(a, dir.path);
    CHECK(load_dataset(dir.path) == a);
    TempDir again("roundtrip2");
    write_dataset(generate_synthetic(cfg), again.path);
    for (const auto* f : {"users.csv", "ballots.csv", "delegations.csv"})
        CHECK(slurp(dir.path / f) == slurp(again.path / f));
}

TEST_CASE("synthetic config validation and zero delegations") {
    auto cfg = small_config();
    cfg.indegree_exponent = 1.0;
    CHECK_THROWS_AS(generate_synthetic(cfg), InvalidInput);
    cfg = small_config();
    cfg.delegation_fraction = 0.0;
    const auto d = generate_synthetic(cfg);
    CHECK(d.delegations.empty());
    CHECK(reversal_analysis(resolve_dataset(d)) == 1.0);
}

TEST_CASE("synthetic approval rates recover the beta parameters") {
    SynthConfig cfg;
    cfg.users = 10'000;
    const auto data = resolve_dataset(generate_synthetic(cfg));
    std::vector<double> rates;
    for (const auto& set : data.ballot_sets) rates.push_back(approval_rate(set));
    const auto fit = fit_beta_mle(rates);
    MESSAGE("alpha " << fit.alpha << " beta " << fit.beta << " from " << fit.samples << " initiatives");
    CHECK(std::abs(fit.alpha / 3.00 - 1) <= 0.10);
    CHECK(std::abs(fit.beta / 1.17 - 1) <= 0.10);
}

TEST_CASE("synthetic curves show less exercised than potential power") {
    auto cfg = small_config();
    cfg.users = 2000;
    cfg.initiatives = 300;
    const auto curves = power_curves(resolve_dataset(generate_synthetic(cfg)));
    REQUIRE(curves.exercised_to_potential);
    CHECK(*curves.exercised_to_potential < 1.0);
}

TEST_CASE("cli usage errors") {
    const auto bad = run({"frobnicate"});
    CHECK(bad.code == exit_usage);
    CHECK(bad.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == exit_usage);
    CHECK(run({"indices", "--weights", "5,4,1", "--format", "xml"}).code == exit_usage);
    CHECK(run({"indices"}).code == exit_usage);
    CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("cli data and resource errors") {
    CHECK(run({"validate", "--data", "/nonexistent/ldpower"}).code == exit_data);
    CHECK(run({"indices", "--weights", "5,0,1"}).code == exit_data);
    CHECK(run({"indices", "--weights", "5,x"}).code == exit_data);
    const auto limited = run({"--cap", "2", "--no-mc-fallback", "indices", "--weights", "5,4,1"});
    CHECK(limited.code == exit_resource);
    CHECK(limited.err.find("cap") != std::string::npos);
    CHECK(run({"--cap", "2", "--mc-runs", "1000", "indices", "--weights", "5,4,1"}).code == exit_ok);
}

TEST_CASE("cli indices on [5,4,1]") {
    const auto r = run({"--format", "json", "indices", "--weights", "5,4,1", "--quorum", "1/2", "--models", "banzhaf,shapley"});
    REQUIRE(r.code == exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 6);
    CHECK(j[0]["model"] == "banzhaf");
    CHECK(j[0]["normalised"].get<double>() == doctest::Approx(0.6));
    CHECK(j[1]["normalised"].get<double>() == doctest::Approx(0.2));
    CHECK(j[2]["value"].get<double>() == doctest::Approx(0.25));
    CHECK(j[3]["value"].get<double>() == doctest::Approx(2.0 / 3));
    CHECK(j[4]["value"].get<double>() == doctest::Approx(1.0 / 6));
    CHECK(j[5]["value"].get<double>() == j[4]["value"].get<double>());
    CHECK(j[3]["estimator"] == "exact");
}

TEST_CASE("cli csv and json carry the same values") {
    const auto csv = run({"indices", "--weights", "3,3,2,1", "--quorum", "2/3"});
    const auto json = run({"--format", "json", "indices", "--weights", "3,3,2,1", "--quorum", "2/3"});
    const auto j = nlohmann::json::parse(json.out);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    const auto header = split_csv_line(line);
    std::size_t row = 0;
    while (std::getline(lines, line)) {
        const auto fields = split_csv_line(line);
        const auto value_col = std::find(header.begin(), header.end(), "value") - header.begin();
        CHECK(std::stod(fields[value_col]) == j[row]["value"].get<double>());
        ++row;
    }
    CHECK(row == j.size());
}

TEST_CASE("cli end to end on synthetic data") {
    TempDir dir("cli");
    const auto data = (dir.path / "data").string();
    const auto synth = run({"--seed", "3", "--out", data, "synth", "--users", "300", "--initiatives", "60"});
    REQUIRE(synth.code == exit_ok);
    CHECK(fs::exists(fs::path(data) / "ballots.csv"));

    const auto eval = run({"--mc-runs", "2000", "evaluate", "--data", data, "--models",
                           "banzhaf,shapley,beta,regression,beta2"});
    REQUIRE(eval.code == exit_ok);
    const auto section = eval.out.substr(0, eval.out.find("\n\n"));
    std::istringstream lines(section);
    std::string line;
    std::vector<std::string> models;
    std::getline(lines, line); // "# evaluation"
    std::getline(lines, line); // header
    while (std::getline(lines, line)) models.push_back(split_csv_line(line).front());
    CHECK(models == std::vector<std::string>{"banzhaf", "shapley", "beta", "regression", "beta2"});

    const std::vector<std::vector<std::string>> commands{
        {"validate", "--data", data},
        {"resolve", "--data", data},
        {"--mc-runs", "2000", "indices", "--data", data},
        {"empirical", "--data", data, "--permutations", "200"},
        {"fit", "beta", "--data", data, "--unit", "initiative"},
        {"fit", "logistic", "--data", data},
        {"fit", "powerlaw", "--data", data, "--quantity", "activity"},
        {"netstats", "--data", data},
        {"--mc-runs", "2000", "evaluate", "--data", data},
    };
    for (const auto& cmd : commands) {
        const auto first = run(cmd);
        INFO(cmd[cmd.size() > 3 && cmd[0] == "--mc-runs" ? 2 : 0]);
        CHECK(first.code == exit_ok);
        CHECK(first.err.empty());
        CHECK_FALSE(first.out.empty());
        CHECK(run(cmd).out == first.out);
    }

    const auto out_dir = (dir.path / "tables").string();
    REQUIRE(run({"--out", out_dir, "--format", "json", "empirical", "--data", data, "--permutations", "100"}).code == exit_ok);
    for (const auto* name : {"power_curve", "learning_curve", "approval_by_weight", "voters", "summary"})
        CHECK(fs::exists(fs::path(out_dir) / (std::string(name) + ".json")));

    const auto progress = run({"--progress", "validate", "--data", data});
    CHECK(progress.err.find("loading") != std::string::npos);
    CHECK(progress.out == run({"validate", "--data", data}).out);
}
