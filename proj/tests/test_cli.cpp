#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cfcolor/cli.hpp"

using cfcolor::run_cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) v.push_back(line);
    return v;
}

const std::vector<std::string> kSilver{"--P", "-1", "--D", "2", "--Q", "1"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

}  // namespace

TEST_CASE("cf-expand") {
    auto r = run(with({"cf-expand"}, kSilver));
    CHECK(r.code == 0);
    CHECK(r.out.find("period: [2]") != std::string::npos);

    auto j = run(with({"cf-expand", "--format", "json"}, {"--P", "-1", "--D", "3", "--Q", "2"}));
    CHECK(j.code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["period"] == nlohmann::json::array({"2", "1"}));
    CHECK(parsed["preperiod"].empty());
}

TEST_CASE("malformed input exits with 1") {
    auto neg = run({"cf-expand", "--P", "0", "--D", "-2", "--Q", "1"});
    CHECK(neg.code == 1);
    CHECK_FALSE(neg.err.empty());
    CHECK(neg.out.empty());
    CHECK(run({"cf-expand", "--P", "0", "--D", "2", "--Q", "0"}).code == 1);
    CHECK(run({"cf-expand", "--P", "x", "--D", "2"}).code == 1);
    // rational and out-of-range inputs
    CHECK(run({"cf-expand", "--P", "1", "--D", "4", "--Q", "5"}).code == 1);
    CHECK(run({"cf-expand", "--P", "0", "--D", "2", "--Q", "1"}).code == 1);
    CHECK(run({"no-such-command"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run(with({"cf-expand", "--format", "xml"}, kSilver)).code == 1);
    CHECK(run(with({"witness-sweep", "--p", "4"}, kSilver)).code == 1);
    CHECK(run({"lacunary-params", "--lambda", "1"}).code == 1);
    CHECK(run({"cayley-chi", "--gens", "1,0"}).code == 1);
    CHECK(run({"cayley-color", "--gens", "1,2", "--P", "1", "--D", "0", "--Q", "5", "--N", "5"}).code == 1);
    CHECK(run({"cayley-chi", "--gens", "1,4", "--window", "60", "--budget", "1"}).code == 1);
}

TEST_CASE("help exits with 0") {
    auto h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("witness-sweep") != std::string::npos);
}

TEST_CASE("convergents") {
    auto r = run(with({"convergents", "--kmax", "3"}, kSilver));
    CHECK(r.code == 0);
    CHECK(r.out == "1 1 2\n2 2 5\n3 5 12\n");
    auto c = run(with({"convergents", "--kmax", "2", "--format", "csv"}, kSilver));
    CHECK(c.out == "k,p,q\n1,1,2\n2,2,5\n");
}

TEST_CASE("lacunary commands") {
    auto p = run({"lacunary-params", "--lambda", "3/2"});
    CHECK(p.code == 0);
    CHECK(p.out == "K=4 delta=128/50625 N=256290\n");

    auto c = run({"lacunary-construct", "--lambda", "4", "--power-base", "4", "--count", "6", "--stages", "3",
                  "--format", "json"});
    CHECK(c.code == 0);
    auto ls = lines(c.out);
    REQUIRE(ls.size() == 5);
    auto result = nlohmann::json::parse(ls.back())["result"];
    CHECK(result["covered"] == 4);
    CHECK(result["N"] == "161");

    auto t = run({"lacunary-construct", "--lambda", "2", "--terms", "1,10,100,1000", "--stages", "2"});
    CHECK(t.code == 0);
    CHECK(t.out.find("covered k <= 5") != std::string::npos);
    CHECK(run({"lacunary-construct", "--lambda", "2", "--terms", "1,2", "--stages", "3"}).code == 1);
}

TEST_CASE("cayley commands") {
    auto chi = run({"cayley-chi", "--gens", "1,2", "--window", "12"});
    CHECK(chi.code == 0);
    CHECK(chi.out == "3\n");

    auto j = run({"cayley-chi", "--gens", "1,2,3,4,5", "--window", "5", "--format", "json"});
    CHECK(nlohmann::json::parse(j.out)["chi"] == 6);

    auto col = run({"cayley-color", "--gens", "1,2", "--P", "7", "--D", "0", "--Q", "20", "--N", "4", "--window",
                    "10"});
    CHECK(col.code == 0);
    auto ls = lines(col.out);
    REQUIRE(ls.size() == 11);
    CHECK(ls[0] == "0 1");
    CHECK(ls[1] == "1 2");

    auto e = run({"cayley-color", "--gens", "1", "--P", "1", "--D", "0", "--Q", "2", "--N", "3", "--window", "2",
                  "--first", "5", "--edges"});
    CHECK(e.out == "5 6\n6 7\n");

    auto d = run(with({"dirichlet", "--M", "10"}, kSilver));
    CHECK(d.code == 0);
    CHECK(d.out.rfind("m=5 ", 0) == 0);
}

TEST_CASE("padic-cover") {
    auto r = run({"padic-cover", "--p", "3", "--N", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "# p=3 N=2 k=1 count=4\n1 1\n1 2\n1 3\n3 1\n");
    auto chk = run({"padic-cover", "--p", "5", "--N", "100", "--check-points", "2000", "--format", "json"});
    CHECK(chk.code == 0);
    auto j = nlohmann::json::parse(chk.out);
    CHECK(j["k"] == 3);
    CHECK(j["count"] == 150);
    CHECK(j["checked"] == 2000);
}

TEST_CASE("witness-sweep") {
    auto r = run(with({"witness-sweep", "--p", "2", "--Nmax", "1024", "--format", "csv"}, kSilver));
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 11);
    CHECK(ls[0] == "N,nN,product_lo,product_hi,productLog_lo,productLog_hi");
    CHECK(ls[4].rfind("16,12,", 0) == 0);
    for (std::size_t k = 1; k < ls.size(); ++k) {
        auto last = ls[k].substr(ls[k].rfind(',') + 1);
        CHECK(std::stod(last) <= 28.66);
    }

    auto j = run(with({"witness-sweep", "--p", "3", "--Nmax", "64", "--format", "json"}, kSilver));
    auto jl = lines(j.out);
    REQUIRE(jl.size() == 7);
    auto rec = nlohmann::json::parse(jl[0]);
    for (const char* key : {"N", "i", "nN", "padicNum", "padicDen", "productLo", "productHi", "productLogLo",
                            "productLogHi"}) {
        CHECK(rec.contains(key));
    }
    CHECK(nlohmann::json::parse(jl.back())["summary"]["holds"] == true);
}

TEST_CASE("brute-inf") {
    auto r = run(with({"brute-inf", "--p", "2", "--nmax", "12", "--format", "json"}, kSilver));
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["n"] == "12");
    auto w = run(with({"brute-inf", "--p", "2", "--nmax", "500", "--weighted"}, kSilver));
    CHECK(w.code == 0);
}

TEST_CASE("output is deterministic and independent of the thread count") {
    auto args = with({"witness-sweep", "--p", "2", "--Nmax", "512", "--format", "json"}, kSilver);
    auto bf = with({"brute-inf", "--p", "3", "--nmax", "4000", "--weighted", "--format", "csv"}, kSilver);
    unsetenv("CFCOLOR_THREADS");
    auto a = run(args), b = run(args), c = run(bf);
    setenv("CFCOLOR_THREADS", "4", 1);
    auto d = run(args), e = run(bf);
    unsetenv("CFCOLOR_THREADS");
    CHECK(a.out == b.out);
    CHECK(a.out == d.out);
    CHECK(c.out == e.out);
}

TEST_CASE("--output writes a file") {
    std::string path = "cli_output_test.txt";
    std::remove(path.c_str());
    auto r = run({"cayley-chi", "--gens", "1,2", "--window", "12", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "3\n");
    std::remove(path.c_str());
    CHECK(run({"cayley-chi", "--gens", "1,2", "--output", "/nonexistent-dir/x.txt"}).code == 1);
}
