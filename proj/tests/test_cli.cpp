#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "redlab/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "redlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = redlab::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::string line_starting(const std::string& csv, const std::string& prefix) {
  std::istringstream s(csv);
  std::string line;
  while (std::getline(s, line)) {
    if (line.rfind(prefix, 0) == 0) return line;
  }
  return {};
}

double value_after(const std::string& text, const std::string& key) {
  const auto at = text.find(key);
  REQUIRE(at != std::string::npos);
  return std::stod(text.substr(at + key.size()));
}

}  // namespace

TEST_CASE("bounds") {
  const auto r = invoke({"bounds", "0.3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "r_max=0.418709"));
  CHECK(has(r.out, "r_min=0.009235 (m=2)"));
  CHECK(has(r.out, "r_ub=0.500000"));
  CHECK(has(r.out, "f_p1="));
  CHECK(has(r.out, "r_min_pn="));
  CHECK(!has(r.out, "r_min_d"));

  const auto half = invoke({"bounds", "0.5"});
  CHECK(has(half.out, "r_max=0.500000"));
  CHECK(has(half.out, "r_min=0.000000"));

  const auto d = invoke({"bounds", "0.2", "-D", "3"});
  CHECK(has(d.out, "r_min_d="));

  const auto bad = invoke({"bounds", "1.5"});
  CHECK(bad.code == 2);
  CHECK(has(bad.err, "p must be in (0,1)"));
  CHECK(invoke({"bounds"}).code == 2);
  CHECK(invoke({"bounds", "abc"}).code == 2);
  CHECK(invoke({"bounds", "0.3", "-D", "1"}).code == 2);
}

TEST_CASE("bounds json") {
  const auto r = invoke({"bounds", "0.3", "--json", "-D", "3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["p"] == 0.3);
  CHECK(j["D"] == 3);
  const auto& b = j["bounds"];
  REQUIRE(b.size() == 6);
  CHECK(b[0]["bound_id"] == "R_MAX");
  CHECK(b[3]["bound_id"] == "R_MIN");
  CHECK(b[3]["witness_m"] == 2);
  CHECK(b[0]["witness_m"].is_null());
  CHECK(std::abs(b[3]["value"].get<double>() - 0.009235350264) < 1e-11);
  CHECK(b[5]["bound_id"] == "R_MIN_D");

  const auto high = nlohmann::json::parse(invoke({"bounds", "0.7", "--json"}).out);
  CHECK(high["bounds"].size() == 4);  // no least-likely bound above 1/2
}

TEST_CASE("huffman") {
  CHECK(has(invoke({"huffman", "-v", "0.5,0.25,0.25"}).out, "R=0.000000000"));
  const auto r = invoke({"huffman", "-v", "0.4,0.3,0.3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "R=0.029049406"));
  CHECK(has(r.out, "lengths=1,2,2"));
  CHECK(has(invoke({"huffman", "-v", "0.2,0.2,0.2,0.2,0.2", "-D", "3"}).out, "L=1.600000000"));

  const auto in = invoke({"huffman", "-"}, "# comment\n0.5 0.25\n0.25\n");
  CHECK(in.code == 0);
  CHECK(has(in.out, "R=0.000000000"));

  const auto tree = invoke({"huffman", "-v", "0.5,0.25,0.25", "--tree"});
  CHECK(has(tree.out, "0.25"));
  CHECK(tree.out.size() > in.out.size());

  const auto parse = invoke({"huffman", "-"}, "0.5\n0.2x5\n");
  CHECK(parse.code == 2);
  CHECK(has(parse.err, "line 2"));

  CHECK(invoke({"huffman", "-v", "0.5,0.4"}).code == 2);
  CHECK(invoke({"huffman", "/nonexistent/dist.txt"}).code == 2);
}

TEST_CASE("huffman reads a file") {
  const auto path = std::filesystem::temp_directory_path() / "redlab_cli_dist.txt";
  std::ofstream(path) << "0.4, 0.3\n0.3\n";
  const auto r = invoke({"huffman", path.string()});
  std::filesystem::remove(path);
  CHECK(r.code == 0);
  CHECK(has(r.out, "R=0.029049406"));
}

TEST_CASE("extremal and round trip") {
  const auto b = invoke({"extremal", "backbone", "0.3"});
  CHECK(b.code == 0);
  CHECK(has(b.out, "feasible=yes"));
  CHECK(has(b.out, "0.4666666"));
  CHECK(has(b.out, "0.2333333"));

  const auto u = invoke({"extremal", "upper", "0.3", "--eps", "0.01"});
  CHECK(has(u.out, "0.693"));
  // 0.01 * 0.7 is not exactly 0.007 in binary
  CHECK(has(u.out, "\n0.006999999999999999\n"));
  CHECK(has(invoke({"extremal", "backbone", "0.5"}).out, "R=0.000000000"));

  const std::vector<std::vector<std::string>> cases = {
      {"extremal", "backbone", "0.3"},       {"extremal", "upper", "0.2", "--eps", "0.001"},
      {"extremal", "pn1", "0.1"},            {"extremal", "pn2", "0.15"},
      {"extremal", "backbone", "0.05"},      {"extremal", "dary", "0.1", "-D", "3", "--m", "2"},
  };
  for (const auto& args : cases) {
    const auto gen = invoke(args);
    REQUIRE(gen.code == 0);
    std::vector<std::string> h = {"huffman", "-"};
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "-D") h.insert(h.end(), {"-D", args[i + 1]});
    }
    const auto back = invoke(h, gen.out);
    CAPTURE(gen.out);
    REQUIRE(back.code == 0);
    CHECK(std::abs(value_after(gen.out, "# R=") - value_after(back.out, "\nR=")) < 1e-6);
  }

  const auto deep = invoke({"extremal", "backbone", "0.45", "--m", "3"});
  CHECK(deep.code == 0);
  CHECK(has(deep.out, "feasible=no"));
  CHECK(!deep.err.empty());

  CHECK(invoke({"extremal", "nosuch", "0.3"}).code == 2);
  CHECK(invoke({"extremal", "pn2", "0.7"}).code == 2);
}

TEST_CASE("verify suites") {
  const auto kkt = invoke({"verify", "kkt", "--m", "5"});
  CHECK(kkt.code == 0);
  CHECK(has(kkt.out, "PASS"));

  const auto s = invoke({"verify", "sandwich", "--q", "16", "--n", "5"});
  CHECK(s.code == 0);
  CHECK(has(s.out, "violations=0"));
  CHECK(has(invoke({"verify", "johnsen", "--q", "10", "--n", "5"}).out, "PASS"));
  CHECK(invoke({"verify", "tightness", "--q", "16"}).code == 0);
  CHECK(invoke({"verify", "equalize"}).code == 0);

  const auto eq = invoke({"verify", "eq24"});
  CHECK(eq.code == 0);
  CHECK(has(eq.out, "0.004385"));
  CHECK(has(eq.out, "0.014803"));

  CHECK(invoke({"verify", "sandwich", "--q", "128"}).code == 3);
  CHECK(invoke({"verify", "sandwich", "--q", "32", "--cap", "10"}).code == 3);
  CHECK(invoke({"verify", "sandwich", "--q", "128", "--max-q", "128", "--n", "2"}).code == 0);
  CHECK(invoke({"verify", "kkt", "--m", "30"}).code == 2);
  CHECK(invoke({"verify", "nosuch"}).code == 2);
}

TEST_CASE("verify output does not depend on worker count") {
  for (const char* suite : {"sandwich", "tightness", "eq24"}) {
    const auto one = invoke({"verify", suite, "--workers", "1"});
    const auto three = invoke({"verify", suite, "--workers", "3"});
    CAPTURE(suite);
    CHECK(one.code == 0);
    CHECK(one.out == three.out);
  }
}

TEST_CASE("figures") {
  const auto path = std::filesystem::temp_directory_path() / "redlab_fig2.csv";
  CHECK(invoke({"figure", "fig2", "--step", "0.001", "-o", path.string()}).code == 0);
  std::ifstream f(path);
  const std::string fig2((std::istreambuf_iterator<char>(f)), {});
  std::filesystem::remove(path);
  CHECK(fig2.rfind("p,r_max,r_ub,f_p1\n", 0) == 0);
  const auto row = line_starting(fig2, "0.300000,");
  REQUIRE(!row.empty());
  CHECK(row == "0.300000,0.418709,0.500000,0.415037");

  const auto fig4 = invoke({"figure", "fig4"}).out;
  CHECK(fig4.rfind("p,r_min,r_max,marker\n", 0) == 0);
  CHECK(has(fig4, "0.369"));
  CHECK(has(line_starting(fig4, "0.369"), "beta_1"));
  CHECK(has(line_starting(fig4, "0.181"), "beta_2"));
  CHECK(has(line_starting(fig4, "0.0905"), "beta_3"));

  const auto fig5 = invoke({"figure", "fig5"}).out;
  CHECK(fig5.rfind("p,r_min,r_min_pN\n", 0) == 0);
  CHECK(line_starting(fig5, "0.250000,") == "0.250000,0.000000,0.000000");
  CHECK(line_starting(fig5, "0.750000,").back() == ',');

  CHECK(invoke({"figure", "fig2", "-o", "/nonexistent/dir/x.csv"}).code == 3);
  CHECK(invoke({"figure", "fig9"}).code == 2);
  CHECK(invoke({"figure", "fig2", "--step", "0"}).code == 2);
}

TEST_CASE("help and unknown commands") {
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"nosuch"}).code == 2);
  CHECK(invoke({}).code == 2);
}
