#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

const std::string kData = WCC_DATA_DIR;

struct Result {
  int code;
  json report;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = wcc::cli::run(args, out, err);
  json report;
  if (code != 2 && !out.str().empty() && out.str().front() == '{') report = json::parse(out.str());
  return {code, report, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("wcc_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("reports and exit codes") {
  auto ok = run({"verify-cc", "--scheme", data("k3.cfg")});
  CHECK(ok.code == 0);
  CHECK(ok.report["status"] == "ok");
  CHECK(ok.report["command"] == "verify-cc");
  CHECK(ok.report["payload"]["rank"] == 2);
  CHECK(ok.report["formats"]["weight"] == 1);

  auto bad = run({"verify-cc", "--scheme", data("bad.cfg")});
  CHECK(bad.code == 1);
  CHECK(bad.report["status"] == "diagnostic");
  CHECK(bad.report["diagnostic"]["code"] == "C2");
  CHECK(bad.report["diagnostic"]["witness"].contains("class"));

  CHECK(run({"verify-cc"}).code == 2);
  CHECK(run({"verify-cc", "--scheme", data("k3.cfg"), "--bogus"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"verify-cc", "--scheme", data("missing.cfg")}).code == 2);
  CHECK(run({}).code == 2);

  auto help = run({"--help"});
  CHECK(help.code == 0);
  for (const char* kind : {"scheme", "group", "permgroup", "weight", "cocycle", "character"})
    CHECK(help.out.find(kind) != std::string::npos);

  auto parse = run({"verify-cc", "--scheme", temp_file("bad_token.cfg", "2 2\n0 1\n1 q\n")});
  CHECK(parse.code == 1);
  CHECK(parse.report["diagnostic"]["code"] == "parse");
  CHECK(parse.report["diagnostic"]["witness"]["line"] == "3");
  CHECK(parse.report["diagnostic"]["witness"]["column"] == "3");

  // Deterministic reports.
  auto again = run({"verify-cc", "--scheme", data("k3.cfg")});
  CHECK(again.out == ok.out);

  const std::string path = (std::filesystem::temp_directory_path() / "wcc_cli_report.json").string();
  auto to_file = run({"h2", "--group", data("z2xz2.grp"), "--output", path});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["payload"]["invariant_factors"] == json::array({2}));
}

TEST_CASE("scheme commands") {
  auto thin = run({"thin", "--group", data("s3.grp")});
  CHECK(thin.code == 0);
  CHECK(thin.report["payload"]["rank"] == 6);

  auto sch = run({"schurian", "--perm", data("s3_natural.perm")});
  CHECK(sch.report["payload"]["rank"] == 2);
  CHECK(sch.report["payload"]["group_order"] == 6);

  auto thin_path = temp_file("s3_thin.cfg", thin.report["payload"]["text"].get<std::string>());
  auto closed = run({"closed", "--scheme", thin_path, "--classes", "1,0"});
  CHECK(closed.code == 0);
  CHECK(closed.report["payload"]["classes"] == json::array({0, 1}));
  auto open = run({"closed", "--scheme", thin_path, "--classes", "0,1,2"});
  CHECK(open.code == 1);
  CHECK(open.report["diagnostic"]["code"] == "closed");

  auto factor = run({"factor", "--scheme", thin_path, "--classes", "0,1"});
  CHECK(factor.code == 0);
  CHECK(factor.report["payload"]["quotient"]["rank"] == 2);
  CHECK(factor.report["payload"]["blocks"].size() == 3);
  CHECK(run({"factor", "--scheme", thin_path, "--classes", "0,x"}).code == 2);

  auto aut = run({"aut", "--scheme", data("k3.cfg")});
  CHECK(aut.report["payload"]["count"] == 6);
  CHECK(run({"aut", "--scheme", data("k3.cfg"), "--max-aut-points", "2"}).report["diagnostic"]["code"] == "refusal");

  CHECK(run({"closed", "--scheme", data("bad.cfg"), "--classes", "0"}).report["diagnostic"]["code"] == "C2");
}

TEST_CASE("weight commands") {
  auto z2 = run({"thin", "--group", data("z2.grp")});
  auto scheme = temp_file("z2.cfg", z2.report["payload"]["text"].get<std::string>());
  auto v = run({"verify-w", "--scheme", scheme, "--weight", data("z2_sign.w")});
  CHECK(v.code == 0);
  CHECK(v.report["payload"]["flags"]["W3"] == true);
  CHECK(v.report["payload"]["algebra"]["dimension"] == 2);
  auto hw = run({"verify-hw", "--scheme", scheme, "--weight", data("z2_sign.w")});
  CHECK(hw.code == 1);
  CHECK(hw.report["diagnostic"]["code"] == "W4");
  CHECK(run({"verify-hw", "--scheme", scheme, "--weight", data("z4_quarter.w")}).code == 0);

  auto ones = temp_file("ones2.w", "2\n1 1\n1 1\n");
  auto eq = run({"equiv", "--scheme", scheme, "--weight", ones, "--weight2", data("z2_sign.w")});
  CHECK(eq.code == 0);
  CHECK(eq.report["payload"]["equivalent"] == true);
  CHECK(eq.report["payload"]["residual"].get<double>() < 1e-9);
  auto heq = run({"h-equiv", "--scheme", scheme, "--weight", ones, "--weight2", data("z4_quarter.w")});
  CHECK(heq.report["payload"]["equivalent"] == true);
  auto ineq = run({"equiv", "--scheme", scheme, "--weight", ones, "--weight2", temp_file("id2.w", "2\n1 0\n0 1\n")});
  CHECK(ineq.code == 0);
  CHECK(ineq.report["payload"]["equivalent"] == false);
}

TEST_CASE("cohomology commands") {
  auto h2 = run({"h2", "--group", data("z2xz2.grp")});
  CHECK(h2.report["payload"]["invariant_factors"] == json::array({2}));
  auto zn = run({"h2-zn", "--group", data("z4.grp"), "--m", "2"});
  CHECK(zn.report["payload"]["invariant_factors"] == json::array({2}));
  auto cls = run({"classify", "--group", data("z4.grp")});
  CHECK(cls.code == 0);
  CHECK(cls.report["payload"]["classes"] == 1);
  CHECK(run({"classify", "--group", data("z2xz2.grp")}).report["payload"]["classes"] == 2);
  CHECK(run({"h2", "--group", data("s3.grp"), "--max-group", "4"}).report["diagnostic"]["code"] == "refusal");

  auto norm = run({"normalize", "--group", data("z2.grp"), "--cocycle", data("z2_sign.coc")});
  CHECK(norm.code == 0);
  CHECK(norm.report["payload"]["beta"]["exponents"][1][1] == 0);

  auto cob = run({"coboundary", "--group", data("z2.grp"), "--cocycle", data("z2_sign.coc")});
  CHECK(cob.report["payload"]["coboundary"] == true);
  auto cob_mod = run({"coboundary", "--group", data("z2.grp"), "--cocycle", data("z2_sign.coc"), "--mod"});
  CHECK(cob_mod.report["payload"]["coboundary"] == false);

  auto broken = temp_file("broken.coc", "2 3\n0 1\n0 0\n");
  CHECK(run({"normalize", "--group", data("z2.grp"), "--cocycle", broken}).report["diagnostic"]["code"] == "cocycle");

  auto w = run({"w-from-cocycle", "--group", data("z2.grp"), "--cocycle", data("z2_sign.coc")});
  CHECK(w.code == 0);
  auto wpath = temp_file("from_cocycle.w", w.report["payload"]["weight"]["text"].get<std::string>());
  auto back = run({"cocycle-from-w", "--group", data("z2.grp"), "--weight", wpath});
  CHECK(back.code == 0);
  CHECK(back.report["payload"]["exact"]["exponents"] == json::parse("[[0,0],[0,1]]"));

  auto h = run({"to-h-weight", "--group", data("z2.grp"), "--weight", data("z2_sign.w")});
  CHECK(h.code == 0);
  CHECK(h.report["payload"].contains("h_weight"));
}

TEST_CASE("monomial commands") {
  auto m = run({"monomial-weight", "--group", data("s3.grp"), "--character", data("s3_c2_sign.chr")});
  CHECK(m.code == 0);
  CHECK(m.report["payload"]["verdict"]["algebra"]["dimension"] == 2);
  CHECK(m.report["payload"]["residuals"]["proportionality"].get<double>() < 1e-9);
  CHECK_FALSE(m.report["payload"].contains("h_weight"));

  auto e = run({"example24", "--group", data("z4.grp"), "--character", data("z4_c2_sign.chr")});
  CHECK(e.code == 0);
  CHECK(e.report["payload"]["h_weight"]["n"] == 2);

  auto notsub = temp_file("notsub.chr", "2 2\n0 3\n0 1\n");
  CHECK(run({"example24", "--group", data("s3.grp"), "--character", notsub}).report["diagnostic"]["code"] ==
        "character");
}
