#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bispan/commands.hpp"
#include "bispan/document.hpp"

using namespace bispan;

namespace {

std::string fixture(const std::string& name) {
  return std::string(BISPAN_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("document round trips") {
  for (const std::string name : {"bispans.json", "s3.json", "c2.json"}) {
    Document doc = parse_document(read_file(fixture(name)));
    std::string canon = serialize_document(doc);
    Document doc2 = parse_document(canon);
    // canonical text is a fixed point of parse . serialize
    CHECK(serialize_document(doc2) == canon);
    // and the parsed values agree
    CHECK(doc2.objects.size() == doc.objects.size());
    for (const auto& [id, dobj] : doc.objects) {
      CHECK(same_obj(doc2.object(id).obj, dobj.obj));
    }
    for (const auto& [id, dm] : doc.morphisms) CHECK(same_mor(doc2.morphism(id).mor, dm.mor));
    for (const auto& [id, dg] : doc.groups) {
      CHECK(doc2.group(id).group->order() == dg.group->order());
      for (int a = 0; a < dg.group->order(); ++a)
        for (int b = 0; b < dg.group->order(); ++b)
          CHECK(doc2.group(id).group->mul(a, b) == dg.group->mul(a, b));
    }
    for (const auto& [id, ds] : doc.subgroups)
      CHECK(doc2.subgroup(id).index == ds.index);
  }
}

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const DocumentError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse errors carry positions and ids") {
  CHECK(error_of("{ \"objects\": [ }").find("parse error at line 1") != std::string::npos);
  CHECK(error_of(R"({"morphisms": {"f": {"dom": "missing", "cod": "missing", "map": []}}})")
            .find("unresolved object id 'missing'") != std::string::npos);
  CHECK(error_of(R"({"objects": {"a": {"tokens": ["x","x"]}}})").find("pairwise distinct") !=
        std::string::npos);
  CHECK(error_of(
            R"({"objects": {"a": {"tokens": ["x"]}, "b": {"tokens": ["y","z"]}},
           "morphisms": {"f": {"dom": "a", "cod": "b", "map": [0], "flags": ["L"]}},
           "bispans": {"bad": {"p": "f", "f": "f", "l": "f"}}})")
            .find("bispan 'bad'") != std::string::npos);
}

TEST_CASE("compose golden") {
  auto r = run({"compose", "--input", fixture("bispans.json"), "doubling", "squaring"});
  CHECK(r.code == 0);
  CHECK(r.out == "4*x^2\n");
  // identity fixture echoes the input's canonical form
  auto rid = run({"compose", "--input", fixture("bispans.json"), "identity", "identity"});
  CHECK(rid.code == 0);
  CHECK(rid.out == "x\n");
  // byte-identical across runs
  auto r2 = run({"compose", "--input", fixture("bispans.json"), "doubling", "squaring"});
  CHECK(r2.out == r.out);
  // json format carries the composite document
  auto rj = run({"compose", "--input", fixture("bispans.json"), "doubling", "squaring",
                 "--format", "json"});
  CHECK(rj.code == 0);
  CHECK(rj.out.find("\"canonical\": \"4*x^2\"") != std::string::npos);
}

TEST_CASE("compose boundary mismatch names both ids") {
  auto r = run({"compose", "--input", fixture("bispans.json"), "squaring", "mixed"});
  CHECK(r.code == 2);
  CHECK(r.err.find("'squaring'") != std::string::npos);
  CHECK(r.err.find("'mixed'") != std::string::npos);
}

TEST_CASE("eval golden") {
  auto r = run({"eval", "--input", fixture("bispans.json"), "mixed", "--semiring", "nat", "--at",
                "3,4"});
  CHECK(r.code == 0);
  CHECK(r.out == "13\n");
  auto rt = run({"eval", "--input", fixture("bispans.json"), "mixed", "--semiring", "tropical",
                 "--at", "3,4"});
  CHECK(rt.code == 0);
  CHECK(rt.out == "4\n");
  auto rb = run({"eval", "--input", fixture("bispans.json"), "mixed", "--semiring", "bool",
                 "--at", "1,1"});
  CHECK(rb.out == "1\n");
  auto rp = run({"eval", "--input", fixture("bispans.json"), "mixed", "--semiring", "poly"});
  CHECK(rp.out == "x0^2 + x1\n");
  auto bad = run({"eval", "--input", fixture("bispans.json"), "mixed", "--semiring", "nat",
                  "--at", "3"});
  CHECK(bad.code == 2);
}

TEST_CASE("dist output") {
  auto r = run({"dist", "--input", fixture("bispans.json"), "l23", "fpt"});
  CHECK(r.code == 0);
  CHECK(r.out.find("w: size 6") != std::string::npos);
  auto rd = run({"dist", "--input", fixture("bispans.json"), "l23", "fpt", "--format", "dot"});
  CHECK(rd.code == 0);
  CHECK(rd.out.find("digraph distributivity") != std::string::npos);
  CHECK(rd.out.find("\"w\" [label=\"w (6)\"]") != std::string::npos);
  CHECK(rd.out.find("eps") != std::string::npos);
  // non-composable inputs are a usage error
  auto bad = run({"dist", "--input", fixture("bispans.json"), "mixp", "mixf"});
  CHECK(bad.code == 2);
}

TEST_CASE("cosets golden") {
  auto r = run({"cosets", "--input", fixture("s3.json"), "--group", "S3", "H", "K", "L"});
  CHECK(r.code == 0);
  CHECK(r.out == "rep\tstabilizer\torbit_size\n0\tC2\t3\n2\te\t6\n");
  auto r2 = run({"cosets", "--input", fixture("s3.json"), "--group", "S3", "H", "K", "L"});
  CHECK(r2.out == r.out);
  // H = K = L collapses to one row
  auto r3 = run({"cosets", "--input", fixture("s3.json"), "--group", "S3", "H", "K", "H"});
  CHECK(r3.code == 0);
  CHECK(r3.out == "rep\tstabilizer\torbit_size\n0\tC2\t3\n");
}

TEST_CASE("norm golden") {
  auto r = run({"norm", "--input", fixture("c2.json"), "--group", "C2", "e", "full", "--element",
                "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "2·[C2/C2] + 1·[C2/e]\n");
  auto r2 = run({"norm", "--input", fixture("c2.json"), "--group", "C2", "e", "full",
                 "--element", "2"});
  CHECK(r2.out == r.out);
  auto bad = run({"norm", "--input", fixture("c2.json"), "--group", "C2", "full", "e",
                  "--element", "1,0"});
  CHECK(bad.code == 2);
}

TEST_CASE("degree command") {
  auto r = run({"degree", "--input", fixture("bispans.json"), "mixed"});
  CHECK(r.code == 0);
  CHECK(r.out.find("target 0: degree 2") != std::string::npos);
  CHECK(r.out.find("certified") != std::string::npos);
}

TEST_CASE("render outputs dot") {
  auto r = run({"render", "--input", fixture("bispans.json"), "doubling", "--format", "dot"});
  CHECK(r.code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
  auto rs = run({"render", "--input", fixture("bispans.json"), "s", "--format", "dot"});
  CHECK(rs.code == 0);
  auto bad = run({"render", "--input", fixture("bispans.json"), "nope"});
  CHECK(bad.code == 2);
}

TEST_CASE("check subcommand exit codes") {
  auto r = run({"check", "--suite", "norm"});
  CHECK(r.code == 0);
  CHECK(r.out.find("suite norm: PASS") != std::string::npos);
  auto bad = run({"check", "--suite", "nonsense"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("unknown suite") != std::string::npos);
  auto rj = run({"check", "--suite", "norm", "--format", "json"});
  CHECK(rj.code == 0);
  CHECK(rj.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("seed environment override") {
  setenv("BISPAN_SEED", "99", 1);
  auto r = run({"check", "--suite", "splitting", "--max-size", "3"});
  unsetenv("BISPAN_SEED");
  CHECK(r.code == 0);
}

TEST_CASE("usage errors exit with 2") {
  auto r = run({"compose"});
  CHECK(r.code == 2);
  auto r2 = run({"frobnicate"});
  CHECK(r2.code == 2);
  auto r3 = run({"eval", "--input", "/nonexistent.json", "x"});
  CHECK(r3.code == 2);
}
