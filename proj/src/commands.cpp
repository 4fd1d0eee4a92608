#include "bispan/commands.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "bispan/document.hpp"
#include "bispan/eval.hpp"
#include "bispan/suites.hpp"
#include "bispan/tambara.hpp"

namespace bispan {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("error: cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GroupPtr group_by_name(std::string name) {
  for (auto& c : name) c = static_cast<char>(std::tolower(c));
  if (name == "c2") return Group::cyclic(2);
  if (name == "c3") return Group::cyclic(3);
  if (name == "c4") return Group::cyclic(4);
  if (name == "c5") return Group::cyclic(5);
  if (name == "c6") return Group::cyclic(6);
  if (name == "v4" || name == "c2xc2") return Group::klein_four();
  if (name == "s3") return Group::symmetric(3);
  if (name == "s4") return Group::symmetric(4);
  throw DocumentError("error: unknown group name '" + name + "'");
}

std::string canonical_string(const PolyTuple& t) {
  if (t.size() == 1) return t[0].to_string();
  return poly_tuple_to_string(t);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !s.empty()) out.push_back(cur);
  return out;
}

json failure_json(const SuiteFailure& f) {
  json j;
  j["description"] = f.description;
  Document doc = document_of_values(f.mors, f.bispans);
  if (!f.mors.empty() || !f.bispans.empty())
    j["document"] = json::parse(serialize_document(doc));
  return j;
}

int emit_suite_report(const SuiteReport& rep, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json j;
    j["suite"] = rep.name;
    j["pass"] = rep.pass;
    j["cases"] = rep.cases;
    j["resampled"] = rep.resampled;
    if (!rep.note.empty()) j["note"] = rep.note;
    j["failures"] = json::array();
    for (const auto& f : rep.failures) j["failures"].push_back(failure_json(f));
    out << j.dump(2) << "\n";
  } else {
    out << "suite " << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << " (cases=" << rep.cases;
    if (rep.resampled > 0) out << ", resampled=" << rep.resampled;
    out << ")";
    if (!rep.note.empty()) out << " note: " << rep.note;
    out << "\n";
    for (const auto& f : rep.failures) {
      out << "counterexample: " << f.description << "\n";
      if (!f.mors.empty() || !f.bispans.empty())
        out << serialize_document(document_of_values(f.mors, f.bispans));
    }
  }
  return rep.pass ? 0 : 1;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void emit_dist_dot(const DistributivityDiagram& d, std::ostream& out) {
  out << "digraph distributivity {\n  rankdir=LR;\n";
  auto node = [&](const std::string& id, const std::string& label, int size) {
    out << "  \"" << id << "\" [label=\"" << dot_escape(label) << " (" << size << ")\"];\n";
  };
  node("x", "x", d.l.dom.size);
  node("y", "y", d.f.dom.size);
  node("z", "z", d.f.cod.size);
  node("w", "w", d.w.size);
  node("fw", "f*w", d.pb.apex.size);
  out << "  \"x\" -> \"y\" [label=\"l\"];\n";
  out << "  \"y\" -> \"z\" [label=\"f\"];\n";
  out << "  \"w\" -> \"z\" [label=\"g\"];\n";
  out << "  \"fw\" -> \"w\" [label=\"f~\"];\n";
  out << "  \"fw\" -> \"x\" [label=\"eps\"];\n";
  out << "}\n";
}

void emit_bispan_dot(const Bispan& b, const std::string& name, std::ostream& out) {
  out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n";
  out << "  \"src\" [label=\"src (" << b.src.size << ")\"];\n";
  out << "  \"E\" [label=\"E (" << b.e.size << ")\"];\n";
  out << "  \"B\" [label=\"B (" << b.b.size << ")\"];\n";
  out << "  \"tgt\" [label=\"tgt (" << b.tgt.size << ")\"];\n";
  out << "  \"E\" -> \"src\" [label=\"p\"];\n";
  out << "  \"E\" -> \"B\" [label=\"f\"];\n";
  out << "  \"B\" -> \"tgt\" [label=\"l\"];\n";
  out << "}\n";
}

void emit_span_dot(const Span& s, const std::string& name, std::ostream& out) {
  out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n";
  out << "  \"src\" [label=\"src (" << s.src.size << ")\"];\n";
  out << "  \"apex\" [label=\"apex (" << s.apex.size << ")\"];\n";
  out << "  \"tgt\" [label=\"tgt (" << s.tgt.size << ")\"];\n";
  out << "  \"apex\" -> \"src\" [label=\"back\"];\n";
  out << "  \"apex\" -> \"tgt\" [label=\"fwd\"];\n";
  out << "}\n";
}

template <class S>
int eval_with(const SemiringCircuit& c, const S& sr, const std::vector<std::string>& raw,
              std::ostream& out) {
  std::vector<typename S::value_type> input;
  for (const auto& tok : raw) {
    if (tok == "inf") {
      if constexpr (std::is_same_v<S, TropicalSemiring>) {
        input.push_back(Trop::infinity());
        continue;
      }
    }
    input.push_back(sr.from_int(std::stoll(tok)));
  }
  auto vals = evaluate(c, sr, input);
  for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? ", " : "") << sr.show(vals[i]);
  out << "\n";
  return 0;
}

int cmd_check(const std::string& suite, SuiteParams params, const std::string& format,
              std::ostream& out) {
  std::vector<SuiteReport> reports;
  if (suite == "universal-property") {
    reports.push_back(suite_universal_property(params));
  } else if (suite == "associativity") {
    reports.push_back(suite_associativity(params));
    reports.push_back(suite_unit_laws(params));
  } else if (suite == "functoriality") {
    if (params.group)
      reports.push_back(suite_tambara_functoriality(params));
    else {
      reports.push_back(suite_functoriality(params));
      reports.push_back(suite_oracle_completeness(params));
    }
  } else if (suite == "double-coset") {
    reports.push_back(suite_double_coset(params));
  } else if (suite == "norm") {
    reports.push_back(suite_norm(params));
  } else if (suite == "degree") {
    reports.push_back(suite_degree(params));
    SuiteParams ax = params;
    ax.max_size = std::min(params.max_size, 4);
    reports.push_back(suite_degree_axioms(ax));
  } else if (suite == "splitting") {
    reports.push_back(suite_splitting(params));
  } else {
    throw DocumentError("error: unknown suite '" + suite + "'");
  }
  int rc = 0;
  for (const auto& rep : reports) rc = std::max(rc, emit_suite_report(rep, format, out));
  return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bispan: a computational calculus for spans and bispans of finite (G-)sets"};
  app.require_subcommand(1);

  std::string input_file, format = "text", semiring = "nat", at, group_name, suite, element;
  int max_size = -1, probe_bound = 3, bound = 0;
  long long samples = 500;
  std::uint64_t seed = 1;
  std::vector<std::string> ids;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* opt = sub->add_option("--input", input_file, "input document (JSON)");
    if (needs_input) opt->required();
    sub->add_option("--format", format, "output format: text, json or dot");
  };

  auto* compose = app.add_subcommand("compose", "compose two bispans (first id runs first)");
  add_common(compose, true);
  compose->add_option("ids", ids, "bispan ids")->expected(2);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a bispan over a semiring");
  add_common(eval_cmd, true);
  eval_cmd->add_option("ids", ids, "bispan id")->expected(1);
  eval_cmd->add_option("--semiring", semiring, "nat, int, bool, tropical or poly");
  eval_cmd->add_option("--at", at, "comma-separated input vector");

  auto* dist = app.add_subcommand("dist", "construct a distributivity diagram");
  add_common(dist, true);
  dist->add_option("ids", ids, "morphism ids: l f")->expected(2);

  auto* degree = app.add_subcommand("degree", "measure polynomial degree by finite differences");
  add_common(degree, true);
  degree->add_option("ids", ids, "bispan id")->expected(1);
  degree->add_option("--bound", bound, "difference grid bound");

  auto* cosets = app.add_subcommand("cosets", "double-coset decomposition table");
  add_common(cosets, true);
  cosets->add_option("--group", group_name, "group id in the document")->required();
  cosets->add_option("ids", ids, "subgroup ids: H K L")->expected(3);

  auto* norm = app.add_subcommand("norm", "multiplicative transfer table");
  add_common(norm, true);
  norm->add_option("--group", group_name, "group id in the document")->required();
  norm->add_option("ids", ids, "subgroup ids: H K")->expected(2);
  norm->add_option("--element", element, "comma-separated orbit multiplicities over G/H")
      ->required();

  auto* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("--suite", suite, "suite name")->required();
  check->add_option("--max-size", max_size, "carrier bound");
  check->add_option("--samples", samples, "random sample count");
  check->add_option("--seed", seed, "random seed (BISPAN_SEED overrides)");
  check->add_option("--probe-bound", probe_bound, "universal-property probe bound");
  check->add_option("--group", group_name, "ambient group (C2, C3, C4, V4, S3, ...)");
  check->add_option("--format", format, "output format: text or json");

  auto* render = app.add_subcommand("render", "render a span or bispan");
  add_common(render, true);
  render->add_option("ids", ids, "span or bispan id")->expected(1);

  std::vector<const char*> argv;
  argv.push_back("bispan");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (const char* env_seed = std::getenv("BISPAN_SEED")) seed = std::stoull(env_seed);

    if (compose->parsed()) {
      Document doc = parse_document(read_file(input_file));
      Bispan a = doc.bispan_value(ids[0]);
      Bispan b = doc.bispan_value(ids[1]);
      if (!same_obj(a.tgt, b.src))
        throw DocumentError("error: bispans '" + ids[0] + "' and '" + ids[1] +
                            "' have mismatched boundary (tgt of '" + ids[0] +
                            "' differs from src of '" + ids[1] + "')");
      Bispan comp = compose_bispans(b, a);
      std::string canon =
          comp.src.is_gset() ? std::string("(G-set bispan)") : canonical_string(polynomial_oracle(comp));
      if (format == "json") {
        json j;
        j["canonical"] = canon;
        j["document"] = json::parse(serialize_document(document_of_bispan(comp, "composite")));
        out << j.dump(2) << "\n";
      } else {
        out << canon << "\n";
      }
      return 0;
    }

    if (eval_cmd->parsed()) {
      Document doc = parse_document(read_file(input_file));
      Bispan b = doc.bispan_value(ids[0]);
      SemiringCircuit c = compile(b);
      auto raw = split_commas(at);
      if (semiring == "poly") {
        PolySemiring sr{c.src_arity};
        std::vector<Poly> input;
        if (at.empty()) {
          for (int i = 0; i < c.src_arity; ++i) input.push_back(Poly::variable(c.src_arity, i));
        } else {
          for (const auto& tok : raw) input.push_back(Poly::constant(c.src_arity, std::stoll(tok)));
        }
        auto vals = evaluate(c, sr, input);
        for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? ", " : "") << vals[i].to_string();
        out << "\n";
        return 0;
      }
      if (static_cast<int>(raw.size()) != c.src_arity)
        throw DocumentError("error: bispan '" + ids[0] + "' needs " + std::to_string(c.src_arity) +
                            " input values, got " + std::to_string(raw.size()));
      if (semiring == "nat") return eval_with(c, NatSemiring{}, raw, out);
      if (semiring == "int") return eval_with(c, IntSemiring{}, raw, out);
      if (semiring == "bool") return eval_with(c, BoolSemiring{}, raw, out);
      if (semiring == "tropical") return eval_with(c, TropicalSemiring{}, raw, out);
      throw DocumentError("error: unknown semiring '" + semiring + "'");
    }

    if (dist->parsed()) {
      Document doc = parse_document(read_file(input_file));
      const Mor& l = doc.morphism(ids[0]).mor;
      const Mor& f = doc.morphism(ids[1]).mor;
      DistributivityDiagram d;
      try {
        d = dependent_product(l, f);
      } catch (const std::invalid_argument& ex) {
        throw DocumentError("error: dist '" + ids[0] + "' '" + ids[1] + "': " + ex.what());
      }
      if (format == "dot") {
        emit_dist_dot(d, out);
      } else if (format == "json") {
        json j;
        j["w_size"] = d.w.size;
        j["apex_size"] = d.pb.apex.size;
        std::vector<int> fibre_sizes(d.f.cod.size, 0);
        for (int e = 0; e < d.w.size; ++e) ++fibre_sizes[d.g.map[e]];
        j["w_fibres"] = fibre_sizes;
        out << j.dump(2) << "\n";
      } else {
        out << "w: size " << d.w.size << "\n";
        out << "apex f*w: size " << d.pb.apex.size << "\n";
        for (int k = 0; k < d.f.cod.size; ++k) {
          int n = 0;
          for (int e = 0; e < d.w.size; ++e)
            if (d.g.map[e] == k) ++n;
          out << "w over " << k << ": " << n << " sections\n";
        }
      }
      return 0;
    }

    if (degree->parsed()) {
      Document doc = parse_document(read_file(input_file));
      Bispan b = doc.bispan_value(ids[0]);
      SemiringCircuit c = compile(b);
      int need = 1;
      for (const auto& part : c.monomials)
        for (const auto& m : part) need = std::max(need, static_cast<int>(m.size()) + 1);
      int use_bound = bound > 0 ? bound : need + 1;
      auto meas = finite_difference_degree(c, use_bound);
      for (int j = 0; j < c.tgt_arity; ++j) {
        out << "target " << j << ": degree " << meas.total[j];
        out << "; per-variable [";
        for (int i = 0; i < c.src_arity; ++i) out << (i ? ", " : "") << meas.per_var[j][i];
        out << "]\n";
      }
      out << (meas.certified ? "certified (bound " + std::to_string(use_bound) + ")"
                             : "not certified: " + meas.detail)
          << "\n";
      return 0;
    }

    if (cosets->parsed()) {
      Document doc = parse_document(read_file(input_file));
      const DocGroup& dg = doc.group(group_name);
      int h = doc.subgroup(ids[0]).index;
      int k = doc.subgroup(ids[1]).index;
      int l = doc.subgroup(ids[2]).index;
      auto dec = double_coset_decomposition(dg.group, h, k, l);
      out << "rep\tstabilizer\torbit_size\n";
      for (const auto& blk : dec.blocks)
        out << blk.representative << "\t" << dg.group->subgroup_name(blk.stabilizer) << "\t"
            << blk.orbit.size() << "\n";
      return 0;
    }

    if (norm->parsed()) {
      Document doc = parse_document(read_file(input_file));
      const DocGroup& dg = doc.group(group_name);
      int h = doc.subgroup(ids[0]).index;
      int k = doc.subgroup(ids[1]).index;
      if (!dg.group->subgroup_contains(k, h))
        throw DocumentError("error: subgroup '" + ids[0] + "' is not contained in '" + ids[1] +
                            "'");
      TambaraContext ctx(dg.group);
      Obj base = coset_space(dg.group, h);
      BurnsideElement x = ctx.zero(base);
      auto raw = split_commas(element);
      int stab = orbits_of(base).front().stabilizer;
      if (static_cast<int>(raw.size()) != ctx.class_positions(stab))
        throw DocumentError("error: element needs " + std::to_string(ctx.class_positions(stab)) +
                            " multiplicities (A(" + dg.group->subgroup_name(h) + ") basis)");
      for (std::size_t i = 0; i < raw.size(); ++i) x.counts[0][i] = BigInt(raw[i]);
      BurnsideElement res = ctx.norm(x, quotient_map(dg.group, h, k));
      out << ctx.show(res) << "\n";
      return 0;
    }

    if (check->parsed()) {
      SuiteParams params;
      params.probe_bound = probe_bound;
      params.samples = samples;
      params.seed = seed;
      if (!group_name.empty()) params.group = group_by_name(group_name);
      params.max_size = max_size > 0 ? max_size
                        : suite == "splitting" || suite == "degree" ? 5
                        : suite == "associativity"                  ? 4
                                                                    : 3;
      return cmd_check(suite, params, format, out);
    }

    if (render->parsed()) {
      Document doc = parse_document(read_file(input_file));
      if (doc.bispans.count(ids[0])) {
        emit_bispan_dot(doc.bispan_value(ids[0]), ids[0], out);
        return 0;
      }
      if (doc.spans.count(ids[0])) {
        emit_span_dot(doc.span_value(ids[0]), ids[0], out);
        return 0;
      }
      throw DocumentError("error: no span or bispan named '" + ids[0] + "'");
    }
  } catch (const DocumentError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand executed\n";
  return 2;
}

}  // namespace bispan
