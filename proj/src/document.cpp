#include "bispan/document.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bispan {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw DocumentError("error: " + msg); }

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<std::vector<int>> perm_list(const json& j, const std::string& what) {
  std::vector<std::vector<int>> out;
  if (!j.is_array()) fail(what + " must be an array of permutations");
  for (const auto& p : j) {
    std::vector<int> perm;
    for (const auto& v : p) perm.push_back(v.get<int>());
    out.push_back(std::move(perm));
  }
  return out;
}

// replays the same BFS as Group::from_permutations, collecting generator
// words (letters applied in order) and the permutation of each element
void enumerate_words(int degree, const std::vector<std::vector<int>>& gens,
                     std::vector<std::vector<int>>& words,
                     std::vector<std::vector<int>>& perms) {
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  perms = {id};
  words = {{}};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      std::vector<int> next(degree);
      for (int v = 0; v < degree; ++v) next[v] = gens[gi][perms[i][v]];
      if (index.emplace(next, static_cast<int>(perms.size())).second) {
        perms.push_back(next);
        auto w = words[i];
        w.push_back(static_cast<int>(gi));
        words.push_back(std::move(w));
      }
    }
  }
}

}  // namespace

const DocObject& Document::object(const std::string& id) const {
  auto it = objects.find(id);
  if (it == objects.end()) fail("unresolved object id '" + id + "'");
  return it->second;
}

const DocMorphism& Document::morphism(const std::string& id) const {
  auto it = morphisms.find(id);
  if (it == morphisms.end()) fail("unresolved morphism id '" + id + "'");
  return it->second;
}

const DocSubgroup& Document::subgroup(const std::string& id) const {
  auto it = subgroups.find(id);
  if (it == subgroups.end()) fail("unresolved subgroup id '" + id + "'");
  return it->second;
}

const DocGroup& Document::group(const std::string& id) const {
  auto it = groups.find(id);
  if (it == groups.end()) fail("unresolved group id '" + id + "'");
  return it->second;
}

Span Document::span_value(const std::string& id) const {
  auto it = spans.find(id);
  if (it == spans.end()) fail("unresolved span id '" + id + "'");
  try {
    return make_span(morphism(it->second[0]).mor, morphism(it->second[1]).mor);
  } catch (const std::invalid_argument& ex) {
    fail("span '" + id + "': " + ex.what());
  }
}

Bispan Document::bispan_value(const std::string& id) const {
  auto it = bispans.find(id);
  if (it == bispans.end()) fail("unresolved bispan id '" + id + "'");
  try {
    return make_bispan(morphism(it->second[0]).mor, morphism(it->second[1]).mor,
                       morphism(it->second[2]).mor);
  } catch (const std::invalid_argument& ex) {
    fail("bispan '" + id + "': " + ex.what());
  }
}

Document parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    throw DocumentError("parse error at line " + std::to_string(line) + ", column " +
                        std::to_string(col) + ": " + e.what());
  }
  if (!root.is_object()) fail("document root must be an object");
  Document doc;

  if (root.contains("groups")) {
    for (auto& [name, spec] : root["groups"].items()) {
      DocGroup dg;
      try {
        if (spec.contains("table")) {
          std::vector<std::vector<int>> table;
          for (const auto& row : spec["table"]) table.push_back(row.get<std::vector<int>>());
          dg.group = Group::from_table(std::move(table), name);
        } else {
          dg.degree = spec.at("degree").get<int>();
          dg.generators = perm_list(spec.at("generators"), "group '" + name + "' generators");
          std::vector<std::vector<int>> perms;
          enumerate_words(dg.degree, dg.generators, dg.words, perms);
          dg.group = Group::from_permutations(dg.degree, dg.generators, name);
        }
      } catch (const std::invalid_argument& ex) {
        fail("group '" + name + "': " + ex.what());
      }
      doc.groups.emplace(name, std::move(dg));
    }
  }

  if (root.contains("subgroups")) {
    for (auto& [name, spec] : root["subgroups"].items()) {
      DocSubgroup ds;
      ds.group_name = spec.at("group").get<std::string>();
      const DocGroup& dg = doc.group(ds.group_name);
      std::vector<int> elems{0};
      if (spec.contains("elements")) {
        ds.elements = spec["elements"].get<std::vector<int>>();
        elems = ds.elements;
      } else if (spec.contains("generators")) {
        ds.generators = perm_list(spec["generators"], "subgroup '" + name + "' generators");
        if (dg.degree == 0) fail("subgroup '" + name + "': permutation generators need a permutation group");
        std::vector<std::vector<int>> words, perms;
        enumerate_words(dg.degree, dg.generators, words, perms);
        for (const auto& p : ds.generators) {
          auto it = std::find(perms.begin(), perms.end(), p);
          if (it == perms.end())
            fail("subgroup '" + name + "': generator permutation is not a group element");
          elems.push_back(static_cast<int>(it - perms.begin()));
        }
      }
      try {
        ds.index = dg.group->subgroup_closure(elems);
      } catch (const std::exception& ex) {
        fail("subgroup '" + name + "': " + ex.what());
      }
      doc.subgroups.emplace(name, std::move(ds));
    }
  }

  if (root.contains("objects")) {
    for (auto& [name, spec] : root["objects"].items()) {
      DocObject dobj;
      for (const auto& t : spec.at("tokens")) dobj.tokens.push_back(t.get<std::string>());
      {
        std::set<std::string> uniq(dobj.tokens.begin(), dobj.tokens.end());
        if (uniq.size() != dobj.tokens.size())
          fail("object '" + name + "': token identifiers must be pairwise distinct");
      }
      const int n = static_cast<int>(dobj.tokens.size());
      if (!spec.contains("group")) {
        dobj.obj = make_set(n);
      } else {
        dobj.group_name = spec["group"].get<std::string>();
        const DocGroup& dg = doc.group(dobj.group_name);
        std::vector<std::vector<int>> table;
        try {
          if (spec.contains("action_table")) {
            dobj.action_by_table = true;
            for (const auto& row : spec["action_table"]) table.push_back(row.get<std::vector<int>>());
          } else {
            dobj.action_gens = perm_list(spec.at("action"), "object '" + name + "' action");
            if (static_cast<int>(dobj.action_gens.size()) !=
                static_cast<int>(dg.generators.size()))
              fail("object '" + name + "': one action permutation per group generator required");
            table.assign(dg.group->order(), std::vector<int>(n));
            for (int e = 0; e < dg.group->order(); ++e)
              for (int t = 0; t < n; ++t) {
                int cur = t;
                for (int letter : dg.words[e]) cur = dobj.action_gens[letter][cur];
                table[e][t] = cur;
              }
          }
          dobj.obj = make_gobj(dg.group, std::move(table));
        } catch (const std::invalid_argument& ex) {
          fail("object '" + name + "': " + ex.what());
        }
      }
      doc.objects.emplace(name, std::move(dobj));
    }
  }

  if (root.contains("morphisms")) {
    for (auto& [name, spec] : root["morphisms"].items()) {
      DocMorphism dm;
      dm.dom_name = spec.at("dom").get<std::string>();
      dm.cod_name = spec.at("cod").get<std::string>();
      auto map = spec.at("map").get<std::vector<int>>();
      bool in_f = true, in_l = true;
      if (spec.contains("flags")) {
        in_f = in_l = false;
        for (const auto& fl : spec["flags"]) {
          if (fl == "F") in_f = true;
          else if (fl == "L") in_l = true;
          else fail("morphism '" + name + "': unknown flag");
        }
      }
      try {
        dm.mor = make_mor(doc.object(dm.dom_name).obj, doc.object(dm.cod_name).obj,
                          std::move(map), in_f, in_l);
      } catch (const std::invalid_argument& ex) {
        fail("morphism '" + name + "': " + ex.what());
      }
      doc.morphisms.emplace(name, std::move(dm));
    }
  }

  if (root.contains("spans")) {
    for (auto& [name, spec] : root["spans"].items()) {
      doc.spans.emplace(name, std::array<std::string, 2>{spec.at("back").get<std::string>(),
                                                         spec.at("fwd").get<std::string>()});
      doc.span_value(name);  // validate now
    }
  }
  if (root.contains("bispans")) {
    for (auto& [name, spec] : root["bispans"].items()) {
      doc.bispans.emplace(name,
                          std::array<std::string, 3>{spec.at("p").get<std::string>(),
                                                     spec.at("f").get<std::string>(),
                                                     spec.at("l").get<std::string>()});
      doc.bispan_value(name);  // validate now
    }
  }
  return doc;
}

std::string serialize_document(const Document& doc) {
  json root = json::object();
  if (!doc.groups.empty()) {
    json g = json::object();
    for (const auto& [name, dg] : doc.groups) {
      json spec = json::object();
      if (!dg.generators.empty() || dg.degree > 0) {
        spec["degree"] = dg.degree;
        spec["generators"] = dg.generators;
      } else {
        std::vector<std::vector<int>> table(dg.group->order(), std::vector<int>(dg.group->order()));
        for (int a = 0; a < dg.group->order(); ++a)
          for (int b = 0; b < dg.group->order(); ++b) table[a][b] = dg.group->mul(a, b);
        spec["table"] = table;
      }
      g[name] = std::move(spec);
    }
    root["groups"] = std::move(g);
  }
  if (!doc.subgroups.empty()) {
    json s = json::object();
    for (const auto& [name, ds] : doc.subgroups) {
      json spec = json::object();
      spec["group"] = ds.group_name;
      if (!ds.generators.empty())
        spec["generators"] = ds.generators;
      else if (!ds.elements.empty())
        spec["elements"] = ds.elements;
      else
        spec["elements"] = doc.group(ds.group_name).group->subgroup_elements(ds.index);
      s[name] = std::move(spec);
    }
    root["subgroups"] = std::move(s);
  }
  if (!doc.objects.empty()) {
    json o = json::object();
    for (const auto& [name, dobj] : doc.objects) {
      json spec = json::object();
      std::vector<std::string> tokens = dobj.tokens;
      if (static_cast<int>(tokens.size()) != dobj.obj.size) {
        tokens.clear();
        for (int i = 0; i < dobj.obj.size; ++i) tokens.push_back("e" + std::to_string(i));
      }
      spec["tokens"] = tokens;
      if (dobj.obj.is_gset()) {
        spec["group"] = dobj.group_name;
        if (!dobj.action_by_table && !dobj.action_gens.empty()) {
          spec["action"] = dobj.action_gens;
        } else {
          spec["action_table"] = dobj.obj.action->table();
        }
      }
      o[name] = std::move(spec);
    }
    root["objects"] = std::move(o);
  }
  if (!doc.morphisms.empty()) {
    json m = json::object();
    for (const auto& [name, dm] : doc.morphisms) {
      json spec = json::object();
      spec["dom"] = dm.dom_name;
      spec["cod"] = dm.cod_name;
      spec["map"] = dm.mor.map;
      if (!dm.mor.in_f || !dm.mor.in_l) {
        json flags = json::array();
        if (dm.mor.in_f) flags.push_back("F");
        if (dm.mor.in_l) flags.push_back("L");
        spec["flags"] = std::move(flags);
      }
      m[name] = std::move(spec);
    }
    root["morphisms"] = std::move(m);
  }
  if (!doc.spans.empty()) {
    json s = json::object();
    for (const auto& [name, legs] : doc.spans) s[name] = {{"back", legs[0]}, {"fwd", legs[1]}};
    root["spans"] = std::move(s);
  }
  if (!doc.bispans.empty()) {
    json b = json::object();
    for (const auto& [name, legs] : doc.bispans)
      b[name] = {{"p", legs[0]}, {"f", legs[1]}, {"l", legs[2]}};
    root["bispans"] = std::move(b);
  }
  return root.dump(2) + "\n";
}

namespace {

void add_object(Document& doc, const Obj& obj, const std::string& name,
                std::map<const void*, std::string>& group_names) {
  DocObject dobj;
  dobj.obj = obj;
  for (int i = 0; i < obj.size; ++i) dobj.tokens.push_back("e" + std::to_string(i));
  if (obj.is_gset()) {
    const void* key = obj.group().get();
    auto it = group_names.find(key);
    if (it == group_names.end()) {
      std::string gname = obj.group()->name().empty()
                              ? "G" + std::to_string(group_names.size())
                              : obj.group()->name();
      DocGroup dg;
      dg.group = obj.group();
      doc.groups.emplace(gname, std::move(dg));
      it = group_names.emplace(key, gname).first;
    }
    dobj.group_name = it->second;
    dobj.action_by_table = true;
  }
  doc.objects.emplace(name, std::move(dobj));
}

std::string find_or_add_object(Document& doc, const Obj& obj,
                               std::map<const void*, std::string>& group_names, int& counter) {
  for (const auto& [name, dobj] : doc.objects)
    if (same_obj(dobj.obj, obj)) return name;
  std::string name = "o" + std::to_string(counter++);
  add_object(doc, obj, name, group_names);
  return name;
}

void add_morphism(Document& doc, const Mor& m, const std::string& name,
                  std::map<const void*, std::string>& group_names, int& counter) {
  DocMorphism dm;
  dm.dom_name = find_or_add_object(doc, m.dom, group_names, counter);
  dm.cod_name = find_or_add_object(doc, m.cod, group_names, counter);
  dm.mor = m;
  doc.morphisms.emplace(name, std::move(dm));
}

}  // namespace

Document document_of_bispan(const Bispan& b, const std::string& name) {
  Document doc;
  std::map<const void*, std::string> group_names;
  int counter = 0;
  add_morphism(doc, b.p, name + ".p", group_names, counter);
  add_morphism(doc, b.f, name + ".f", group_names, counter);
  add_morphism(doc, b.l, name + ".l", group_names, counter);
  doc.bispans.emplace(name, std::array<std::string, 3>{name + ".p", name + ".f", name + ".l"});
  return doc;
}

Document document_of_values(const std::vector<std::pair<std::string, Mor>>& mors,
                            const std::vector<std::pair<std::string, Bispan>>& bispans) {
  Document doc;
  std::map<const void*, std::string> group_names;
  int counter = 0;
  for (const auto& [name, m] : mors) add_morphism(doc, m, name, group_names, counter);
  for (const auto& [name, b] : bispans) {
    add_morphism(doc, b.p, name + ".p", group_names, counter);
    add_morphism(doc, b.f, name + ".f", group_names, counter);
    add_morphism(doc, b.l, name + ".l", group_names, counter);
    doc.bispans.emplace(name, std::array<std::string, 3>{name + ".p", name + ".f", name + ".l"});
  }
  return doc;
}

}  // namespace bispan
