#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bispan/bispan.hpp"
#include "bispan/span.hpp"

namespace bispan {

/// A parsed diagram document: named groups (permutation generators or raw
/// multiplication tables), subgroups, objects (token arrays, optionally with
/// a group action), morphisms (index arrays), spans and bispans by reference.
/// Parsing validates everything: references resolve, assignments type-check,
/// actions satisfy the group laws, morphisms are equivariant.
struct DocGroup {
  GroupPtr group;
  int degree = 0;                             // 0 when given by table
  std::vector<std::vector<int>> generators;   // permutation generators
  std::vector<std::vector<int>> words;        // element index -> generator word
};

struct DocObject {
  Obj obj;
  std::vector<std::string> tokens;
  std::string group_name;                      // empty for plain objects
  std::vector<std::vector<int>> action_gens;   // one permutation per generator
  bool action_by_table = false;
};

struct DocSubgroup {
  std::string group_name;
  int index = 0;  // subgroup index in the group's lattice
  std::vector<std::vector<int>> generators;    // as given (may be empty)
  std::vector<int> elements;                   // as given (may be empty)
};

struct DocMorphism {
  Mor mor;
  std::string dom_name, cod_name;
};

struct Document {
  std::map<std::string, DocGroup> groups;
  std::map<std::string, DocSubgroup> subgroups;
  std::map<std::string, DocObject> objects;
  std::map<std::string, DocMorphism> morphisms;
  std::map<std::string, std::array<std::string, 2>> spans;    // back, fwd
  std::map<std::string, std::array<std::string, 3>> bispans;  // p, f, l

  const DocObject& object(const std::string& id) const;
  const DocMorphism& morphism(const std::string& id) const;
  Span span_value(const std::string& id) const;
  Bispan bispan_value(const std::string& id) const;
  const DocSubgroup& subgroup(const std::string& id) const;
  const DocGroup& group(const std::string& id) const;
};

/// Errors carry a message with position or identifier diagnostics.
struct DocumentError : std::runtime_error {
  explicit DocumentError(const std::string& what) : std::runtime_error(what) {}
};

Document parse_document(const std::string& text);
std::string serialize_document(const Document& doc);

/// A document presenting the given bispan (fresh object/morphism names).
Document document_of_bispan(const Bispan& b, const std::string& name);
/// A document holding loose morphisms and bispans (counterexample dumps).
Document document_of_values(const std::vector<std::pair<std::string, Mor>>& mors,
                            const std::vector<std::pair<std::string, Bispan>>& bispans);

}  // namespace bispan
