#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bispan/context.hpp"

namespace bispan {

/// A span src <- apex -> tgt; the forward leg carries the F-flag.
struct Span {
  Obj src, tgt, apex;
  Mor back;  // apex -> src
  Mor fwd;   // apex -> tgt, F-class
};

Span make_span(Mor back, Mor fwd);
Span identity_span(const Obj& x);
Span embed_backward(const Mor& f);  // [f]_B : cod(f) => dom(f)
Span embed_forward(const Mor& f);   // [f]_F : dom(f) => cod(f), needs the F-flag

/// Composition by pullback of the middle legs: s2 after s1.
Span compose_spans(const Span& s2, const Span& s1);

/// A 2-morphism of spans: a map of apexes commuting with both legs.
struct SpanMor {
  Span source, target;
  Mor mediating;  // apex(source) -> apex(target)
};

bool validate_span_mor(const SpanMor& m, std::string* why = nullptr);
SpanMor identity_span_mor(const Span& s);
SpanMor spanmor_vcompose(const SpanMor& m2, const SpanMor& m1);
/// Horizontal whiskering: s o m (post-compose both spans with s), m o s.
SpanMor whisker_left(const Span& s, const SpanMor& m);
SpanMor whisker_right(const SpanMor& m, const Span& s);

/// Unit id_x => [f]_B o [f]_F and counit [f]_F o [f]_B => id_{cod f} of the
/// adjunction [f]_F -| [f]_B, as concrete span morphisms.
SpanMor adjunction_unit(const Mor& f);
SpanMor adjunction_counit(const Mor& f);

/// Counting matrix of a plain span: entry (i, j) is the number of apex
/// elements with back = i, fwd = j. A complete isomorphism invariant over
/// finite sets.
std::vector<std::vector<int>> counting_matrix(const Span& s);

/// Isomorphism of spans with the same boundary. Plain sets: counting-matrix
/// canonical form, with the witness assembled by bucket matching. G-sets:
/// equivariant backtracking over apex bijections.
std::optional<SpanMor> span_isomorphic(const Span& a, const Span& b);

/// The pullback of [f]_F and [g]_F in the span 2-category: the fibre product
/// in the ambient category with its two projection spans.
struct SpanSquareFF {
  Span f_span, g_span;  // [f]_F : a => c, [g]_F : b => c
  Obj vertex;           // a x_c b
  Span to_a, to_b;      // projection spans with identity back legs
};
SpanSquareFF pullback_FF(const Mor& f, const Mor& g);

/// The pullback of [f]_B and [g]_F: the distributivity diagram for (g, f),
/// packaged with its projection spans (Prop.-level description).
struct SpanSquareBF {
  Span f_span, g_span;  // [f]_B : c => b, [g]_F : a => b
  DistributivityDiagram diagram;
  Obj vertex;    // w = f_* g
  Span to_c, to_a;
};
SpanSquareBF pullback_BF(const Mor& f, const Mor& g);

/// Exhaustive terminality check for the FF square: a probe is a triple
/// (sx: z => a, sy: z => b) together with an explicit identification of the
/// two composites to c (a bijection of probe apexes over z compatible with f
/// and g). For every such probe there must be exactly one mediating span into
/// the vertex compatible with the identification; since all cone legs are
/// forward embeddings, this reduces to an element-level count on the vertex.
struct TerminalityReport {
  bool pass = true;
  long long probes = 0;
  std::string detail;
};
TerminalityReport verify_ff_pullback_terminal(const SpanSquareFF& sq, int probe_bound);

}  // namespace bispan
