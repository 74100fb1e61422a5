#pragma once

// JSON shapes for every public type. Keys are snake_case field names,
// enumerations are lowercase strings. A cohomology value is a number when
// known, otherwise "positive" or "unknown".

#include <nlohmann/json.hpp>

#include <string>

#include "esyz/bundles.hpp"
#include "esyz/koszul.hpp"
#include "esyz/models.hpp"
#include "esyz/oracle.hpp"

namespace esyz::oracle {

using nlohmann::json;

inline void to_json(json& j, const SurfaceInvariant& s) { j = json{{"e", s.e()}}; }

inline void to_json(json& j, const NumClass& c) { j = json{{"a", c.a}, {"b", c.b}}; }
inline void from_json(const json& j, NumClass& c) {
  j.at("a").get_to(c.a);
  j.at("b").get_to(c.b);
}

inline void to_json(json& j, const CohomValue& v) {
  if (v.is_known())
    j = v.value;
  else
    j = to_string(v);
}

inline void to_json(json& j, const CohomTriple& t) { j = json{{"h0", t.h0}, {"h1", t.h1}, {"h2", t.h2}}; }

inline std::string to_string(Effectivity e) {
  switch (e) {
    case Effectivity::AllRepresentativesEffective: return "all_representatives_effective";
    case Effectivity::SomeRepresentativesEffective: return "some_representatives_effective";
    case Effectivity::NoRepresentativeEffective: return "no_representative_effective";
    case Effectivity::Unknown: break;
  }
  return "unknown";
}

inline void to_json(json& j, const EffectivityStatus& s) {
  j = json{{"verdict", to_string(s.verdict)}, {"detail", nullptr}, {"effective_bundles", nullptr}};
  if (s.detail) j["detail"] = *s.detail;
  if (s.effective_bundles) j["effective_bundles"] = *s.effective_bundles;
}

inline void to_json(json& j, const Positivity& p) {
  j = json{{"ample", p.ample},
           {"bpf", p.bpf == Bpf::Yes ? "yes" : "unknown"},
           {"ample_and_bpf", p.ample_and_bpf}};
}

inline void to_json(json& j, const NpStatus& s) {
  j = json{{"verdict", to_string(s.verdict)}, {"source", to_string(s.source)}, {"p", s.p}};
}

inline void to_json(json& j, const DecompositionWitness& w) {
  j = json{{"factors", w.factors}, {"remainder", w.remainder}, {"route", to_string(w.route)}};
}

}  // namespace esyz::oracle

namespace esyz::bundles {

using nlohmann::json;

inline void to_json(json& j, const SplitBundle& b) { j = json{{"degrees", b.degrees}}; }
inline void to_json(json& j, const SplitCohomology& c) { j = json{{"h0", c.h0}, {"h1", c.h1}}; }
inline void to_json(json& j, const EllipticMBundleSpec& s) {
  j = json{{"factor_degrees", s.factor_degrees}, {"twist_degree", s.twist_degree}};
}
inline void to_json(json& j, const SlopeCriterion& s) {
  j = json{{"applies", s.applies},
           {"slope", {{"numerator", s.slope.numerator()}, {"denominator", s.slope.denominator()}}},
           {"corollary_applies", s.corollary_applies}};
}
inline void to_json(json& j, const EllipticH1Report& r) {
  j = json{{"h0", r.h0}, {"chi", r.chi}, {"h1", r.h1}};
}

}  // namespace esyz::bundles

namespace esyz::models {

using nlohmann::json;

inline void to_json(json& j, const AffinePoint& p) { j = json::array({p.x, p.y}); }

inline void to_json(json& j, const EllipticCurveModel& c) {
  j = json{{"prime", c.field.prime()}, {"a", c.a}, {"b", c.b}, {"points", c.points}};
}

inline void to_json(json& j, const EmbeddedModel& m) {
  json sections = json::array();
  for (std::size_t r = 0; r < m.sections.rows(); ++r) {
    json row = json::array();
    for (double v : m.sections.row(r)) row.push_back(static_cast<Elem>(v));
    sections.push_back(std::move(row));
  }
  j = json{{"prime", m.field.prime()},
           {"label", m.label},
           {"q_max", m.q_max},
           {"points", m.sample_points},
           {"sections", std::move(sections)},
           {"expected_hilbert", m.expected_hilbert}};
}

inline void from_json(const json& j, EmbeddedModel& m) {
  m.field = PrimeField(j.at("prime").get<std::uint32_t>());
  j.at("label").get_to(m.label);
  j.at("q_max").get_to(m.q_max);
  j.at("points").get_to(m.sample_points);
  j.at("expected_hilbert").get_to(m.expected_hilbert);
  const auto& rows = j.at("sections");
  m.sections = linalg::Matrix(rows.size(), m.sample_points.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == m.sample_points.size(), "InvalidModel", "section row length mismatch");
    for (std::size_t s = 0; s < rows[r].size(); ++s) {
      const auto v = rows[r][s].get<std::uint64_t>();
      require(v < m.field.prime(), "InvalidModel", "section value outside the field");
      m.sections(r, s) = static_cast<double>(v);
    }
  }
  detail::certify(m);
}

}  // namespace esyz::models

namespace esyz::koszul {

using nlohmann::json;

inline void to_json(json& j, const KoszulGroupDims& g) {
  j = json{{"p_index", g.p_index},
           {"q_index", g.q_index},
           {"kernel_dim", g.kernel_dim},
           {"image_dim", g.image_dim},
           {"homology_dim", g.homology_dim}};
}

/// Entries are listed sparsely as (i, j, value) for nonzero beta_{i,j};
/// `strands` is the dense [i][j - i] array.
inline void to_json(json& j, const BettiTable& t) {
  json entries = json::array();
  for (int i = 0; i <= t.p_max; ++i)
    for (int q = 0; q <= t.q_max; ++q)
      if (t.by_strand[i][q]) entries.push_back({{"i", i}, {"j", i + q}, {"value", t.by_strand[i][q]}});
  j = json{{"p_max", t.p_max}, {"q_max", t.q_max}, {"entries", entries}, {"strands", t.by_strand}};
}

inline void to_json(json& j, const BettiViolation& v) {
  j = json{{"i", v.i}, {"j", v.j}, {"dim", v.dim}};
}

inline void to_json(json& j, const SkippedGroup& s) {
  j = json{{"p_index", s.p_index}, {"q_index", s.q_index}, {"reason", s.reason}};
}

inline void to_json(json& j, const NpDecision& d) {
  j = json{{"p", d.p},
           {"q_max", d.q_max},
           {"holds", d.holds},
           {"complete", d.complete()},
           {"q_checked", d.q_checked},
           {"violations", d.violations},
           {"skipped", d.skipped},
           {"groups", d.groups},
           {"truncation", d.truncation_note()}};
}

}  // namespace esyz::koszul
