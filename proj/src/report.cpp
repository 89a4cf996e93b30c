#include "bggforge/report.hpp"

namespace bgg {

using nlohmann::json;

json to_json(const DimReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) {
    json fibers = json::array();
    for (const auto& f : c.fibers) fibers.push_back({{"degree", f.degree}, {"regularity", f.regularity}, {"dim", f.dim}});
    comps.push_back({{"sigma", c.sigma}, {"tau", c.tau}, {"fibers", fibers}, {"dim", c.dim}});
  }
  return {{"k", r.k}, {"l", r.l}, {"components", comps}, {"dim", r.total}};
}

json to_json(const BggDiagram& g) {
  json checks = json::array();
  for (const auto& c : g.checks)
    checks.push_back({{"kind", c.kind}, {"index", c.index}, {"passed", c.passed}, {"detail", c.detail}});
  json ranks = json::array();
  for (const auto& s : g.rank_pattern)
    ranks.push_back({{"k", s.k},
                     {"rows", s.rows},
                     {"cols", s.cols},
                     {"rank", s.rank},
                     {"injective", s.injective()},
                     {"surjective", s.surjective()}});
  json top = json::array(), bottom = json::array();
  for (const auto& s : g.top) top.push_back(to_json(dim_report(*s)));
  for (const auto& s : g.bottom) bottom.push_back(to_json(dim_report(*s)));
  return {{"n", g.n},          {"J", g.J},           {"sign", g.sign}, {"checks", checks},
          {"rank_pattern", ranks}, {"top_row", top}, {"bottom_row", bottom}, {"verified", g.verified()}};
}

json to_json(const BggComplex& c, const std::vector<SpaceTable>& tables) {
  json spaces = json::array();
  for (const auto& s : c.spaces)
    spaces.push_back({{"index", s.index},
                      {"kind", to_string(s.kind)},
                      {"ambient", {{"k", s.ambient->k()}, {"l", s.ambient->l()}}},
                      {"fiber_dim", s.fiber_basis.cols()},
                      {"dim", s.dim()}});
  json ops = json::array();
  for (std::size_t i = 0; i < c.operators.size(); ++i)
    ops.push_back({{"index", int(i)},
                   {"rows", c.operators[i].rows()},
                   {"cols", c.operators[i].cols()},
                   {"nnz", c.operators[i].nnz()}});
  json tabs = json::array();
  for (const auto& t : tables)
    tabs.push_back({{"index", t.index}, {"k", t.k}, {"l", t.l}, {"kind", t.kind}, {"entries", t.entries}});
  json comp = json::array();
  for (bool b : c.composition_zero) comp.push_back(b);
  return {{"name", c.name},     {"n", c.n},           {"J", c.J},
          {"spaces", spaces},   {"operators", ops},   {"composition_zero", comp},
          {"tables", tabs},     {"is_complex", c.is_complex()}};
}

json to_json(const SequenceCohomology& s) { return {{"dims", s.dims}, {"ranks", s.ranks}, {"h", s.h}}; }

json to_json(const CohomologyReport& r) {
  json bound_ok = json::array();
  for (bool b : r.bound_ok) bound_ok.push_back(b);
  json j = {{"arithmetic", to_string(r.mode.kind)},
            {"derived", to_json(r.derived)},
            {"top_row", to_json(r.top_row)},
            {"bottom_row", to_json(r.bottom_row)},
            {"bound", r.bound},
            {"bound_ok", bound_ok},
            {"bound_holds", r.bound_holds()},
            {"euler_ok", r.euler_ok},
            {"equality_at_zero", r.equality_at_zero},
            {"rows_expected", r.rows_expected},
            {"indeterminate", r.indeterminate},
            {"indeterminate_operators", r.indeterminate_operators}};
  if (r.mode.kind == Arithmetic::floating) j["tol"] = r.mode.tol;
  return j;
}

json to_json(const WitnessCheck& w) {
  return {{"count", w.count}, {"independent", w.independent}, {"all_in_kernel", w.all_in_kernel}};
}

json to_json(const SuiteEntry& e) {
  json res = {{"exact", e.residual.exact_mode}};
  if (e.residual.exact_mode) res["zero"] = e.residual.exact_zero;
  else {
    res["l2"] = e.residual.l2;
    res["relative"] = e.residual.relative;
  }
  return {{"check", e.check}, {"sample", e.sample}, {"k", e.k}, {"l", e.l}, {"residual", res}, {"passed", e.passed}};
}

std::string serialize(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bgg
