#include "tmac/shortest_paths.hpp"

#include <algorithm>
#include <map>

#include "tmac/errors.hpp"

namespace tmac {

std::vector<std::vector<std::optional<Rat>>> all_pairs_shortest(
    std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, Rat>>& edges) {
  std::vector<std::vector<std::optional<Rat>>> d(n, std::vector<std::optional<Rat>>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = Rat(0);
  for (const auto& [u, v, w] : edges) {
    if (u == v) continue;
    if (!d[u][v] || w < *d[u][v]) d[u][v] = w;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!d[k][j]) continue;
        Rat via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
  }
  return d;
}

std::pair<LiftedDomain, Problem> shortest_path_closure(const LiftedDomain& dom,
                                                       const Problem& prob,
                                                       const MoveSpec& spec,
                                                       const std::vector<EdgeDuration>& table) {
  const LiftedSchema* move = dom.find_schema(spec.schema);
  if (!move) throw Error(Errc::NotAMoveSchema, "no schema named " + spec.schema);

  auto param_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < move->params.size(); ++i) {
      if (move->params[i].name == name) return i;
    }
    throw Error(Errc::NotAMoveSchema,
                "schema " + spec.schema + " has no parameter " + name);
  };
  const std::size_t from_idx = param_index(spec.from_param);
  const std::size_t to_idx = param_index(spec.to_param);
  if (from_idx == to_idx)
    throw Error(Errc::NotAMoveSchema, "from and to name the same parameter");
  const std::string loc_type = move->params[from_idx].type;
  if (move->params[to_idx].type != loc_type)
    throw Error(Errc::NotAMoveSchema, "from and to parameters have different types");

  const PredicateDecl* edge_decl = dom.find_predicate(spec.edge_pred);
  if (!edge_decl || edge_decl->params.size() != 2)
    throw Error(Errc::NotAMoveSchema,
                "edge predicate " + spec.edge_pred + " must be a declared binary predicate");
  for (const auto& e : move->effs) {
    if (e.atom.pred == spec.edge_pred)
      throw Error(Errc::NotAMoveSchema,
                  "edge predicate " + spec.edge_pred + " appears in the move's effects");
  }

  // locations, in declaration order
  std::vector<std::string> locs;
  for (const auto& o : prob.objects) {
    if (loc_type == "object" || o.type == loc_type) locs.push_back(o.name);
  }
  std::map<std::string, std::size_t> loc_idx;
  for (std::size_t i = 0; i < locs.size(); ++i) loc_idx[locs[i]] = i;

  std::map<std::pair<std::string, std::string>, Rat> weight;
  for (const auto& e : table) {
    auto key = std::make_pair(e.from, e.to);
    auto it = weight.find(key);
    if (it == weight.end() || e.dur < it->second) weight[key] = e.dur;
  }

  std::vector<std::tuple<std::size_t, std::size_t, Rat>> edges;
  for (const auto& a : prob.init) {
    if (a.pred != spec.edge_pred) continue;
    auto fi = loc_idx.find(a.args[0]);
    auto ti = loc_idx.find(a.args[1]);
    if (fi == loc_idx.end() || ti == loc_idx.end())
      throw Error(Errc::Type, "edge atom " + a.str() + " mentions a non-location object");
    auto w = weight.find({a.args[0], a.args[1]});
    edges.emplace_back(fi->second, ti->second, w == weight.end() ? move->dur : w->second);
  }

  auto dist = all_pairs_shortest(locs.size(), edges);

  LiftedDomain out = dom;
  std::erase_if(out.schemas, [&](const LiftedSchema& s) { return s.name == spec.schema; });

  for (std::size_t i = 0; i < locs.size(); ++i) {
    for (std::size_t j = 0; j < locs.size(); ++j) {
      if (i == j || !dist[i][j]) continue;
      LiftedSchema direct;
      direct.name = spec.schema + "-" + locs[i] + "-" + locs[j];
      for (std::size_t k = 0; k < move->params.size(); ++k) {
        if (k != from_idx && k != to_idx) direct.params.push_back(move->params[k]);
      }
      direct.dur = *dist[i][j];
      auto subst = [&](const LiftedAtom& a) {
        LiftedAtom r = a;
        for (auto& t : r.terms) {
          if (t == spec.from_param) t = locs[i];
          if (t == spec.to_param) t = locs[j];
        }
        return r;
      };
      for (const auto& c : move->conds) {
        if (c.atom.pred == spec.edge_pred) continue;
        direct.conds.push_back({c.tag, subst(c.atom)});
      }
      for (const auto& e : move->effs) direct.effs.push_back({e.tag, subst(e.atom), e.positive});
      out.schemas.push_back(std::move(direct));
    }
  }
  return {std::move(out), prob};
}

}  // namespace tmac
