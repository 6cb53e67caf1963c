#pragma once

// JSON views of the library's value types, plus the inverse parsers used by
// the round-trip tests. All numeric payloads are exact strings in the
// Cyc::str() grammar; nothing goes through floating point.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dcm/classfn.hpp"
#include "dcm/cmtype.hpp"
#include "dcm/ledger.hpp"
#include "dcm/render.hpp"

namespace dcm {

using ojson = nlohmann::ordered_json;

inline ojson json_classfn(const FiniteGroup& G, const ClassFunction& f) {
  if (f.grp != &G) throw std::invalid_argument("json_classfn: group mismatch");
  ojson arr = ojson::array();
  for (unsigned c = 0; c < G.num_classes(); ++c) {
    ojson row;
    row["class"] = G.label(G.class_rep(c));
    row["size"] = G.class_size(c);
    row["value"] = f.val[c].str();
    arr.push_back(std::move(row));
  }
  return arr;
}

inline ClassFunction classfn_from_json(const FiniteGroup& G, const ojson& arr) {
  ClassFunction f = zero_fn(G);
  if (!arr.is_array() || arr.size() != G.num_classes())
    throw std::invalid_argument("classfn_from_json: wrong class count");
  for (unsigned c = 0; c < G.num_classes(); ++c) {
    const ojson& row = arr[c];
    if (row.at("class").get<std::string>() != G.label(G.class_rep(c)))
      throw std::invalid_argument("classfn_from_json: class label mismatch");
    f.val[c] = parse_cyc(row.at("value").get<std::string>());
  }
  return f;
}

inline ojson json_decomposition(const std::vector<std::pair<std::string, Cyc>>& coords) {
  ojson arr = ojson::array();
  for (const auto& [name, c] : coords) {
    ojson row;
    row["char"] = name;
    row["coeff"] = c.str();
    arr.push_back(std::move(row));
  }
  return arr;
}

inline ojson json_ledger(const ZLedger& l) {
  ojson obj = ojson::object();
  for (const auto& [atom, c] : l.coeff) obj[atom.str()] = c.str();
  return obj;
}

inline ZLedger ledger_from_json(const ojson& obj) {
  ZLedger l;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    l.add(parse_atom(it.key()), parse_cyc(it.value().get<std::string>()));
  return l;
}

inline ojson json_counts(const CountData& cnt) {
  ojson obj;
  obj["n"] = cnt.n;
  obj["r"] = cnt.r;
  ojson a = ojson::array();
  for (unsigned j = 1; j <= cnt.m; ++j) a.push_back(rat_str(cnt.a[j]));
  obj["a"] = std::move(a);
  if (cnt.n % 2 == 0) {
    obj["b0"] = rat_str(cnt.b0);
    obj["b1"] = rat_str(cnt.b1);
  }
  return obj;
}

inline ojson json_orbit_report(const OrbitReport& rep) {
  ojson obj;
  obj["n"] = rep.n;
  obj["r"] = rep.r;
  obj["orbit_count"] = rep.orbits.size();
  ojson arr = ojson::array();
  for (const auto& o : rep.orbits) {
    ojson row;
    row["rep"] = subset_str(o.rep);
    row["size"] = o.size;
    if (2 * rep.r == rep.n) row["rho_glued"] = o.rho_glued;
    arr.push_back(std::move(row));
  }
  obj["orbits"] = std::move(arr);
  return obj;
}

inline ojson json_stabilizer(const FiniteGroup& G, const StabilizerReport& rep) {
  ojson obj;
  obj["order"] = rep.order;
  ojson gens = ojson::array();
  for (gidx g : rep.generators) gens.push_back(G.label(g));
  obj["generators"] = std::move(gens);
  ojson elems = ojson::array();
  for (gidx g : rep.elements) elems.push_back(G.label(g));
  obj["elements"] = std::move(elems);
  return obj;
}

inline ojson json_zverdict(const ZVerdict& v) {
  ojson obj;
  obj["oracle"] = json_ledger(v.oracle);
  obj["published"] = json_ledger(v.published);
  obj["certified"] = json_ledger(v.certified);
  obj["published_pass"] = v.published_pass;
  obj["certified_pass"] = v.certified_pass;
  if (!v.published_pass) obj["delta_published"] = json_ledger(v.delta_published);
  return obj;
}

inline ojson json_equiv_report(const EquivalenceReport& rep) {
  ojson obj;
  obj["n"] = rep.n;
  obj["size"] = rep.size;
  obj["det"] = rep.det.str();
  obj["nonsingular"] = rep.nonsingular;
  if (!rep.nonsingular) {
    obj["extended_rows"] = rep.extended_rows;
    obj["extended_rank"] = rep.extended_rank;
    obj["extended_certified"] = rep.extended_certified;
  }
  return obj;
}

}  // namespace dcm
