#pragma once

// JSON round trips for the public value types plus report assembly. Key
// order comes from the underlying ordered maps, so a run with identical
// inputs serializes to identical bytes; nothing here may iterate an
// unordered container.

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "complexmat.hpp"
#include "config.hpp"
#include "construct.hpp"
#include "hyper.hpp"
#include "pencil.hpp"
#include "poly.hpp"
#include "sos.hpp"

namespace hypdet {

using nlohmann::json;

inline json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

inline cd complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im]");
  return cd(j[0].get<double>(), j[1].get<double>());
}

inline json mat_to_json(const CMat& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(complex_to_json(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline CMat mat_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a matrix as an array of rows");
  int nr = int(j.size());
  int nc = nr ? int(j[0].size()) : 0;
  CMat M(nr, nc);
  for (int r = 0; r < nr; ++r) {
    if (int(j[r].size()) != nc) throw std::invalid_argument("ragged matrix rows");
    for (int c = 0; c < nc; ++c) M(r, c) = complex_from_json(j[r][c]);
  }
  return M;
}

inline json config_to_json(const Config& c) {
  return json{{"real_tol", c.real_tol},
              {"rank_tol", c.rank_tol},
              {"eig_sep", c.eig_sep},
              {"sos_tol", c.sos_tol},
              {"boundary_tol", c.boundary_tol},
              {"pair_tol", c.pair_tol},
              {"extend_tol", c.extend_tol},
              {"psd_floor", c.psd_floor},
              {"n_samples", c.n_samples},
              {"sos_max_iters", c.sos_max_iters},
              {"grid_size", c.grid_size},
              {"t_contraction", c.t_contraction},
              {"variety_count", c.variety_count},
              {"seed", c.seed}};
}

inline Config config_from_json(const json& j, Config base = {}) {
  for (const auto& [key, val] : j.items()) {
    if (key == "real_tol") base.real_tol = val.get<double>();
    else if (key == "rank_tol") base.rank_tol = val.get<double>();
    else if (key == "eig_sep") base.eig_sep = val.get<double>();
    else if (key == "sos_tol") base.sos_tol = val.get<double>();
    else if (key == "boundary_tol") base.boundary_tol = val.get<double>();
    else if (key == "pair_tol") base.pair_tol = val.get<double>();
    else if (key == "extend_tol") base.extend_tol = val.get<double>();
    else if (key == "psd_floor") base.psd_floor = val.get<double>();
    else if (key == "n_samples") base.n_samples = val.get<int>();
    else if (key == "sos_max_iters") base.sos_max_iters = val.get<int>();
    else if (key == "grid_size") base.grid_size = val.get<int>();
    else if (key == "t_contraction") base.t_contraction = val.get<double>();
    else if (key == "variety_count") base.variety_count = val.get<int>();
    else if (key == "seed") base.seed = val.get<std::uint64_t>();
    else throw std::invalid_argument("unknown config key: " + key);
  }
  validate(base);
  return base;
}

inline json pencil_to_json(const Pencil& P) {
  json out{{"k", pencil_dim(P)}, {"c", complex_to_json(P.c)}};
  json mats = json::array();
  for (const CMat& M : P.mats) mats.push_back(mat_to_json(M));
  out["mats"] = mats;
  if (P.Bp && P.Bm) out["split"] = json{{"Bp", mat_to_json(*P.Bp)}, {"Bm", mat_to_json(*P.Bm)}};
  return out;
}

inline Pencil pencil_from_json(const json& j) {
  Pencil P;
  if (!j.contains("mats") || !j["mats"].is_array() || j["mats"].empty())
    throw std::invalid_argument("pencil: missing mats");
  for (const json& m : j["mats"]) P.mats.push_back(mat_from_json(m));
  if (j.contains("c")) P.c = complex_from_json(j["c"]);
  if (j.contains("k") && j["k"].get<int>() != P.mats[0].rows())
    throw std::invalid_argument("pencil: declared size disagrees with the matrices");
  if (j.contains("split")) {
    P.Bp = mat_from_json(j["split"].at("Bp"));
    P.Bm = mat_from_json(j["split"].at("Bm"));
  }
  return P;
}

inline json verdict_to_json(const Verdict& v) {
  json out{{"holds", v.holds},
           {"samples_checked", v.samples_checked},
           {"worst_imag", v.worst_imag},
           {"direction_vanishes", v.direction_vanishes},
           {"seed", v.seed}};
  if (!v.witness_x.empty()) {
    out["witness_x"] = v.witness_x;
    out["witness_root"] = complex_to_json(v.witness_root);
  }
  return out;
}

inline json invariants_to_json(const std::map<std::string, Invariant>& inv) {
  json out = json::object();
  for (const auto& [name, i] : inv) out[name] = json{{"pass", i.pass}, {"value", i.value}};
  return out;
}

inline json certificate_to_json(const SosCertificate& c) {
  json bases = json::array();
  for (const auto& basis : c.bases) {
    json b = json::array();
    for (const Expt& e : basis) b.push_back(e);
    bases.push_back(b);
  }
  json factors = json::array();
  for (const CMat& E : c.E) factors.push_back(mat_to_json(E));
  return json{{"structure", structure_name(c.structure)},
              {"inertia", c.inertia},
              {"mdeg", c.mdeg},
              {"residual", c.residual},
              {"t_used", c.t_used},
              {"iterations", c.iterations},
              {"converged", c.converged},
              {"checkpoint_residuals", c.checkpoints},
              {"bases", bases},
              {"E", factors}};
}

inline json stages_to_json(const std::vector<StageRecord>& stages) {
  json out = json::array();
  for (const StageRecord& s : stages) {
    json v = json::object();
    for (const auto& [key, val] : s.values) v[key] = val;
    out.push_back(json{{"name", s.name}, {"values", v}});
  }
  return out;
}

// common report skeleton; callers attach pencil / verdict / certificate
inline json make_report(const std::string& input, const json& stages, const json& invariants,
                        const Config& cfg) {
  return json{{"input", input},
              {"stages", stages},
              {"invariants", invariants},
              {"seed", cfg.seed},
              {"config", config_to_json(cfg)}};
}

inline std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace hypdet
