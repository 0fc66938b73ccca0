#pragma once

// End-to-end search for nonzero fundamental coefficients:
//   primitive index -> prime represented by its form -> Fourier-Jacobi slice of
//   square-free index -> Skoruppa map -> gatekeeping -> square-free scan ->
//   witness indices back on the Siegel side.
// Every stage appends one entry to an ordered JSON report, so the output is a
// deterministic function of the table and the configuration.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "pfes/halfint.hpp"
#include "pfes/hecke.hpp"

namespace pfes {

using Report = nlohmann::ordered_json;

struct PipelineConfig {
  /// nullopt: trivial for even k, else the Legendre character of the least
  /// prime q = 3 (mod 4) dividing 2m.
  std::optional<DirichletCharacter> character;
  std::set<i64> scan_primes{2};
  i64 search_bound = 50;
  int max_representation_tries = 16;
  /// Primitive indices tried in stage 2 (the chosen one, then later ones in
  /// canonical order); only truncated tables ever need more than one.
  int max_primitive_candidates = 8;

  Report to_json() const {
    Report j;
    j["character"] = character ? character->to_string() : "default";
    j["scan_primes"] = std::vector<i64>(scan_primes.begin(), scan_primes.end());
    j["search_bound"] = search_bound;
    j["max_representation_tries"] = max_representation_tries;
    j["max_primitive_candidates"] = max_primitive_candidates;
    return j;
  }

  /// Reads {"character": [[q, j], ...] | "spec", "scan_primes": [...],
  /// "search_bound": n, "max_representation_tries": n,
  /// "max_primitive_candidates": n}; all keys optional.
  static PipelineConfig from_json(const nlohmann::json& j) {
    PipelineConfig c;
    for (const auto& [key, value] : j.items())
      require(key == "character" || key == "scan_primes" || key == "search_bound" ||
                  key == "max_representation_tries" || key == "max_primitive_candidates",
              ErrorKind::invalid_argument, "unknown config key '" + key + "'");
    try {
      if (j.contains("character")) {
        const auto& ch = j.at("character");
        if (ch.is_string()) {
          c.character = DirichletCharacter::parse(ch.get<std::string>());
        } else {
          DirichletCharacter chi = DirichletCharacter::trivial(1);
          for (const auto& pair : ch) {
            require(pair.is_array() && pair.size() == 2, ErrorKind::invalid_argument,
                    "character entries must be [prime, index] pairs");
            chi = chi * DirichletCharacter::prime_power(pair[0].get<i64>(), {pair[1].get<i64>()});
          }
          c.character = chi;
        }
      }
      if (j.contains("scan_primes")) c.scan_primes = j.at("scan_primes").get<std::set<i64>>();
      if (j.contains("search_bound")) c.search_bound = j.at("search_bound").get<i64>();
      if (j.contains("max_representation_tries")) c.max_representation_tries = j.at("max_representation_tries").get<int>();
      if (j.contains("max_primitive_candidates")) c.max_primitive_candidates = j.at("max_primitive_candidates").get<int>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::invalid_argument, std::string("config: ") + e.what());
    }
    require(c.search_bound >= 1 && c.max_representation_tries >= 1 && c.max_primitive_candidates >= 1, ErrorKind::invalid_argument,
            "config bounds must be positive");
    return c;
  }
};

inline DirichletCharacter default_character(int weight, i64 m) {
  if (weight % 2 == 0) return DirichletCharacter::trivial(1);
  for (i64 q : prime_divisors(2 * m))
    if (q % 4 == 3) return DirichletCharacter::legendre(q);
  fail(ErrorKind::parity_mismatch, "no real odd character modulo 2m = " + std::to_string(2 * m));
}

struct PipelineOutcome {
  Report report;
  bool success = false;
  std::optional<ErrorKind> failure;
};

namespace pipeline_detail {

inline Report index_json(const QuadIndex& t) { return Report::array({t.n, t.r, t.mn}); }

class Run {
 public:
  explicit Run(const FourierTable& f, const PipelineConfig& cfg) : f_(f), cfg_(cfg) {
    out_.report["input"] = {{"N", f.level()},
                            {"k", f.weight()},
                            {"disc_bound", f.disc_bound()},
                            {"certified_bound", f.certified_bound()},
                            {"records", f.size()}};
    out_.report["config"] = cfg.to_json();
    out_.report["stages"] = Report::array();
    out_.report["warnings"] = Report::array();
  }

  PipelineOutcome execute() {
    try {
      QuadIndex s = primitive_stage();
      const auto [m, chi] = representation_stage(s);
      const JacobiSlice phi = slice_stage(m);
      const QSeries h = skoruppa_stage(phi, chi);
      gate_stage(h);
      const auto ds = scan_stage(h);
      witness_stage(phi, chi, ds);
      out_.success = true;
      out_.report["result"] = {{"status", "success"}, {"witnesses", ds.size()}};
    } catch (const Error& e) {
      auto& stages = out_.report["stages"];
      const bool recorded = !stages.empty() && stages.back()["stage"] == current_ && stages.back()["status"] == "failed";
      if (!recorded) stages.push_back({{"stage", current_}, {"status", "failed"}});
      stages.back()["error"] = to_string(e.kind());
      stages.back()["message"] = e.what();
      out_.report["result"] = {{"status", "failed"}, {"stage", current_}, {"error", to_string(e.kind())}};
      out_.failure = e.kind();
    }
    return out_;
  }

 private:
  void warn(const std::string& text) { out_.report["warnings"].push_back(current_ + ": " + text); }
  void push(Report entry) { out_.report["stages"].push_back(std::move(entry)); }

  QuadIndex primitive_stage() {
    current_ = "find_primitive";
    const PrimitiveSearch ps = find_primitive(f_);
    Report entry{{"stage", current_}, {"status", "ok"}, {"index", index_json(ps.index)},
                 {"disc", ps.index.disc()}, {"content", content(ps.index)}, {"primitive", ps.primitive}};
    QuadIndex chosen = ps.index;
    if (!ps.primitive) {
      entry["status"] = "warning";
      Report diag = Report::array();
      for (const auto& d : ps.descent)
        diag.push_back({{"p", d.prime}, {"term", std::string(to_string(d.kind))}, {"argument", index_json(d.argument)},
                        {"value", to_string(d.value)}, {"smaller_disc", d.smaller_disc}});
      entry["descent"] = diag;
      entry["notes"] = ps.notes;
      warn("least-discriminant coefficient is imprimitive; table is not closed under the Hecke relations");
      std::optional<QuadIndex> fallback;
      for (const auto& [t, v] : f_.entries())
        if (f_.certified(t) && content(t) == 1) {
          fallback = t;
          break;
        }
      require(fallback.has_value(), ErrorKind::not_primitive, "no primitive nonzero coefficient in the certified range");
      chosen = *fallback;
      entry["fallback"] = index_json(chosen);
    }
    entry["value"] = to_string(f_.at(chosen));
    push(entry);
    return chosen;
  }

  std::pair<i64, DirichletCharacter> representation_stage(const QuadIndex& s) {
    current_ = "represent_prime";
    std::vector<QuadIndex> candidates{s};
    for (const auto& [t, v] : f_.entries()) {
      if (static_cast<int>(candidates.size()) >= cfg_.max_primitive_candidates) break;
      if (f_.certified(t) && content(t) == 1 && CanonicalLess{}(s, t)) candidates.push_back(t);
    }
    Report tried = Report::array();
    for (const auto& t : candidates) {
      std::set<i64> excluded;
      Report primes = Report::array();
      for (int attempt = 0; attempt < cfg_.max_representation_tries; ++attempt) {
        PrimeRepresentation rep;
        try {
          rep = represent_prime(t, f_.level(), excluded, cfg_.search_bound);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::not_found) throw;
          break;
        }
        if (f_.at(rep.image) == 0) {
          excluded.insert(rep.q);
          primes.push_back(rep.q);
          continue;
        }
        const i64 m = checked_mul(f_.level(), rep.q);
        const DirichletCharacter chi = cfg_.character ? *cfg_.character : default_character(f_.weight(), m);
        tried.push_back({{"index", index_json(t)}, {"vanishing_primes", primes}});
        if (t != s) warn("used primitive index " + to_string(t) + " after earlier candidates met vanishing coefficients");
        push({{"stage", current_},
              {"status", t == s ? "ok" : "warning"},
              {"candidates", tried},
              {"index", index_json(t)},
              {"c", rep.c},
              {"d", rep.d},
              {"A", Report::array({rep.a.a, rep.a.b, rep.a.c, rep.a.d})},
              {"q", rep.q},
              {"image", index_json(rep.image)},
              {"value", to_string(f_.at(rep.image))},
              {"m", m}});
        return {m, chi};
      }
      tried.push_back({{"index", index_json(t)}, {"vanishing_primes", primes}});
    }
    push({{"stage", current_}, {"status", "failed"}, {"candidates", tried}});
    fail(ErrorKind::not_found, "every represented prime met a vanishing coefficient");
  }

  JacobiSlice slice_stage(i64 m) {
    current_ = "fj_extract";
    const JacobiSlice phi = fj_extract(f_, m);
    require(!phi.coeffs.empty(), ErrorKind::zero_form, "Fourier-Jacobi coefficient vanishes on the certified range");
    push({{"stage", current_}, {"status", "ok"}, {"m", m}, {"coefficients", phi.coeffs.size()}, {"bound", phi.bound}});
    return phi;
  }

  QSeries skoruppa_stage(const JacobiSlice& phi, const DirichletCharacter& chi) {
    current_ = "skoruppa_map";
    const QSeries h = skoruppa_map(phi, chi, f_.weight());
    Report coeffs = Report::array();
    for (const auto& [d, v] : h.coeffs) coeffs.push_back(Report::array({d, to_string(v)}));
    push({{"stage", current_}, {"status", "ok"}, {"character", chi.to_string()}, {"level", h.level},
          {"weight", h.weight_tag()}, {"bound", h.bound}, {"coefficients", coeffs}});
    return h;
  }

  void gate_stage(const QSeries& h) {
    current_ = "gatekeeping";
    require(!h.is_zero(), ErrorKind::zero_series, "half-integral weight image vanishes up to its bound");
    Report entry{{"stage", current_}, {"status", "ok"}};
    const SahaVerdict saha = saha_conditions(h.level, h.character);
    entry["saha"] = {{"ok", saha.ok}, {"reason", saha.reason}};
    if (!saha.ok) {
      entry["status"] = "warning";
      warn("level conditions not met: " + saha.reason);
    }
    if (h.k == 2 && h.half) {
      const auto theta = theta_shape_detect(h);
      entry["theta"] = theta ? Report{{"t", theta->t}, {"r", theta->r}, {"psi", theta->psi.to_string()},
                                      {"status", theta->status}}
                             : Report("none");
      if (theta) {
        entry["status"] = "failed";
        push(entry);
        fail(ErrorKind::theta_shape, "image has the excluded theta shape (consistent to bound)");
      }
    } else {
      entry["theta"] = "not applicable";
    }
    push(entry);
  }

  std::vector<i64> scan_stage(const QSeries& h) {
    current_ = "squarefree_scan";
    const auto ds = squarefree_scan(h, cfg_.scan_primes);
    push({{"stage", current_}, {"status", ds.empty() ? "failed" : "ok"}, {"D", ds}});
    require(!ds.empty(), ErrorKind::not_found, "no square-free D with nonzero coefficient up to the bound");
    return ds;
  }

  void witness_stage(const JacobiSlice& phi, const DirichletCharacter& chi, const std::vector<i64>& ds) {
    current_ = "witnesses";
    const i64 m = phi.index;
    Report list = Report::array();
    for (i64 d : ds) {
      for (i64 mu = 0; mu < 2 * m; ++mu) {
        if (chi.real_value(mu) == 0 || mod(d + mu * mu, 4 * m) != 0) continue;
        const i64 n = (d + mu * mu) / (4 * m);
        const Rational& c = phi.at(n, mu);
        if (c == 0) continue;
        list.push_back({{"D", d}, {"index", index_json({n, mu, m})}, {"value", to_string(c)},
                        {"fundamental", is_fundamental(-d)}});
        break;
      }
    }
    push({{"stage", current_}, {"status", "ok"}, {"witnesses", list}});
  }

  const FourierTable& f_;
  const PipelineConfig& cfg_;
  PipelineOutcome out_;
  std::string current_ = "input";
};

}  // namespace pipeline_detail

inline PipelineOutcome run_pipeline(const FourierTable& f, const PipelineConfig& cfg = {}) {
  return pipeline_detail::Run(f, cfg).execute();
}

}  // namespace pfes
