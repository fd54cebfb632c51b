#pragma once

// Suite runner and report formatting.  Reports carry no timestamps or
// host data, so equal configurations give byte-identical output.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "pcm/examples.hpp"
#include "pcm/identities.hpp"
#include "pcm/specfile.hpp"

namespace pcm {

struct RunConfig {
  std::string manifold;  // builtin name or path to a structure file
  std::vector<std::string> suites{"all"};
  int points = 32;
  int vectors = 8;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  std::optional<DEtaConvention> d_eta;  // unset: file setting, else half
  std::string format = "text";
  NablaPhiTrace trace = NablaPhiTrace::Norm;
};

struct RunReport {
  RunConfig config;
  std::string example;
  DEtaConvention d_eta = DEtaConvention::Half;
  std::optional<StructureClass> classification;
  std::vector<CheckResult> results;
  std::string error;  // load or sampling failure, or the failing axiom
  int exit_code = 0;

  int count(Status s) const {
    int n = 0;
    for (const auto& r : results)
      if (r.status == s) ++n;
    return n;
  }
};

inline std::vector<std::string> expand_suites(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (const auto& s : requested) {
    if (s == "all") return suite_names();
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw std::invalid_argument("unknown suite '" + s + "'");
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

inline void validate(const RunConfig& c) {
  if (c.manifold.empty()) throw std::invalid_argument("no manifold given");
  if (c.points < 1) throw std::invalid_argument("points must be at least 1");
  if (c.vectors < 0) throw std::invalid_argument("vectors must be non-negative");
  if (!(c.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (c.format != "text" && c.format != "json") throw std::invalid_argument("format must be text or json");
  expand_suites(c.suites);
}

/// Resolves a builtin name or reads a structure file (without the axiom check,
/// which the run reports itself).
inline std::pair<PCStructure, std::optional<DEtaConvention>> resolve_manifold(const std::string& m) {
  if (is_builtin(m)) return {load_builtin(m), std::nullopt};
  SpecFile f = read_spec_file(m);
  return {f.structure, f.d_eta};
}

/// Exit codes: 0 all non-skipped checks pass, 1 some check fails, 2 the
/// run could not be carried out.
inline RunReport run(const RunConfig& config) {
  RunReport rep;
  rep.config = config;
  try {
    validate(config);
    auto [S, file_conv] = resolve_manifold(config.manifold);
    rep.example = S.name;
    rep.d_eta = config.d_eta.value_or(file_conv.value_or(DEtaConvention::Half));
    CheckOptions opt;
    opt.points = config.points;
    opt.vectors = config.vectors;
    opt.seed = config.seed;
    opt.tol = config.tol;
    opt.d_eta = rep.d_eta;
    opt.trace = config.trace;
    Context ctx(std::move(S), opt);
    if (ctx.axioms_ok()) rep.classification = ctx.cls();
    else rep.error = ctx.axiom_error();
    rep.results = run_suites(ctx, expand_suites(config.suites));
    rep.exit_code = (rep.count(Status::Fail) > 0 || !rep.error.empty()) ? 1 : 0;
  } catch (const std::exception& e) {
    rep.error = e.what();
    rep.exit_code = 2;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

inline std::string json_bool(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline std::string to_json(const RunReport& rep) {
  using detail::json_bool;
  using detail::json_number;
  using detail::json_string;
  std::ostringstream os;
  const RunConfig& c = rep.config;
  os << "{\n  \"config\": {\n";
  os << "    \"manifold\": " << json_string(c.manifold) << ",\n";
  os << "    \"suites\": [";
  for (std::size_t i = 0; i < c.suites.size(); ++i) os << (i ? ", " : "") << json_string(c.suites[i]);
  os << "],\n";
  os << "    \"points\": " << c.points << ",\n";
  os << "    \"vectors\": " << c.vectors << ",\n";
  os << "    \"seed\": " << c.seed << ",\n";
  os << "    \"tol\": " << json_number(c.tol) << ",\n";
  os << "    \"d_eta\": " << json_string(to_string(rep.d_eta)) << ",\n";
  os << "    \"nabla_phi_trace\": " << json_string(to_string(c.trace)) << "\n  },\n";
  os << "  \"example\": " << json_string(rep.example) << ",\n";
  if (rep.classification) {
    const StructureClass& k = *rep.classification;
    os << "  \"classification\": {\n";
    os << "    \"contact_metric\": " << json_bool(k.contact_metric) << ",\n";
    os << "    \"normal\": " << json_bool(k.normal) << ",\n";
    os << "    \"sasakian\": " << json_bool(k.sasakian) << ",\n";
    os << "    \"delta_plus\": " << json_bool(k.condition15_plus) << ",\n";
    os << "    \"delta_minus\": " << json_bool(k.condition15_minus) << ",\n";
    os << "    \"contact_defect\": " << json_number(k.contact_defect) << ",\n";
    os << "    \"normality_defect\": " << json_number(k.normality_defect) << ",\n";
    os << "    \"sasakian_defect\": " << json_number(k.sasakian_defect) << "\n  },\n";
  } else {
    os << "  \"classification\": null,\n";
  }
  os << "  \"results\": [";
  for (std::size_t i = 0; i < rep.results.size(); ++i) {
    const CheckResult& r = rep.results[i];
    os << (i ? ",\n" : "\n") << "    {";
    os << "\"id\": " << json_string(r.id);
    os << ", \"suite\": " << json_string(r.suite);
    os << ", \"example\": " << json_string(r.example);
    os << ", \"status\": " << json_string(to_string(r.status));
    if (r.status == Status::Skipped) {
      os << ", \"max_residual\": null, \"mean_residual\": null";
      os << ", \"skipped_reason\": " << json_string(r.note);
    } else {
      os << ", \"max_residual\": " << json_number(r.max_residual);
      os << ", \"mean_residual\": " << json_number(r.mean_residual);
      os << ", \"skipped_reason\": null";
      os << ", \"points\": " << r.points;
      os << ", \"evaluations\": " << r.evaluations;
      if (r.equivalence)
        os << ", \"lhs_max\": " << json_number(r.lhs_max) << ", \"rhs_max\": " << json_number(r.rhs_max);
      if (!r.note.empty()) os << ", \"note\": " << json_string(r.note);
    }
    os << "}";
  }
  os << (rep.results.empty() ? "],\n" : "\n  ],\n");
  os << "  \"summary\": {\"pass\": " << rep.count(Status::Pass) << ", \"fail\": " << rep.count(Status::Fail)
     << ", \"skip\": " << rep.count(Status::Skipped) << "},\n";
  os << "  \"error\": " << (rep.error.empty() ? "null" : json_string(rep.error)) << ",\n";
  os << "  \"exit_code\": " << rep.exit_code << "\n}\n";
  return os.str();
}

inline std::string to_text(const RunReport& rep) {
  std::ostringstream os;
  char buf[256];
  os << "example: " << rep.example << "  (d eta convention " << to_string(rep.d_eta) << ", seed " << rep.config.seed
     << ", tol " << rep.config.tol << ")\n";
  if (rep.classification) os << "class:   " << describe(*rep.classification) << "\n";
  if (!rep.error.empty()) os << "error:   " << rep.error << "\n";
  std::string suite;
  for (const auto& r : rep.results) {
    if (r.suite != suite) {
      suite = r.suite;
      os << "\n[" << suite << "]\n";
    }
    const char* tag = r.status == Status::Pass ? "PASS" : (r.status == Status::Fail ? "FAIL" : "SKIP");
    if (r.status == Status::Skipped) {
      std::snprintf(buf, sizeof buf, "  %s  %-28s", tag, r.id.c_str());
      os << buf << "  " << r.note << "\n";
    } else if (r.equivalence) {
      std::snprintf(buf, sizeof buf, "  %s  %-28s  lhs %.3e  rhs %.3e", tag, r.id.c_str(), r.lhs_max, r.rhs_max);
      os << buf << "  " << r.note << "\n";
    } else {
      std::snprintf(buf, sizeof buf, "  %s  %-28s  max %.3e  mean %.3e", tag, r.id.c_str(), r.max_residual,
                    r.mean_residual);
      os << buf;
      if (!r.note.empty()) os << "  " << r.note;
      os << "\n";
    }
  }
  os << "\n" << rep.count(Status::Pass) << " passed, " << rep.count(Status::Fail) << " failed, "
     << rep.count(Status::Skipped) << " skipped\n";
  return os.str();
}

}  // namespace pcm
