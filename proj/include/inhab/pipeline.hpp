// End-to-end verification workflows: run the machine per width, synthesize a
// witness from the accepting run, and re-check it against tau_star. Used by
// the CLI `verify` subcommand and by the integration tests.
#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "inhab/encoder.hpp"
#include "inhab/machines.hpp"
#include "inhab/witness.hpp"

namespace inhab {

struct VerifyReport {
  bool success = false;
  int width = 0;                   // first accepting width, if any
  std::optional<Term> witness;
  bool witness_checked = false;
  int derivation_length = 0;       // trace steps / rewrite steps
  std::vector<std::string> lines;  // per-width progress, printable
};

// Widths below 3 are not representable by the expansion phase; by tape-width
// monotonicity this loses no machines.
inline VerifyReport pipeline_verify_tm(const TMSpec& spec, int max_width,
                                       std::optional<long long> budget = {}) {
  spec.validate();
  EncodingBundle bundle = encode_tau_star_tm(spec);
  VerifyReport report;
  for (int n = 3; n <= max_width; ++n) {
    long long steps = budget ? *budget : default_step_budget(spec, n);
    RunResult r = tm_run(spec, initial_config(spec, n), steps);
    if (std::holds_alternative<Trace>(r)) {
      const Trace& trace = std::get<Trace>(r);
      WitnessReport w = witness_report_tm(bundle, spec, trace);
      report.success = true;
      report.width = n;
      report.witness = w.term;
      report.witness_checked = w.checked;
      report.derivation_length = static_cast<int>(trace.steps.size());
      report.lines.push_back("width " + std::to_string(n) + ": accepting in " +
                             std::to_string(trace.steps.size()) +
                             " steps; witness " +
                             (w.checked ? "checked" : "FAILED CHECK"));
      return report;
    }
    report.lines.push_back(
        "width " + std::to_string(n) + ": " +
        (std::holds_alternative<Rejected>(r) ? "rejected (leaves the window)"
                                             : "no acceptance within budget"));
  }
  return report;
}

inline VerifyReport pipeline_verify_ssts(const SSTS& R, int max_width,
                                         std::optional<long long> bound = {}) {
  R.validate();
  EncodingBundle bundle = encode_ssts(R);
  VerifyReport report;
  for (int n = 3; n <= max_width; ++n) {
    long long states = bound ? *bound : default_state_bound(R, n);
    auto d = ssts_reach(R, n, states);
    if (d) {
      WitnessReport w = witness_report_ssts(bundle, R, *d);
      report.success = true;
      report.width = n;
      report.witness = w.term;
      report.witness_checked = w.checked;
      report.derivation_length = static_cast<int>(d->steps.size());
      report.lines.push_back("width " + std::to_string(n) + ": 0^n ->> 1^n in " +
                             std::to_string(d->steps.size()) +
                             " steps; witness " +
                             (w.checked ? "checked" : "FAILED CHECK"));
      return report;
    }
    report.lines.push_back("width " + std::to_string(n) + ": exhausted");
  }
  return report;
}

}  // namespace inhab
