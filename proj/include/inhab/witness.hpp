// Constructive directions of the reduction: turn an accepting machine trace
// or a rewrite derivation into an inhabitant term. The inner witness nests
// one transition-variable application per step; the outer witness wraps it
// in the binder prefix of tau_star, the expansion applications, and the
// initialization application.
#pragma once

#include <string>
#include <vector>

#include "inhab/checker.hpp"
#include "inhab/encoder.hpp"
#include "inhab/machines.hpp"
#include "inhab/terms.hpp"

namespace inhab {

struct WitnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WitnessReport {
  Term term;
  int width = 0;
  std::vector<Judgment> judgments;
  bool checked = false;
};

namespace detail {

inline std::size_t transition_index(const EncodingBundle& b,
                                    const std::string& label) {
  for (std::size_t i = 0; i < b.transition_order.size(); ++i) {
    if (b.transition_order[i] == label) return i;
  }
  throw WitnessError("transition not in encoding: " + label);
}

}  // namespace detail

// M = x_t1 y_(p1) (x_t2 y_(p2) (... x_f)), one application per trace step:
// a right move at position p contributes x_t y_p, a left move x_t y_{p-1}.
inline Term inner_witness_tm(const EncodingBundle& b, const TMSpec& spec,
                             const Trace& trace) {
  if (!replay_trace(spec, trace))
    throw WitnessError("trace does not replay to an accepting configuration");
  Term acc = Term::var(b.var_final);
  for (std::size_t i = trace.steps.size(); i-- > 0;) {
    const Transition& t = trace.steps[i];
    const Config& before = trace.configs[i];
    int y_index = t.move > 0 ? before.pos : before.pos - 1;
    if (y_index < 1 || y_index > static_cast<int>(trace.configs[0].tape.size()) - 1)
      throw WitnessError("step leaves the tape window");
    Term head = Term::var(b.var_t[detail::transition_index(b, t.label())]);
    acc = Term::app(Term::app(head, Term::var(y_var(y_index))), acc);
  }
  return acc;
}

namespace detail {

// \x_0. \x_s. \x_final. \x_t... \y_1.
//   x_s (\y_2. ... x_s (\y_{n-2}. x_0 (\y_{n-1}. inner)) ...)
// with exactly n-3 expansion applications.
inline Term outer_wrap(const EncodingBundle& b, int n, const Term& inner) {
  if (n < 3) throw WitnessError("witness width must be >= 3");
  Term body = Term::app(Term::var(b.var_0),
                        Term::abs(y_var(n - 1), inner));
  for (int j = n - 2; j >= 2; --j) {
    body = Term::app(Term::var(b.var_star), Term::abs(y_var(j), body));
  }
  Term out = Term::abs(y_var(1), body);
  for (std::size_t i = b.var_t.size(); i-- > 0;)
    out = Term::abs(b.var_t[i], out);
  out = Term::abs(b.var_final, out);
  out = Term::abs(b.var_star, out);
  out = Term::abs(b.var_0, out);
  return out;
}

}  // namespace detail

inline Term outer_witness_tm(const EncodingBundle& b, int n,
                             const Term& inner) {
  if (b.kind != EncodingKind::TuringMachine)
    throw WitnessError("bundle is not a Turing machine encoding");
  return detail::outer_wrap(b, n, inner);
}

// Full SSTS witness: outer wrapper around one x_t y_p application per
// derivation step, terminated by x_1.
inline Term witness_ssts(const EncodingBundle& b, const SSTS& R,
                         const SstsDerivation& d) {
  if (b.kind != EncodingKind::SemiThue)
    throw WitnessError("bundle is not a semi-Thue encoding");
  int n = static_cast<int>(d.start.size());
  if (n < 3) throw WitnessError("witness width must be >= 3");
  if (!(d.start == uniform_word("0", n)) ||
      !(d.final_word() == uniform_word("1", n)))
    throw WitnessError("derivation must rewrite 0^n to 1^n");
  if (!replay_derivation(R, d))
    throw WitnessError("derivation does not replay");
  Term acc = Term::var(b.var_final);
  for (std::size_t i = d.steps.size(); i-- > 0;) {
    const DerivationStep& step = d.steps[i];
    Term head =
        Term::var(b.var_t[detail::transition_index(b, step.rule.label())]);
    acc = Term::app(Term::app(head, Term::var(y_var(step.pos))), acc);
  }
  return detail::outer_wrap(b, n, acc);
}

// Convenience: synthesize and check the full closed witness for an
// accepting run at the given width. Runs accepting below the minimum
// representable width are re-run at width 3 first; by tape-width
// monotonicity the machine still accepts there.
inline WitnessReport witness_report_tm(const EncodingBundle& b,
                                       const TMSpec& spec, Trace trace) {
  int n = static_cast<int>(trace.configs.front().tape.size());
  if (n < 3) {
    Config start = trace.configs.front();
    start.tape.resize(3, kBlank);
    RunResult r = tm_run(spec, start, default_step_budget(spec, 3));
    if (!std::holds_alternative<Trace>(r))
      throw WitnessError("width-3 re-run of a narrow accepting trace failed");
    trace = std::get<Trace>(r);
    n = 3;
  }
  Term inner = inner_witness_tm(b, spec, trace);
  Term outer = outer_witness_tm(b, n, inner);
  WitnessReport report{outer, n, {Judgment{Context{}, b.tau_star}}, false};
  report.checked = check(Context{}, outer, b.tau_star);
  return report;
}

inline WitnessReport witness_report_ssts(const EncodingBundle& b,
                                         const SSTS& R,
                                         const SstsDerivation& d) {
  Term outer = witness_ssts(b, R, d);
  WitnessReport report{outer, static_cast<int>(d.start.size()),
                       {Judgment{Context{}, b.tau_star}}, false};
  report.checked = check(Context{}, outer, b.tau_star);
  return report;
}

}  // namespace inhab
