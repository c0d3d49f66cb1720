// inhab: encode machines and rewriting systems into inhabitation problems,
// simulate them, synthesize and check witness terms, and run bounded proof
// search. Results go to stdout, diagnostics and the run manifest to stderr.
//
// Exit codes: 0 success/found, 1 rejected/exhausted, 2 input errors.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "inhab/checker.hpp"
#include "inhab/encoder.hpp"
#include "inhab/machines.hpp"
#include "inhab/pipeline.hpp"
#include "inhab/search.hpp"
#include "inhab/witness.hpp"

namespace {

using namespace inhab;

struct Manifest {
  std::string subcommand;
  std::string input_hash = "-";
  std::string parameters;
  std::string outcome = "error";
  std::chrono::steady_clock::time_point started =
      std::chrono::steady_clock::now();

  ~Manifest() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    std::cerr << "manifest: cmd=" << subcommand << " input=" << input_hash
              << (parameters.empty() ? "" : " " + parameters)
              << " outcome=" << outcome << " wall_ms=" << ms << "\n";
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string file_hash(const std::string& contents) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(contents)));
  return std::string(buf);
}

// TM files start with a symbols: directive, SSTS files with alphabet:.
bool looks_like_tm(const std::string& contents) {
  std::istringstream in(contents);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (ls >> tok) return tok != "alphabet:";
  }
  return true;
}

void print_bundle(const EncodingBundle& b) {
  std::cout << "tau_star: " << print_type(b.tau_star) << "\n";
  std::cout << "sigma_0: " << print_type(b.sigma_0) << "\n";
  std::cout << "sigma_star: " << print_type(b.sigma_star) << "\n";
  std::cout << (b.kind == EncodingKind::TuringMachine ? "sigma_f: "
                                                      : "sigma_1: ")
            << print_type(b.sigma_final) << "\n";
  for (std::size_t i = 0; i < b.sigma_t.size(); ++i) {
    std::cout << "sigma_t[" << b.transition_order[i]
              << "]: " << print_type(b.sigma_t[i]) << "\n";
  }
  std::cout << "atoms:";
  for (const auto& a : b.atom_universe) std::cout << " " << a;
  std::cout << "\n";
  std::cout << "transition order:";
  for (std::size_t i = 0; i < b.transition_order.size(); ++i)
    std::cout << (i ? "; " : " ") << b.var_t[i] << " = "
              << b.transition_order[i];
  std::cout << "\n";
}

Context parse_context_file(const std::string& contents) {
  std::map<std::string, Type> bindings;
  std::istringstream in(contents);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'name : type'", lineno, 1);
    std::istringstream name_in(line.substr(0, colon));
    std::string name;
    name_in >> name;
    std::string extra;
    if (name.empty() || (name_in >> extra))
      throw ParseError("expected one variable name before ':'", lineno, 1);
    try {
      bindings[name] = parse_type(line.substr(colon + 1));
    } catch (const ParseError& e) {
      throw ParseError("in binding for '" + name + "': " + e.what(), lineno,
                       colon + 1 + e.column);
    }
  }
  return Context(bindings);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"intersection type inhabitation workbench"};
  app.require_subcommand(1);

  // encode-tm / encode-ssts
  std::string encode_file;
  bool tau_only = false;
  auto* enc_tm = app.add_subcommand("encode-tm",
                                    "encode a Turing machine as tau_star");
  enc_tm->add_option("spec-file", encode_file)->required();
  enc_tm->add_flag("--tau-only", tau_only, "print only the goal type");
  auto* enc_ssts = app.add_subcommand(
      "encode-ssts", "encode a simple semi-Thue system as tau_star");
  enc_ssts->add_option("spec-file", encode_file)->required();
  enc_ssts->add_flag("--tau-only", tau_only, "print only the goal type");

  // simulate-tm / rewrite-ssts
  std::string sim_file;
  int width = 3;
  std::optional<long long> budget;
  auto* sim = app.add_subcommand("simulate-tm",
                                 "run a machine inside a fixed tape window");
  sim->add_option("spec-file", sim_file)->required();
  sim->add_option("--width", width, "tape width")->required();
  sim->add_option("--steps", budget, "step budget (default: exact)");
  auto* rew = app.add_subcommand("rewrite-ssts",
                                 "search 0^n ->> 1^n at a fixed word length");
  rew->add_option("spec-file", sim_file)->required();
  rew->add_option("--width", width, "word length")->required();
  rew->add_option("--steps", budget, "explored-state bound (default: exact)");

  // synthesize
  std::string syn_tm, syn_ssts;
  int syn_width = 3;
  bool with_transcript = false;
  auto* syn = app.add_subcommand(
      "synthesize", "turn an accepting run into a checked witness term");
  auto* syn_tm_opt = syn->add_option("--from-tm", syn_tm, "TM spec file");
  auto* syn_ssts_opt =
      syn->add_option("--from-ssts", syn_ssts, "SSTS spec file");
  syn_tm_opt->excludes(syn_ssts_opt);
  syn->add_option("--width", syn_width, "tape width / word length")->required();
  syn->add_flag("--transcript", with_transcript, "print checker transcripts");

  // check
  std::string ctx_file, term_text, goal_text;
  auto* chk = app.add_subcommand("check",
                                 "decide Gamma |- M : tau for a normal term");
  chk->add_option("--ctx", ctx_file, "context file (name : type per line)");
  chk->add_option("--term", term_text)->required();
  chk->add_option("--goal", goal_text)->required();
  chk->add_flag("--transcript", with_transcript);

  // search
  std::string search_type, search_tm, search_ssts;
  int depth = 6;
  std::optional<int> search_width;
  std::optional<long long> max_branch;
  auto* sea = app.add_subcommand("search", "bounded inhabitation search");
  sea->add_option("type", search_type, "goal type text");
  auto* sea_tm = sea->add_option("--from-tm", search_tm, "TM spec file");
  auto* sea_ssts = sea->add_option("--from-ssts", search_ssts, "SSTS spec file");
  sea_tm->excludes(sea_ssts);
  sea->add_option("--depth", depth, "term height bound")->required();
  sea->add_option("--width", search_width,
                  "search the width-n judgment family instead of tau_star");
  sea->add_option("--max-branch", max_branch, "cap on APPLY combinations");
  sea->add_flag("--transcript", with_transcript);

  // verify
  std::string verify_file;
  int max_width = 5;
  auto* ver = app.add_subcommand(
      "verify", "machine acceptance end-to-end: run, synthesize, re-check");
  ver->add_option("spec-file", verify_file)->required();
  ver->add_option("--max-width", max_width, "largest width to try");
  ver->add_option("--steps", budget, "per-width budget (default: exact)");

  // rank
  std::string rank_type;
  auto* rnk = app.add_subcommand("rank", "rank/order/canonical form of a type");
  rnk->add_option("type", rank_type)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the usage message
    return code == 0 ? 0 : 2;
  }

  Manifest manifest;

  if (enc_tm->parsed() || enc_ssts->parsed()) {
    manifest.subcommand = enc_tm->parsed() ? "encode-tm" : "encode-ssts";
    std::string contents = read_file(encode_file);
    manifest.input_hash = file_hash(contents);
    EncodingBundle b = enc_tm->parsed()
                           ? encode_tau_star_tm(parse_tm_spec(contents))
                           : encode_ssts(parse_ssts_spec(contents));
    if (tau_only)
      std::cout << print_type(b.tau_star) << "\n";
    else
      print_bundle(b);
    manifest.outcome = "ok";
    return 0;
  }

  if (sim->parsed()) {
    manifest.subcommand = "simulate-tm";
    manifest.parameters = "width=" + std::to_string(width);
    std::string contents = read_file(sim_file);
    manifest.input_hash = file_hash(contents);
    TMSpec spec = parse_tm_spec(contents);
    long long steps = budget ? *budget : default_step_budget(spec, width);
    RunResult r = tm_run(spec, initial_config(spec, width), steps);
    if (std::holds_alternative<Trace>(r)) {
      for (const auto& c : std::get<Trace>(r).configs)
        std::cout << print_config(c) << "\n";
      std::cout << "ACCEPTING in " << std::get<Trace>(r).steps.size()
                << " steps\n";
      manifest.outcome = "accepting";
      return 0;
    }
    std::cout << (std::holds_alternative<Rejected>(r) ? "REJECTED"
                                                      : "BUDGET-EXHAUSTED")
              << "\n";
    manifest.outcome = "rejected";
    return 1;
  }

  if (rew->parsed()) {
    manifest.subcommand = "rewrite-ssts";
    manifest.parameters = "width=" + std::to_string(width);
    std::string contents = read_file(sim_file);
    manifest.input_hash = file_hash(contents);
    SSTS R = parse_ssts_spec(contents);
    long long states = budget ? *budget : default_state_bound(R, width);
    auto d = ssts_reach(R, width, states);
    if (d) {
      std::cout << print_word(d->start) << "\n";
      for (const auto& step : d->steps)
        std::cout << print_word(step.word) << "   # " << step.rule.label()
                  << " at " << step.pos << "\n";
      std::cout << "REACHED in " << d->steps.size() << " steps\n";
      manifest.outcome = "reached";
      return 0;
    }
    std::cout << "EXHAUSTED\n";
    manifest.outcome = "exhausted";
    return 1;
  }

  if (syn->parsed()) {
    manifest.subcommand = "synthesize";
    manifest.parameters = "width=" + std::to_string(syn_width);
    if (syn_tm.empty() == syn_ssts.empty())
      throw CLI::ValidationError("synthesize",
                                 "exactly one of --from-tm/--from-ssts");
    std::string contents = read_file(syn_tm.empty() ? syn_ssts : syn_tm);
    manifest.input_hash = file_hash(contents);
    std::optional<WitnessReport> report;
    EncodingBundle bundle;
    if (!syn_tm.empty()) {
      TMSpec spec = parse_tm_spec(contents);
      bundle = encode_tau_star_tm(spec);
      RunResult r = tm_run(spec, initial_config(spec, syn_width),
                           default_step_budget(spec, syn_width));
      if (std::holds_alternative<Trace>(r))
        report = witness_report_tm(bundle, spec, std::get<Trace>(r));
    } else {
      SSTS R = parse_ssts_spec(contents);
      bundle = encode_ssts(R);
      auto d = ssts_reach(R, syn_width, default_state_bound(R, syn_width));
      if (d) report = witness_report_ssts(bundle, R, *d);
    }
    if (!report) {
      std::cout << "NO ACCEPTING RUN at width " << syn_width << "\n";
      manifest.outcome = "no-run";
      return 1;
    }
    std::cout << "witness: " << print_term(report->term) << "\n";
    std::cout << "checked: " << (report->checked ? "yes" : "NO") << "\n";
    if (with_transcript && report->checked) {
      auto d = check_with_transcript(Context{}, report->term, bundle.tau_star);
      std::cout << transcript_text(*d);
    }
    manifest.outcome = report->checked ? "checked" : "check-failed";
    return report->checked ? 0 : 1;
  }

  if (chk->parsed()) {
    manifest.subcommand = "check";
    Context ctx;
    if (!ctx_file.empty()) {
      std::string contents = read_file(ctx_file);
      manifest.input_hash = file_hash(contents);
      ctx = parse_context_file(contents);
    }
    Term m = parse_term(term_text);
    Type goal = parse_type(goal_text);
    auto d = check_with_transcript(ctx, m, goal);
    if (d) {
      std::cout << "DERIVABLE\n";
      if (with_transcript) std::cout << transcript_text(*d);
      manifest.outcome = "derivable";
      return 0;
    }
    std::cout << "NOT DERIVABLE\n";
    manifest.outcome = "underivable";
    return 1;
  }

  if (sea->parsed()) {
    manifest.subcommand = "search";
    manifest.parameters = "depth=" + std::to_string(depth);
    SearchConfig cfg{depth, max_branch};
    std::vector<Judgment> judgments;
    if (!search_tm.empty() || !search_ssts.empty()) {
      std::string contents =
          read_file(search_tm.empty() ? search_ssts : search_tm);
      manifest.input_hash = file_hash(contents);
      EncodingBundle b;
      if (!search_tm.empty()) {
        TMSpec spec = parse_tm_spec(contents);
        b = encode_tau_star_tm(spec);
        if (search_width) {
          judgments =
              inner_judgments_tm(b, initial_config(spec, *search_width));
          manifest.parameters += " width=" + std::to_string(*search_width);
        } else {
          judgments = {Judgment{Context{}, b.tau_star}};
        }
      } else {
        SSTS R = parse_ssts_spec(contents);
        b = encode_ssts(R);
        if (search_width) {
          judgments = inner_judgments_ssts(b, *search_width);
          manifest.parameters += " width=" + std::to_string(*search_width);
        } else {
          judgments = {Judgment{Context{}, b.tau_star}};
        }
      }
    } else if (!search_type.empty()) {
      judgments = {Judgment{Context{}, parse_type(search_type)}};
    } else {
      throw CLI::ValidationError("search",
                                 "need a type or --from-tm/--from-ssts");
    }
    SearchResult r = inhabit_multi(judgments, cfg);
    if (r.found()) {
      std::cout << "found: " << print_term(*r.term) << "\n";
      if (with_transcript) {
        for (const auto& t : r.transcripts) std::cout << transcript_text(t);
      }
      manifest.outcome = "found";
      return 0;
    }
    std::cout << "EXHAUSTED at depth " << depth << "\n";
    manifest.outcome = "exhausted";
    return 1;
  }

  if (ver->parsed()) {
    manifest.subcommand = "verify";
    manifest.parameters = "max_width=" + std::to_string(max_width);
    std::string contents = read_file(verify_file);
    manifest.input_hash = file_hash(contents);
    VerifyReport report;
    if (looks_like_tm(contents)) {
      report = pipeline_verify_tm(parse_tm_spec(contents), max_width, budget);
    } else {
      report = pipeline_verify_ssts(parse_ssts_spec(contents), max_width, budget);
    }
    for (const auto& line : report.lines) std::cout << line << "\n";
    if (report.success) {
      std::cout << "SUCCESS at width " << report.width << "\n";
      std::cout << "witness: " << print_term(*report.witness) << "\n";
      std::cout << "witness "
                << (report.witness_checked ? "checked" : "FAILED CHECK")
                << "\n";
      manifest.outcome = report.witness_checked ? "verified" : "check-failed";
      return report.witness_checked ? 0 : 1;
    }
    std::cout << "NO ACCEPTANCE up to width " << max_width << "\n";
    manifest.outcome = "no-acceptance";
    return 1;
  }

  if (rnk->parsed()) {
    manifest.subcommand = "rank";
    Type t = parse_type(rank_type);
    std::cout << "canonical: " << print_type(t) << "\n";
    std::cout << "rank: " << rank(t) << "\n";
    std::cout << "order: " << order(t) << "\n";
    manifest.outcome = "ok";
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
