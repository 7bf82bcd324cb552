#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catent/json_io.hpp"
#include "catent/verify.hpp"

namespace catent {

// Exit codes: 0 success, 1 verify-suite failure, 2 input error, 3 generator
// validation, 4 precondition violation, 5 internal theorem-violation.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

struct RunConfig {
  std::string command;
  std::string suite = "all";        // verify only
  std::string input_path;           // empty: read the in-process stdin text
  std::string output_path;          // empty: return on stdout
  Rat tolerance = Rat(1, 1000000000);
  int n_max = 200;
};

namespace detail {

inline const char* usage() {
  return "usage: cat-entropy <invariants|entropy|factorize|verify [suite]>"
         " [--input FILE] [--tol P/Q] [--n-max N] [--out FILE]\n";
}

inline RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::size_t i = 0;
  if (i < args.size() && !args[i].empty() && args[i][0] != '-') cfg.command = args[i++];
  if (cfg.command.empty()) throw error(errc::input, "missing command");
  if (cfg.command != "invariants" && cfg.command != "entropy" && cfg.command != "factorize" &&
      cfg.command != "verify")
    throw error(errc::input, "unknown command: " + cfg.command);
  if (cfg.command == "verify" && i < args.size() && !args[i].empty() && args[i][0] != '-')
    cfg.suite = args[i++];
  for (; i < args.size(); ++i) {
    const std::string& flag = args[i];
    const auto value = [&]() -> const std::string& {
      if (i + 1 >= args.size()) throw error(errc::input, flag + ": missing value");
      return args[++i];
    };
    if (flag == "--input") cfg.input_path = value();
    else if (flag == "--out") cfg.output_path = value();
    else if (flag == "--tol") {
      cfg.tolerance = rat_from_string(value());
      if (cfg.tolerance <= 0) throw error(errc::input, "--tol: must be positive");
    } else if (flag == "--n-max") {
      try {
        cfg.n_max = std::stoi(value());
      } catch (const std::exception&) {
        throw error(errc::input, "--n-max: expected an integer");
      }
      if (cfg.n_max < 1) throw error(errc::input, "--n-max: must be >= 1");
    } else {
      throw error(errc::input, "unknown flag: " + flag);
    }
  }
  return cfg;
}

inline Json load_input(const RunConfig& cfg, const std::string& stdin_text) {
  std::string text;
  if (!cfg.input_path.empty()) {
    std::ifstream in(cfg.input_path);
    if (!in) throw error(errc::input, "cannot read input file: " + cfg.input_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    text = stdin_text;
  }
  if (text.empty()) throw error(errc::input, "no input JSON provided");
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::input, std::string("malformed JSON: ") + e.what());
  }
}

inline std::string dispatch(const RunConfig& cfg, const std::string& stdin_text, int& code) {
  if (cfg.command == "invariants") {
    const WeightData w = weights_from_json(load_input(cfg, stdin_text));
    return render(json_of_invariants(w));
  }
  if (cfg.command == "entropy") {
    const Json input = load_input(cfg, stdin_text);
    const WordContext ctx = context_from_json(input);
    const Json letters = input.contains("word") ? input["word"] : Json::array();
    const std::vector<Generator> word = word_from_json(ctx, letters);
    if (const WeightData* w = std::get_if<WeightData>(&ctx)) {
      const EntropyReport report = entropy(*w, word, cfg.tolerance);
      return render(json_of_report(report, word_to_endo(*w, word).matrix));
    }
    const DynkinType& d = std::get<DynkinType>(ctx);
    const EntropyReport report = entropy(d, word, cfg.tolerance);
    return render(json_of_report(report, word_to_endo(d, word).matrix));
  }
  if (cfg.command == "factorize") {
    const Json input = load_input(cfg, stdin_text);
    const Json& entries = input.is_object() && input.contains("matrix") ? input["matrix"] : input;
    const IntMatrix m = matrix_from_json(entries, "matrix");
    const SL2Matrix s = SL2Matrix::from_matrix(m);
    const PositiveWord word = positive_factorize(s);
    if (reassemble(word) != s)
      throw error(errc::internal, "factorization does not reassemble to the input");
    return render(json_of_word(word));
  }
  // verify
  const SuiteResult result = run_suite(cfg.suite, cfg.n_max, cfg.tolerance);
  Json out;
  out["suite"] = result.suite;
  out["passed"] = result.passed;
  Json failures = Json::array();
  for (const SuiteFailure& f : result.failures)
    failures.push_back(Json{{"case", f.what}, {"detail", f.detail}});
  out["failures"] = std::move(failures);
  if (!result.passed) code = 1;
  return render(out);
}

}  // namespace detail

// In-process entry point behind the binary: parses flags, dispatches, and maps
// thrown error kinds onto the exit-code contract.  stdin_text stands in for
// the process stdin so runs are reproducible under test.
inline CliResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  CliResult result;
  try {
    const RunConfig cfg = detail::parse_args(args);
    std::string payload = detail::dispatch(cfg, stdin_text, result.code);
    if (!cfg.output_path.empty()) {
      std::ofstream out(cfg.output_path, std::ios::binary);
      if (!out) throw error(errc::input, "cannot write output file: " + cfg.output_path);
      out << payload;
    } else {
      result.out = std::move(payload);
    }
  } catch (const error& e) {
    switch (e.kind()) {
      case errc::input: result.code = 2; break;
      case errc::generator: result.code = 3; break;
      case errc::precondition: result.code = 4; break;
      case errc::internal: result.code = 5; break;
    }
    result.err = std::string("error: ") + e.what() + "\n";
    if (result.code == 2) result.err += detail::usage();
  } catch (const std::exception& e) {
    result.code = 5;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace catent
