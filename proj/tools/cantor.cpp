// Batch front-end: loads JSON spec files, runs one operation per invocation,
// writes a deterministic JSON or CSV report (run metadata goes to a sidecar).

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "cantor/json_io.hpp"

namespace {

using namespace cantor;

struct Output {
  std::string path;    // empty = stdout
  std::string format;  // "json" | "csv"

  void write(const std::string& body, const std::vector<std::string>& argv_echo) const {
    if (path.empty()) {
      std::cout << body;
      if (!body.empty() && body.back() != '\n') std::cout << "\n";
      return;
    }
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoError, "cannot write " + path);
    out << body;
    if (!body.empty() && body.back() != '\n') out << "\n";
    // run metadata lives beside the report so report bytes stay reproducible
    std::ofstream meta(path + ".meta.json");
    if (meta) {
      Json m;
      m["argv"] = argv_echo;
      auto now = std::chrono::system_clock::now();
      m["written_at_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                                 now.time_since_epoch())
                                 .count();
      meta << m.dump(2) << "\n";
    }
  }

  void emit_json(const Json& j, const std::vector<std::string>& argv_echo) const {
    write(j.dump(2), argv_echo);
  }
};

Int int_flag(const std::string& s, const char* what) {
  try {
    return parse_int(s);
  } catch (const Error&) {
    raise(ErrorCode::BadArgument, std::string("bad integer for ") + what + ": " + s);
  }
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NoWitness:
    case ErrorCode::HypothesisViolated:
    case ErrorCode::SearchExhausted:
    case ErrorCode::WitnessInvalid:
      return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mixed-radix products, approximants and generalized Thue-Morse words"};
  app.require_subcommand(1);
  app.fallthrough();  // --spec/--out/--format may follow the subcommand

  std::string spec_path, out_path, format = "json";
  app.add_option("--spec", spec_path, "input spec file (JSON)");
  app.add_option("--out", out_path, "report file (default: stdout)");
  app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  std::string n_str = "0", m_str = "0", l_str = "1", N_str = "0", b_str = "2", c_str = "2";
  std::string cap_str = "1000000", epsilon_str = "1/100", target_str;
  std::string variant = "second", value_map = "unit-root", base_str = "2";
  std::int64_t tail = 0, level = 0, blocks = 4, window = 1, depth = 12;
  std::int64_t from = 0, to = 0, n_max = 4, m_max = 64, expand_N = 16;
  std::int64_t t_gap = 0, max_period = 64, horizon = 4096, word_level = 4, wrap_level = -1;

  auto* digits = app.add_subcommand("digits", "digit vector of n in the radix spec");
  digits->add_option("--n", n_str)->required();

  auto* sparse = app.add_subcommand("sparse-multiple", "least x whose x*l has the sparse pattern");
  sparse->add_option("--l", l_str)->required();
  sparse->add_option("--t", t_gap)->required();
  sparse->add_option("--cap", cap_str);

  auto* expand_cmd = app.add_subcommand("expand", "first N coefficients of f_0");
  expand_cmd->add_option("--N", expand_N)->required();

  auto* tail_expand = app.add_subcommand("tail-expand", "first N coefficients of a tail f_n");
  tail_expand->add_option("--n", tail)->required();
  tail_expand->add_option("--N", expand_N)->required();

  auto* copy = app.add_subcommand("copy-structure", "block scalars at one level");
  copy->add_option("--n", level)->required();
  copy->add_option("--blocks", blocks)->required();

  auto* eval = app.add_subcommand("evaluate", "enclosure of f_0(1/b)");
  eval->add_option("--b", b_str)->required();
  eval->add_option("--target", target_str);

  auto* bounded = app.add_subcommand("bounded-report", "sup |a_n(m)|/|a_0(m)| over a window");
  bounded->add_option("--n-max", n_max);
  bounded->add_option("--m-max", m_max);

  auto* witness_cmd = app.add_subcommand("witness", "least repetition witness of a tail");
  witness_cmd->add_option("--n", tail)->required();
  witness_cmd->add_option("--window", window)->required();

  auto* approx = app.add_subcommand("approximant", "one-pole approximant of a tail");
  approx->add_option("--n", tail)->required();
  approx->add_option("--window", window)->required();

  auto* thm21 = app.add_subcommand("check-thm21", "height inequality per tail");
  thm21->add_option("--b", b_str)->required();
  thm21->add_option("--epsilon", epsilon_str)->required();
  thm21->add_option("--variant", variant)->check(CLI::IsMember({"first", "second"}));
  thm21->add_option("--n-from", from)->required();
  thm21->add_option("--n-to", to)->required();
  thm21->add_option("--window", window);

  auto* prop23 = app.add_subcommand("check-prop23", "binary-support decay inequality per index");
  prop23->add_option("--b", b_str)->required();
  prop23->add_option("--c", c_str)->required();
  prop23->add_option("--epsilon", epsilon_str)->required();
  prop23->add_option("--variant", variant)->check(CLI::IsMember({"main", "remark"}));
  prop23->add_option("--y-from", from)->required();
  prop23->add_option("--y-to", to)->required();

  auto* cor22 = app.add_subcommand("cor22", "emit the factorial-support spec");
  cor22->add_option("--base", base_str);

  auto* schmidt = app.add_subcommand("schmidt-report", "integer triples and linear forms");
  schmidt->add_option("--b", b_str)->required();
  schmidt->add_option("--n-from", from)->required();
  schmidt->add_option("--n-to", to)->required();
  schmidt->add_option("--window", window);

  auto* tm_build = app.add_subcommand("tm-build", "prefix word A_n");
  tm_build->add_option("--n", word_level)->required();
  tm_build->add_option("--wrap", wrap_level, "newline after every Q_wrap letters");

  auto* tm_letter_cmd = app.add_subcommand("tm-letter", "single letter by closed form");
  tm_letter_cmd->add_option("--m", m_str)->required();

  auto* tm_period = app.add_subcommand("tm-period", "ultimate-periodicity criterion");
  tm_period->add_option("--depth", depth);

  auto* tm_value = app.add_subcommand("tm-subseq-value", "value of the subsequence series");
  tm_value->add_option("--N", N_str);
  tm_value->add_option("--l", l_str);
  tm_value->add_option("--b", b_str)->required();
  tm_value->add_option("--target", target_str);
  tm_value->add_option("--value-map", value_map)->check(CLI::IsMember({"unit-root", "digit"}));

  auto* tm_scan = app.add_subcommand("tm-subseq-scan", "periodicity scan of a subsequence");
  tm_scan->add_option("--N", N_str);
  tm_scan->add_option("--l", l_str);
  tm_scan->add_option("--max-period", max_period);
  tm_scan->add_option("--horizon", horizon);

  auto* tm_to_prod = app.add_subcommand("tm-to-product", "unit-root product of the word");

  CLI11_PARSE(app, argc, argv);

  Output out{out_path, format};
  std::vector<std::string> argv_echo(argv, argv + argc);

  auto need_spec = [&]() -> Json {
    if (spec_path.empty()) raise(ErrorCode::BadArgument, "--spec is required for this command");
    return load_json_file(spec_path);
  };

  try {
    if (*digits) {
      RadixSequence radix = radix_from_json(need_spec());
      Int n = int_flag(n_str, "--n");
      auto d = to_digits(n, radix);
      if (format == "csv") {
        std::string body = "y,s\n";
        for (const auto& dg : d) body += std::to_string(dg.pos) + "," + std::to_string(dg.value) + "\n";
        out.write(body, argv_echo);
      } else {
        Json rep;
        rep["n"] = n.str();
        Json arr = Json::array();
        for (const auto& dg : d) arr.push_back(Json::array({dg.pos, dg.value}));
        rep["digits"] = arr;
        out.emit_json(rep, argv_echo);
      }
    } else if (*sparse) {
      RadixSequence radix = radix_from_json(need_spec());
      Int l = int_flag(l_str, "--l");
      Int x = find_sparse_multiple(l, static_cast<std::size_t>(t_gap), radix,
                                   int_flag(cap_str, "--cap"));
      Json rep;
      rep["l"] = l.str();
      rep["t"] = t_gap;
      rep["x"] = x.str();
      rep["xl"] = Int(x * l).str();
      Json arr = Json::array();
      for (const auto& dg : to_digits(x * l, radix)) arr.push_back(Json::array({dg.pos, dg.value}));
      rep["digits"] = arr;
      out.emit_json(rep, argv_echo);
    } else if (*expand_cmd || *tail_expand) {
      ProductSpec spec = product_spec_from_json(need_spec());
      std::size_t n = *expand_cmd ? 0 : static_cast<std::size_t>(tail);
      auto coeffs = expand(spec, n, static_cast<std::size_t>(expand_N));
      if (format == "csv") {
        out.write(coefficients_to_csv(coeffs), argv_echo);
      } else {
        Json rep;
        rep["tail"] = n;
        rep["coeffs"] = coefficients_to_json(coeffs);
        out.emit_json(rep, argv_echo);
      }
    } else if (*copy) {
      ProductSpec spec = product_spec_from_json(need_spec());
      auto cs = copy_structure(spec, static_cast<std::size_t>(level),
                               static_cast<std::size_t>(blocks));
      out.emit_json(copy_structure_to_json(cs, static_cast<std::size_t>(level),
                                           spec.radix().weight(static_cast<std::size_t>(level))),
                    argv_echo);
    } else if (*eval) {
      ProductSpec spec = product_spec_from_json(need_spec());
      Rat target = target_str.empty() ? Rat(1, ipow(10, 30)) : parse_rat(target_str);
      auto iv = evaluate(spec, int_flag(b_str, "--b"), target);
      Json rep;
      rep["b"] = b_str;
      rep["lo"] = rat_str(iv.lo);
      rep["hi"] = rat_str(iv.hi);
      out.emit_json(rep, argv_echo);
    } else if (*bounded) {
      ProductSpec spec = product_spec_from_json(need_spec());
      auto rep = boundedness_report(spec, static_cast<std::size_t>(n_max),
                                    static_cast<std::size_t>(m_max));
      out.emit_json(boundedness_to_json(rep), argv_echo);
    } else if (*witness_cmd) {
      ProductSpec spec = product_spec_from_json(need_spec());
      auto w = find_repetition(spec, static_cast<std::size_t>(tail), window);
      out.emit_json(witness_to_json(w), argv_echo);
    } else if (*approx) {
      ProductSpec spec = product_spec_from_json(need_spec());
      auto w = find_repetition(spec, static_cast<std::size_t>(tail), window);
      out.emit_json(approximant_to_json(build_approximant(spec, w)), argv_echo);
    } else if (*thm21) {
      ProductSpec spec = product_spec_from_json(need_spec());
      auto rep = check_theorem21(spec, int_flag(b_str, "--b"), parse_rat(epsilon_str),
                                 variant == "first" ? IneqVariant::Thm21First
                                                    : IneqVariant::Thm21Second,
                                 from, to, window);
      out.emit_json(inequality_report_to_json(rep), argv_echo);
    } else if (*prop23) {
      Json j = need_spec();
      if (!j.contains("f") || !j.contains("F"))
        raise(ErrorCode::SpecParse, "prop23 spec needs fields \"f\" and \"F\"");
      IntSeq f = intseq_from_json(j["f"]);
      IntSeq F = intseq_from_json(j["F"]);
      auto rep = check_prop23(f, F, int_flag(b_str, "--b"), int_flag(c_str, "--c"),
                              parse_rat(epsilon_str), variant == "remark", from, to);
      out.emit_json(inequality_report_to_json(rep), argv_echo);
    } else if (*cor22) {
      out.emit_json(product_spec_to_json(corollary22_spec(int_flag(base_str, "--base"))),
                    argv_echo);
    } else if (*schmidt) {
      ProductSpec spec = product_spec_from_json(need_spec());
      auto rows = schmidt_triples(spec, int_flag(b_str, "--b"), from, to, window);
      if (format == "csv") {
        out.write(schmidt_to_csv(rows), argv_echo);
      } else {
        out.emit_json(schmidt_to_json(rows), argv_echo);
      }
    } else if (*tm_build) {
      TMSpec spec = tm_spec_from_json(need_spec());
      Word w = build_word(spec, static_cast<std::size_t>(word_level));
      std::size_t wrap = w.letters.size();
      if (wrap_level >= 0) {
        Int q = spec.radix().weight(static_cast<std::size_t>(wrap_level));
        wrap = static_cast<std::size_t>(q);
      }
      if (format == "csv" || wrap_level >= 0) {
        std::string body;
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
          body += std::to_string(w.letters[i]);
          body += (i + 1) % wrap == 0 ? '\n' : ' ';
        }
        out.write(body, argv_echo);
      } else {
        Json rep;
        rep["level"] = w.level;
        rep["letters"] = w.letters;
        out.emit_json(rep, argv_echo);
      }
    } else if (*tm_letter_cmd) {
      TMSpec spec = tm_spec_from_json(need_spec());
      Int m = int_flag(m_str, "--m");
      Json rep;
      rep["m"] = m.str();
      rep["letter"] = tm_letter(spec, m);
      out.emit_json(rep, argv_echo);
    } else if (*tm_period) {
      TMSpec spec = tm_spec_from_json(need_spec());
      out.emit_json(periodicity_to_json(
                        periodicity_witness(spec, static_cast<std::size_t>(depth))),
                    argv_echo);
    } else if (*tm_value) {
      TMSpec spec = tm_spec_from_json(need_spec());
      Rat target = target_str.empty() ? Rat(1, ipow(10, 20)) : parse_rat(target_str);
      auto v = subsequence_value(spec,
                                 value_map == "digit" ? ValueMap::Digit : ValueMap::UnitRoot,
                                 int_flag(N_str, "--N"), int_flag(l_str, "--l"),
                                 int_flag(b_str, "--b"), target);
      out.emit_json(cyclotomic_to_json(v, spec.L()), argv_echo);
    } else if (*tm_scan) {
      TMSpec spec = tm_spec_from_json(need_spec());
      auto r = subsequence_period_scan(spec, int_flag(N_str, "--N"), int_flag(l_str, "--l"),
                                       static_cast<std::size_t>(max_period),
                                       static_cast<std::size_t>(horizon));
      out.emit_json(period_scan_to_json(r), argv_echo);
    } else if (*tm_to_prod) {
      TMSpec spec = tm_spec_from_json(need_spec());
      out.emit_json(product_spec_to_json(to_product_spec(spec)), argv_echo);
    }
  } catch (const Error& e) {
    Json rep;
    rep["error"] = Json{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    out.emit_json(rep, argv_echo);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    Json rep;
    rep["error"] = Json{{"code", "INTERNAL"}, {"message", e.what()}};
    out.emit_json(rep, argv_echo);
    return 1;
  }
  return 0;
}
