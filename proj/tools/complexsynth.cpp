// complexsynth: command-line front end.
//
// Exit codes: 0 ok, 1 invalid input, 2 budget exceeded, 3 verification failure.

#include "complexsynth/codec.hpp"
#include "complexsynth/io.hpp"
#include "complexsynth/rate.hpp"
#include "complexsynth/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace cs = complexsynth;
using cs::io::json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kBudget = 2, kVerify = 3 };

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", cs::round_half_up(x, 3));
  return buf;
}

std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Reads from `path`, or stdin when path is empty or "-".
template <class F> auto with_input(const std::string &path, F &&f) {
  if (path.empty() || path == "-")
    return f(std::cin);
  std::ifstream in(path);
  cs::detail::require(in.good(), "cannot open '" + path + "'");
  return f(in);
}

// --- rate ---------------------------------------------------------------------

struct RateArgs {
  bool table1 = false, table2 = false, divisors = false, bounds = false;
  int q = 0, w = 0;
  std::optional<double> alpha;
  std::vector<int> q_list{4, 8, 16, 64, 256};
  std::string format = "csv";
};

void emit_cells(const std::vector<cs::RateCell> &cells, const std::string &format, bool with_alpha) {
  if (format == "json") {
    json out = json::array();
    for (const auto &c : cells) {
      json row{{"q", c.q}, {"w", c.w}, {"f", c.value}};
      if (with_alpha)
        row["alpha_star"] = c.alpha_star ? json(*c.alpha_star) : json(nullptr);
      out.push_back(row);
    }
    std::cout << out.dump(2) << '\n';
    return;
  }
  std::cout << (with_alpha ? "q,w,f,alpha_star\n" : "q,w,f\n");
  for (const auto &c : cells) {
    std::cout << c.q << ',' << c.w << ',' << fixed3(c.value);
    if (with_alpha)
      std::cout << ',' << (c.alpha_star ? fixed3(*c.alpha_star) : "");
    std::cout << '\n';
  }
}

// The rate grid: rows q, columns w, cells "(f,alpha)", "---" above q.
void emit_table1_text(const std::vector<cs::RateCell> &cells) {
  const auto &axis = cs::table1_axis();
  std::cout << "q\\w";
  for (int w : axis)
    std::cout << '\t' << w;
  std::cout << '\n';
  for (int q : axis) {
    if (q < 2)
      continue;
    std::cout << q;
    for (int w : axis) {
      std::cout << '\t';
      auto it = std::find_if(cells.begin(), cells.end(), [&](const auto &c) { return c.q == q && c.w == w; });
      if (it == cells.end())
        std::cout << "---";
      else if (!it->alpha_star)
        std::cout << fixed3(it->value);
      else
        std::cout << '(' << fixed3(it->value) << ',' << fixed3(*it->alpha_star) << ')';
    }
    std::cout << '\n';
  }
}

int run_rate(const RateArgs &a) {
  const int picks = int(a.table1) + int(a.table2) + int(a.divisors) + int(a.bounds) + int(a.q > 0 && !a.bounds);
  cs::detail::require(picks == 1, "rate: choose exactly one of --table1, --table2, --divisor-series, --bounds, --q/--w");
  if (a.table1) {
    const auto cells = cs::rate_table1();
    if (a.format == "text")
      emit_table1_text(cells);
    else
      emit_cells(cells, a.format, true);
  } else if (a.table2) {
    emit_cells(cs::rate_table2(), a.format == "text" ? "csv" : a.format, false);
  } else if (a.divisors) {
    emit_cells(cs::rate_divisor_series(), a.format == "text" ? "csv" : a.format, false);
  } else if (a.bounds) {
    cs::detail::require(a.w >= 1, "rate --bounds needs --w");
    const auto cells = cs::rate_bounds_and_limits(a.w, a.q_list);
    emit_cells(cells, a.format == "text" ? "csv" : a.format, true);
  } else {
    cs::detail::require(a.w >= 1, "rate needs --w");
    if (a.alpha) {
      const auto r = cs::f_qw_alpha(a.q, a.w, *a.alpha);
      if (a.format == "json") {
        json out{{"q", a.q}, {"w", a.w}, {"alpha", *a.alpha}, {"f", r.value}};
        if (r.root)
          out["root"] = *r.root;
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << full(r.value) << '\n';
      }
    } else {
      const auto r = cs::f_qw_via_alpha_max(a.q, a.w);
      const auto root = cs::f_qw(a.q, a.w);
      if (a.format == "json") {
        json out{{"q", a.q}, {"w", a.w}, {"f", r.value}, {"root", root.root ? json(*root.root) : json(nullptr)},
                 {"iterations", root.iterations}, {"residual", root.residual}};
        out["alpha_star"] = r.alpha_star ? json(*r.alpha_star) : json(nullptr);
        std::cout << out.dump(2) << '\n';
      } else {
        emit_cells({{a.q, a.w, r.value, r.alpha_star}}, "csv", true);
      }
    }
  }
  return kOk;
}

// --- ball ---------------------------------------------------------------------

struct BallArgs {
  int q = 0, w = 0;
  std::string seq;
  bool periodic = false, maximality = false, enumerate = false;
  std::size_t n = 0, t = 0;
  std::string method; // empty: recursion for counts, oracle for --maximality
  std::string skip_map, skip_unmap;
  std::string format = "text";
};

int run_ball(const BallArgs &a, const cs::Budget &budget) {
  if (a.maximality) {
    const auto rep = cs::ball_maximality_scan(a.q, a.w, a.n, a.t, a.method != "recursion", budget);
    json out{{"holds", rep.holds},
             {"periodic_size", rep.periodic_size.str()},
             {"largest_found", rep.largest_found.str()},
             {"sequences_scanned", rep.sequences_scanned}};
    if (rep.counterexample)
      out["counterexample"] = cs::io::to_json(*rep.counterexample);
    std::cout << out.dump(2) << '\n';
    return rep.holds ? kOk : kVerify;
  }
  if (!a.skip_map.empty() || !a.skip_unmap.empty()) {
    cs::detail::require(a.n > 0, "skip mapping needs --n and --t for the periodic sequence");
    if (!a.skip_map.empty()) {
      const auto sv = cs::skip_map(cs::io::parse_strand(a.skip_map, a.q), a.q, a.w, a.n, a.t);
      std::cout << cs::io::format_strand(sv.v) << '\n';
    } else {
      const auto v = cs::io::parse_ints(a.skip_unmap);
      std::cout << cs::io::format_strand(cs::skip_unmap({v}, a.q, a.w, a.n, a.t)) << '\n';
    }
    return kOk;
  }

  cs::detail::require(a.periodic != !a.seq.empty(), "ball: give exactly one of --seq or --periodic");
  const cs::ComplexSequence s = a.periodic ? cs::periodic_complex_sequence(a.q, a.w, a.n)
                                           : cs::io::parse_complex_sequence(a.seq, a.q, a.w);
  cs::detail::require(a.t <= s.size(), "t must not exceed the sequence length");

  if (a.enumerate) {
    for (const auto &x : cs::ball_enumerate(s, a.t, budget))
      std::cout << cs::io::format_strand(x) << '\n';
    return kOk;
  }

  const bool periodic = s == cs::periodic_complex_sequence(a.q, a.w, s.size());
  std::vector<cs::BallSize> results;
  auto add = [&](const std::string &m) {
    if (m == "oracle")
      results.push_back(cs::ball_size_oracle(s, a.t, budget));
    else if (m == "single")
      results.push_back(cs::ball_size_single(s));
    else if (m == "recursion")
      results.push_back(cs::ball_size_recursive(s, a.t));
    else if (m == "gf" || m == "factorization" || m == "skip") {
      cs::detail::require(periodic, "method '" + m + "' applies to the periodic sequence only");
      if (m == "gf")
        results.push_back(cs::ball_size_gf(a.q, a.w, s.size(), a.t));
      else if (m == "factorization")
        results.push_back(cs::ball_size_factorized(a.q, a.w, s.size(), a.t));
      else
        results.push_back(cs::ball_size_skip_recursion(a.q, a.w, s.size(), a.t));
    } else
      throw cs::InvalidInput("unknown ball method '" + m + "'");
  };
  if (a.method == "all") {
    add("recursion");
    add("oracle");
    if (a.t == 1 && s.size() >= 2)
      add("single");
    if (periodic) {
      add("gf");
      add("skip");
      if (a.q % a.w == 0)
        add("factorization");
    }
  } else {
    add(a.method.empty() ? "recursion" : a.method);
  }
  for (const auto &r : results)
    if (r.count != results.front().count)
      throw cs::VerificationFailure(std::string("ball size mismatch: ") + cs::to_string(r.method) + " gives " +
                                    r.count.str() + ", " + cs::to_string(results.front().method) + " gives " +
                                    results.front().count.str());
  if (a.format == "json") {
    json methods = json::array();
    for (const auto &r : results)
      methods.push_back(cs::to_string(r.method));
    std::cout << json{{"count", results.front().count.str()}, {"methods", methods}}.dump(2) << '\n';
  } else {
    std::cout << results.front().count << '\n';
  }
  return kOk;
}

// --- codec --------------------------------------------------------------------

struct CodecArgs {
  std::string mode;
  int q = 0, w = 0;
  std::size_t n = 0;
  std::string input;
};

int run_codec(const CodecArgs &a) {
  const auto strands = with_input(a.input, [&](std::istream &in) { return cs::io::read_strands(in, a.q); });
  if (a.mode == "cycles") {
    cs::detail::require(a.w <= a.q, "w must satisfy 1 <= w <= q");
    for (const auto &x : strands)
      std::cout << cs::synthesis_cycles(x, a.q, a.w) << '\n';
    return kOk;
  }
  const auto p = cs::make_code_params(a.q, a.w, a.n);
  for (const auto &x : strands) {
    if (a.mode == "encode")
      std::cout << cs::io::format_strand(cs::encode(x, p)) << '\n';
    else
      std::cout << cs::io::format_strand(cs::decode(x, p)) << '\n';
  }
  return kOk;
}

// --- sccs ---------------------------------------------------------------------

struct SccsArgs {
  int q = 0, w = 0;
  std::string input;
  std::string mode = "exact";
  bool check = false;
};

int run_sccs(const SccsArgs &a, const cs::Budget &budget) {
  cs::SccsInstance inst{a.q, a.w, with_input(a.input, [&](std::istream &in) { return cs::io::read_strands(in, a.q); })};
  const auto sol = a.mode == "exact" ? cs::sccs_exact(inst, budget) : cs::sccs_approx(inst);
  json out = cs::io::to_json(sol);
  out["mode"] = a.mode;
  if (a.check) {
    const std::size_t opt = cs::sccs_bruteforce(inst, budget);
    out["oracle_length"] = opt;
    if (a.mode == "exact" && opt != sol.length)
      throw cs::VerificationFailure("exact SCCS differs from the breadth-first oracle");
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

// --- array --------------------------------------------------------------------

struct ArrayArgs {
  int q = 4;
  std::string grid;
  std::string method = "general";
  bool verify = false;
};

int run_array(const ArrayArgs &a, const cs::Budget &budget) {
  const auto inst = with_input(a.grid, [&](std::istream &in) { return cs::io::read_grid(in, a.q); });
  const auto sol = a.method == "2x2" ? cs::array_dp_2x2(inst, budget) : cs::array_dp_general(inst, budget);
  json out = cs::io::to_json(sol);
  if (a.verify) {
    const auto rep = cs::interleaving_scs_identity(inst, budget);
    const std::size_t bfs = cs::array_bfs_oracle(inst, budget);
    out["verify"] = {{"dp", rep.lhs}, {"interleaving_scs", rep.rhs}, {"bfs", bfs}};
    if (rep.lcs_form)
      out["verify"]["lcs_form"] = *rep.lcs_form;
    if (!rep.holds() || bfs != sol.length) {
      std::cout << out.dump(2) << '\n';
      throw cs::VerificationFailure("array length disagrees with the interleaving identity or the oracle");
    }
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Complex DNA synthesis toolkit: ball sizes, information rates, synthesis codes, SCCS and array "
               "scheduling."};
  app.require_subcommand(1);
  app.fallthrough();

  cs::Budget budget = cs::Budget::from_env();
  app.add_option("--max-enum", budget.max_enum, "cap on enumerated strands/sequences")->capture_default_str();
  app.add_option("--max-states", budget.max_states, "cap on DP/BFS table cells")->capture_default_str();

  std::function<int()> action;
  const std::vector<std::string> formats{"csv", "json", "text"};

  RateArgs ra;
  auto *rate = app.add_subcommand("rate", "information rates and table reproduction");
  rate->add_flag("--table1", ra.table1, "f(q,w) and alpha* over the standard q x w grid");
  rate->add_flag("--table2", ra.table2, "f(4,w) for w = 1..4");
  rate->add_flag("--divisor-series", ra.divisors, "(w, f(q,w)) for q in {8,16,64}, w | q");
  rate->add_flag("--bounds", ra.bounds, "f(q,w), alpha* and bound checks along --q-list");
  rate->add_option("--q", ra.q)->check(CLI::PositiveNumber);
  rate->add_option("--w", ra.w)->check(CLI::PositiveNumber);
  rate->add_option("--alpha", ra.alpha);
  rate->add_option("--q-list", ra.q_list)->delimiter(',');
  rate->add_option("--format", ra.format)->check(CLI::IsMember(formats));
  rate->callback([&] { action = [&] { return run_rate(ra); }; });

  BallArgs ba;
  auto *ball = app.add_subcommand("ball", "sub-instance ball sizes");
  ball->add_option("--q", ba.q)->required()->check(CLI::PositiveNumber);
  ball->add_option("--w", ba.w)->required()->check(CLI::PositiveNumber);
  ball->add_option("--seq", ba.seq, "complex sequence, e.g. \"0,1;2,3\"");
  ball->add_flag("--periodic", ba.periodic, "use the periodic sequence of length --n");
  ball->add_option("--n", ba.n);
  ball->add_option("--t", ba.t);
  ball->add_option("--method", ba.method)
      ->check(CLI::IsMember({"oracle", "single", "recursion", "gf", "factorization", "skip", "all"}));
  ball->add_flag("--maximality", ba.maximality, "exhaustive scan against the periodic ball");
  ball->add_flag("--enumerate", ba.enumerate, "list the ball");
  ball->add_option("--skip-map", ba.skip_map, "strand to map to its skipping vector");
  ball->add_option("--skip-unmap", ba.skip_unmap, "skipping vector to map back");
  ball->add_option("--format", ba.format)->check(CLI::IsMember({"json", "text"}));
  ball->callback([&] { action = [&] { return run_ball(ba, budget); }; });

  CodecArgs ca;
  auto *codec = app.add_subcommand("codec", "single-redundancy synthesis code");
  codec->add_option("mode", ca.mode)->required()->check(CLI::IsMember({"encode", "decode", "cycles"}));
  codec->add_option("--q", ca.q)->required()->check(CLI::PositiveNumber);
  codec->add_option("--w", ca.w)->required()->check(CLI::PositiveNumber);
  codec->add_option("--n", ca.n, "code length (codewords have n symbols)");
  codec->add_option("--input", ca.input, "strand file (default stdin)");
  codec->callback([&] { action = [&] { return run_codec(ca); }; });

  SccsArgs sa;
  auto *sccs = app.add_subcommand("sccs", "shortest common complex supersequence");
  sccs->add_option("--q", sa.q)->required()->check(CLI::PositiveNumber);
  sccs->add_option("--w", sa.w)->required()->check(CLI::PositiveNumber);
  sccs->add_option("--input", sa.input, "strand file (default stdin)");
  sccs->add_option("--mode", sa.mode)->check(CLI::IsMember({"exact", "approx"}));
  sccs->add_flag("--check", sa.check, "also run the breadth-first oracle");
  sccs->callback([&] { action = [&] { return run_sccs(sa, budget); }; });

  ArrayArgs aa;
  auto *array = app.add_subcommand("array", "row-constrained array synthesis");
  array->add_option("--q", aa.q)->check(CLI::PositiveNumber)->capture_default_str();
  array->add_option("--grid", aa.grid, "grid file (default stdin)");
  array->add_option("--method", aa.method)->check(CLI::IsMember({"general", "2x2"}));
  array->add_flag("--verify", aa.verify, "check against the interleaving identity and the oracle");
  array->callback([&] { action = [&] { return run_array(aa, budget); }; });

  cs::verify::Options vo;
  auto *verify = app.add_subcommand("verify", "seeded cross-validation suites");
  verify->add_option("--module", vo.module)->check(CLI::IsMember({"all", "ball", "rate", "codec", "sccs", "array"}));
  verify->add_option("--max-n", vo.max_n)->check(CLI::Range(1, 10));
  verify->add_option("--seed", vo.seed);
  verify->callback([&] {
    action = [&] {
      vo.budget = budget;
      const auto results = cs::verify::run(vo);
      cs::verify::print_report(std::cout, results);
      const bool ok = std::all_of(results.begin(), results.end(), [](const auto &r) { return r.passed(); });
      return ok ? kOk : kVerify;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    return action();
  } catch (const cs::InvalidInput &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const cs::BudgetExceeded &e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const cs::VerificationFailure &e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerify;
  } catch (const json::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
}
