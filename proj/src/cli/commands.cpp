#include "redlab/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "redlab/bounds.hpp"
#include "redlab/distributions.hpp"
#include "redlab/error.hpp"
#include "redlab/extremal.hpp"
#include "redlab/huffman.hpp"
#include "redlab/oracle.hpp"

namespace redlab::cli {

namespace {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// Thrown by command bodies to leave with a specific exit code.
struct Exit {
  int code;
  std::string message;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::GridTooFine: return kResource;
    case ErrorCode::NoConvergence: return kVerifyFailed;
    default: return kUsage;
  }
}

std::string optional_int(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  double p = 0.0;
  std::optional<int> radix;
  bool json = false;
};

nlohmann::json to_json(const BoundValue& b) {
  nlohmann::json j{{"bound_id", to_string(b.id)},
                   {"p", b.p},
                   {"D", b.radix},
                   {"value", b.value},
                   {"branch", b.branch}};
  j["witness_m"] = b.witness_m ? nlohmann::json(*b.witness_m) : nlohmann::json(nullptr);
  return j;
}

void cmd_bounds(const BoundsArgs& a, Io io) {
  if (!(a.p > 0.0 && a.p < 1.0)) throw Exit{kUsage, "p must be in (0,1)"};
  if (a.radix && *a.radix < 2) throw Exit{kUsage, "D must be at least 2"};

  std::vector<BoundValue> values{r_max(a.p), r_ub(a.p), f_p1(a.p), r_min(a.p)};
  if (a.p <= 0.5) values.push_back(r_min_pN(a.p));
  if (a.radix) values.push_back(r_min_D(a.p, *a.radix));

  if (a.json) {
    nlohmann::json record{{"p", a.p}, {"D", a.radix.value_or(2)}};
    record["bounds"] = nlohmann::json::array();
    for (const auto& b : values) record["bounds"].push_back(to_json(b));
    io.out << record.dump() << '\n';
    return;
  }
  fmt::print(io.out, "p={:.6f}\n", a.p);
  for (const auto& b : values) {
    std::string name(to_string(b.id));
    for (auto& c : name) c = static_cast<char>(std::tolower(c));
    fmt::print(io.out, "{}={:.6f}", name, b.value);
    if (b.witness_m) fmt::print(io.out, " (m={})", *b.witness_m);
    if (b.id == BoundId::RMinD) fmt::print(io.out, " (D={})", b.radix);
    fmt::print(io.out, " [{}]\n", b.branch);
  }
}

// --------------------------------------------------------------- huffman

struct HuffmanArgs {
  std::string input;
  std::string values;
  int radix = 2;
  bool tree = false;
};

std::string read_all(std::istream& s) {
  return {std::istreambuf_iterator<char>(s), std::istreambuf_iterator<char>()};
}

void dump_tree(const CodeTree& tree, std::size_t id, int indent, std::ostream& out) {
  const auto& node = tree.node(id);
  fmt::print(out, "{:{}}{:.6f}", "", indent * 2, node.prob);
  if (node.is_dummy()) {
    fmt::print(out, " [dummy]");
  } else if (node.is_leaf()) {
    fmt::print(out, " [s{}]", node.symbol);
  }
  fmt::print(out, "\n");
  for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
    dump_tree(tree, *it, indent + 1, out);
  }
}

void cmd_huffman(const HuffmanArgs& a, Io io) {
  if (a.radix < 2) throw Exit{kUsage, "D must be at least 2"};
  std::string text;
  if (!a.values.empty()) {
    text = a.values;
  } else if (a.input.empty() || a.input == "-") {
    text = read_all(io.in);
  } else {
    std::ifstream f(a.input);
    if (!f) throw Exit{kUsage, "cannot read " + a.input};
    text = read_all(f);
  }
  const auto dist = make_distribution(parse_distribution_text(text));
  const auto tree = build_huffman(dist, a.radix);
  const auto lengths = code_lengths(tree);
  const double len = average_length(tree);
  const double h = entropy(dist, a.radix);

  fmt::print(io.out, "symbols={} D={}\n", dist.size(), a.radix);
  fmt::print(io.out, "probs={}\n", fmt::join(dist.probs(), ","));
  fmt::print(io.out, "lengths={}\n", fmt::join(lengths, ","));
  fmt::print(io.out, "L={:.9f}\nH={:.9f}\nR={:.9f}\n", len, h, len - h);
  if (a.tree) dump_tree(tree, tree.root(), 0, io.out);
}

// -------------------------------------------------------------- extremal

struct ExtremalArgs {
  std::string family;
  double p = 0.0;
  double eps = 0.01;
  std::optional<int> m;
  int radix = 3;
};

void cmd_extremal(const ExtremalArgs& a, Io io) {
  std::optional<ExtremalFamily> fam;
  if (a.family == "upper") {
    fam = upper_family(a.p, a.eps);
  } else if (a.family == "backbone") {
    fam = backbone(a.p, a.m);
  } else if (a.family == "pn1") {
    fam = pN_family_1(a.p);
  } else if (a.family == "pn2") {
    fam = pN_family_2(a.p);
  } else if (a.family == "dary") {
    fam = dary_backbone(a.p, a.radix, a.m);
  } else {
    throw Exit{kUsage, "unknown family '" + a.family + "'"};
  }
  const double measured = redundancy(fam->dist, fam->radix);
  fmt::print(io.out, "# family={} p={} D={} m={}", to_string(fam->id), fam->p,
             fam->radix, optional_int(fam->m));
  if (fam->eps) fmt::print(io.out, " eps={}", *fam->eps);
  fmt::print(io.out, " feasible={}\n", fam->feasible ? "yes" : "no");
  fmt::print(io.out, "# R={:.9f} target={:.9f}\n", measured, fam->target);
  for (double x : fam->dist) fmt::print(io.out, "{}\n", x);
  if (!fam->feasible) {
    fmt::print(io.err,
               "warning: parameters do not give the canonical tree shape; "
               "measured redundancy differs from the closed form\n");
  }
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  std::optional<int> q;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> p_num;
  int workers = 0;
  SearchLimits limits;
};

bool verify_sandwich(const VerifyArgs& a, const SearchOptions& opt, std::ostream& out) {
  const auto r = sandwich_sweep(a.q.value_or(16), a.n.value_or(5), opt);
  fmt::print(out,
             "sandwich q={} n={}: checked={} violations={} worst_lower_slack={:.9f} "
             "worst_upper_slack={:.9f} instances={}\n",
             r.q, r.n_max, r.checked, r.violations, r.worst_lower_slack,
             r.worst_upper_slack, r.instances);
  return r.violations == 0;
}

bool verify_tightness(const VerifyArgs& a, const SearchOptions& opt, std::ostream& out) {
  const auto r = tightness_sweep(a.q.value_or(32), a.n.value_or(5), opt);
  fmt::print(out, "tightness q={} n={}: on_grid={} achieved={} worst_gap={:.3e}\n",
             r.q, r.n_max, r.on_grid, r.achieved, r.worst_gap);
  return r.on_grid > 0 && r.achieved == r.on_grid;
}

bool verify_kkt(const VerifyArgs& a, std::ostream& out) {
  const int lo = a.m.value_or(2);
  const int hi = a.m.value_or(10);
  bool ok = true;
  for (int m = lo; m <= hi; ++m) {
    const auto r = kkt_verify(m);
    const bool pass = r.max_deviation < 1e-6 && std::abs(r.objective_gap) < 1e-6;
    ok = ok && pass;
    fmt::print(out, "kkt m={}: max_deviation={:.3e} gap={:.3e} iterations={}\n", m,
               r.max_deviation, r.objective_gap, r.iterations);
  }
  return ok;
}

bool verify_johnsen(const VerifyArgs& a, std::ostream& out) {
  const auto r = johnsen_verify(a.q.value_or(10), a.n.value_or(5), a.limits);
  fmt::print(out, "johnsen q={} n={}: examined={} tie_resolved={} counterexample=", r.q,
             r.n_max, r.examined, r.tie_resolved);
  if (r.counterexample) {
    fmt::print(out, "{}/{}\n", fmt::join(*r.counterexample, ","), r.q);
  } else {
    fmt::print(out, "none\n");
  }
  return r.holds();
}

bool verify_equalize(std::ostream& out) {
  int checked = 0;
  int skipped = 0;
  int failures = 0;
  double worst_drop = 0.0;
  for (int radix : {3, 4}) {
    for (int k = 1; k <= 9; ++k) {
      const double p = 0.05 * k;
      const auto fam = dary_backbone(p, radix);
      const int levels = *fam.m;
      for (int level = 1; level <= levels; ++level) {
        // Perturb two leaves of one level, keeping the level mass.
        std::vector<double> v(fam.dist.begin(), fam.dist.end());
        const double mean =
            (1.0 - p) * std::pow(radix, levels - level) / (std::pow(radix, levels) - 1.0);
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < v.size() && hits.size() < 2; ++i) {
          if (std::abs(v[i] - mean) < 1e-12) hits.push_back(i);
        }
        if (hits.size() < 2) continue;
        v[hits[0]] += 0.2 * mean;
        v[hits[1]] -= 0.2 * mean;
        try {
          const auto r = equalize_verify(make_distribution(v), radix, p);
          ++checked;
          if (!r.holds()) ++failures;
          worst_drop = std::max(worst_drop, r.redundancy_before - r.redundancy_after);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotCanonical) throw;
          ++skipped;
        }
      }
    }
  }
  fmt::print(out, "equalize: checked={} not_canonical={} failures={} largest_drop={:.6f}\n",
             checked, skipped, failures, worst_drop);
  return checked > 0 && failures == 0;
}

bool verify_eq24(const VerifyArgs& a, const SearchOptions& opt, std::ostream& out) {
  const int q = a.q.value_or(40);
  const int k = a.p_num.value_or(4);
  const auto r = least_likely_experiment(k, q, a.n.value_or(6), opt);
  const auto& t = r.terms;
  const double ceil_bound = t.second ? std::min(t.first_ceil, *t.second) : t.first_ceil;
  fmt::print(out, "eq24 p={}/{} n={}: oracle_min={:.6f} witness={}/{} instances={}\n", k, q,
             r.search.n_max, r.search.redundancy, fmt::join(r.search.witness, ","), q,
             r.search.instances);
  fmt::print(out, "  first term, floor depth m={}: {:.6f}\n", t.m_floor, t.first_floor);
  fmt::print(out, "  first term, ceiling depth m={}: {:.6f}\n", t.m_ceil, t.first_ceil);
  if (t.second) {
    fmt::print(out, "  second term m={}: {:.6f}\n", *t.m_second, *t.second);
  }
  fmt::print(out, "  bound (floor form)={:.6f} {}\n", r.bound,
             r.search.redundancy >= r.bound - 1e-9 ? "holds" : "VIOLATED");
  fmt::print(out, "  bound (ceiling form)={:.6f} {}\n", ceil_bound,
             r.search.redundancy >= ceil_bound - 1e-9 ? "holds" : "violated by oracle");
  return r.search.redundancy >= r.bound - 1e-9;
}

void cmd_verify(const VerifyArgs& a, Io io) {
  const SearchOptions opt{a.workers, a.limits};
  bool ok = false;
  if (a.suite == "sandwich") {
    ok = verify_sandwich(a, opt, io.out);
  } else if (a.suite == "tightness") {
    ok = verify_tightness(a, opt, io.out);
  } else if (a.suite == "kkt") {
    ok = verify_kkt(a, io.out);
  } else if (a.suite == "johnsen") {
    ok = verify_johnsen(a, io.out);
  } else if (a.suite == "equalize") {
    ok = verify_equalize(io.out);
  } else if (a.suite == "eq24") {
    ok = verify_eq24(a, opt, io.out);
  } else {
    throw Exit{kUsage, "unknown suite '" + a.suite + "'"};
  }
  fmt::print(io.out, "{}\n", ok ? "PASS" : "FAIL");
  if (!ok) throw Exit{kVerifyFailed, ""};
}

// ---------------------------------------------------------------- figure

struct FigureArgs {
  std::string figure;
  double start = 0.01;
  double stop = 0.99;
  double step = 0.01;
  std::string output;
};

void cmd_figure(const FigureArgs& a, Io io) {
  if (!(a.step > 0.0)) throw Exit{kUsage, "step must be positive"};
  if (!(a.start > 0.0 && a.stop < 1.0 && a.start <= a.stop)) {
    throw Exit{kUsage, "grid must lie within (0,1)"};
  }
  const auto count = static_cast<long>(std::floor((a.stop - a.start) / a.step + 1e-9)) + 1;

  std::ostringstream csv;
  if (a.figure == "fig2") {
    csv << "p,r_max,r_ub,f_p1\n";
    for (long i = 0; i < count; ++i) {
      const double p = a.start + static_cast<double>(i) * a.step;
      fmt::print(csv, "{:.6f},{:.6f},{:.6f},{:.6f}\n", p, r_max(p).value, r_ub(p).value,
                 f_p1(p).value);
    }
  } else if (a.figure == "fig4") {
    csv << "p,r_min,r_max,marker\n";
    // Beta markers inside the grid, merged in ascending p order.
    std::vector<std::pair<double, int>> markers;
    for (int k = 1; beta(k) >= a.start; ++k) {
      if (beta(k) <= a.stop) markers.emplace_back(beta(k), k);
    }
    auto next_marker = markers.rbegin();
    auto row = [&](double p, const std::string& marker) {
      fmt::print(csv, "{:.6f},{:.6f},{:.6f},{}\n", p, r_min(p).value, r_max(p).value, marker);
    };
    for (long i = 0; i < count; ++i) {
      const double p = a.start + static_cast<double>(i) * a.step;
      for (; next_marker != markers.rend() && next_marker->first <= p; ++next_marker) {
        row(next_marker->first, fmt::format("beta_{}", next_marker->second));
      }
      row(p, "");
    }
    for (; next_marker != markers.rend(); ++next_marker) {
      row(next_marker->first, fmt::format("beta_{}", next_marker->second));
    }
  } else if (a.figure == "fig5") {
    csv << "p,r_min,r_min_pN\n";
    for (long i = 0; i < count; ++i) {
      const double p = a.start + static_cast<double>(i) * a.step;
      if (p <= 0.5) {
        fmt::print(csv, "{:.6f},{:.6f},{:.6f}\n", p, r_min(p).value, r_min_pN(p).value);
      } else {
        fmt::print(csv, "{:.6f},{:.6f},\n", p, r_min(p).value);
      }
    }
  } else {
    throw Exit{kUsage, "unknown figure '" + a.figure + "'"};
  }

  if (a.output.empty() || a.output == "-") {
    io.out << csv.str();
    return;
  }
  std::ofstream f(a.output);
  if (!(f << csv.str())) throw Exit{kResource, "cannot write " + a.output};
}

int env_workers() {
  if (const char* v = std::getenv("REDLAB_WORKERS")) {
    try {
      return std::max(0, std::stoi(v));
    } catch (const std::exception&) {
    }
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Huffman code redundancy bounds and extremal distributions", "redlab"};
  app.require_subcommand(1);

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the redundancy bounds at p");
  bounds_cmd->add_option("p", bounds_args.p, "Known symbol probability")->required();
  bounds_cmd->add_option("-D,--radix", bounds_args.radix, "Also evaluate the D-ary lower bound");
  bounds_cmd->add_flag("--json", bounds_args.json, "Print one JSON record");

  HuffmanArgs huffman_args;
  auto* huffman_cmd = app.add_subcommand("huffman", "Build a Huffman code for a distribution");
  huffman_cmd->add_option("input", huffman_args.input, "Distribution file ('-' for stdin)");
  huffman_cmd->add_option("-v,--values", huffman_args.values, "Inline comma-separated values");
  huffman_cmd->add_option("-D,--radix", huffman_args.radix, "Code radix");
  huffman_cmd->add_flag("--tree", huffman_args.tree, "Print the code tree");

  ExtremalArgs extremal_args;
  auto* extremal_cmd = app.add_subcommand("extremal", "Generate a bound-achieving distribution");
  extremal_cmd->add_option("family", extremal_args.family, "upper|backbone|pn1|pn2|dary")
      ->required();
  extremal_cmd->add_option("p", extremal_args.p, "Known symbol probability")->required();
  extremal_cmd->add_option("--eps", extremal_args.eps, "Epsilon for the upper family");
  extremal_cmd->add_option("--m", extremal_args.m, "Tree depth override");
  extremal_cmd->add_option("-D,--radix", extremal_args.radix, "Radix for the dary family");

  VerifyArgs verify_args;
  verify_args.workers = env_workers();
  auto* verify_cmd = app.add_subcommand("verify", "Run an exhaustive or numerical check");
  verify_cmd->add_option("suite", verify_args.suite,
                         "sandwich|tightness|kkt|johnsen|equalize|eq24")
      ->required();
  verify_cmd->add_option("--q", verify_args.q, "Grid denominator");
  verify_cmd->add_option("--n", verify_args.n, "Maximum number of symbols");
  verify_cmd->add_option("--m", verify_args.m, "Depth for the kkt suite");
  verify_cmd->add_option("--p-num", verify_args.p_num, "Numerator of p for eq24");
  verify_cmd->add_option("--workers", verify_args.workers,
                         "Worker threads (default: REDLAB_WORKERS or all)");
  verify_cmd->add_option("--max-q", verify_args.limits.max_q, "Largest allowed grid");
  verify_cmd->add_option("--max-n", verify_args.limits.max_n, "Largest allowed symbol count");
  verify_cmd->add_option("--cap", verify_args.limits.instance_cap, "Huffman build budget");

  FigureArgs figure_args;
  auto* figure_cmd = app.add_subcommand("figure", "Write bound curves as CSV");
  figure_cmd->add_option("figure", figure_args.figure, "fig2|fig4|fig5")->required();
  figure_cmd->add_option("--start", figure_args.start, "First p");
  figure_cmd->add_option("--stop", figure_args.stop, "Last p");
  figure_cmd->add_option("--step", figure_args.step, "Grid step");
  figure_cmd->add_option("-o,--output", figure_args.output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*bounds_cmd) cmd_bounds(bounds_args, io);
    if (*huffman_cmd) cmd_huffman(huffman_args, io);
    if (*extremal_cmd) cmd_extremal(extremal_args, io);
    if (*verify_cmd) cmd_verify(verify_args, io);
    if (*figure_cmd) cmd_figure(figure_args, io);
  } catch (const Exit& e) {
    if (!e.message.empty()) err << "error: " << e.message << '\n';
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kOk;
}

}  // namespace redlab::cli
