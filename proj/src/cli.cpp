#include "regsub/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "regsub/asymptotics.hpp"
#include "regsub/enumeration.hpp"
#include "regsub/graph.hpp"
#include "regsub/graph6.hpp"
#include "regsub/moments.hpp"
#include "regsub/search.hpp"
#include "regsub/sweep.hpp"

namespace regsub {
namespace {

std::string fmt(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(v[j]);
  }
  return s;
}

nlohmann::json estimate_json(const LogEstimate& e) {
  return {{"log_value", static_cast<double>(e.log_value)},
          {"value", static_cast<double>(std::exp(e.log_value))},
          {"lambda", static_cast<double>(e.lambda)},
          {"max_deviation", static_cast<double>(e.max_deviation)},
          {"f_regime", to_string(e.f_regime)},
          {"error_driver", static_cast<double>(e.error_driver)}};
}

void print_estimate(std::ostream& out, const LogEstimate& e) {
  out << "log_value = " << fmt(e.log_value) << '\n'
      << "value = " << fmt(std::exp(e.log_value)) << '\n'
      << "lambda = " << fmt(e.lambda) << '\n'
      << "max_deviation = " << fmt(e.max_deviation) << '\n'
      << "f_regime = " << to_string(e.f_regime) << '\n'
      << "error_driver = " << fmt(e.error_driver) << '\n';
}

void write_text(const std::string& path, const std::string& text,
                std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"toolkit for induced regular subgraphs of G(n,1/2)", "regsub"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit JSON instead of text");

  // count-degseq
  DegreeSequence cd_d;
  auto* cd = app.add_subcommand(
      "count-degseq", "count labeled graphs with a given degree sequence");
  cd->add_option("--d", cd_d, "degree sequence, comma separated")
      ->delimiter(',')
      ->required();
  cd->callback([&] {
    const BigCount c = count_by_degree_sequence(cd_d);
    if (json)
      out << nlohmann::json{{"d", cd_d}, {"count", c.str()}}.dump() << '\n';
    else
      out << c << '\n';
  });

  // count-constrained
  ConstrainedProfile cc;
  auto* ccs = app.add_subcommand(
      "count-constrained",
      "count regular-degree graphs with an edgeless core of given defects");
  ccs->add_option("--k", cc.k, "total vertices, odd")->required();
  ccs->add_option("--d", cc.core, "core degree vector, comma separated")
      ->delimiter(',')
      ->required();
  ccs->callback([&] {
    const BigCount c = count_constrained(cc);
    if (json)
      out << nlohmann::json{
                 {"k", cc.k}, {"core", cc.core}, {"count", c.str()}}
                 .dump()
          << '\n';
    else
      out << c << '\n';
  });

  // pk
  int pk_k = 0;
  bool pk_exact = false;
  auto* pk = app.add_subcommand(
      "pk", "probability that G(k,1/2) is floor((k-1)/2)-regular");
  pk->add_option("--k", pk_k, "number of vertices")->required();
  pk->add_flag("--exact", pk_exact, "exact dyadic value (k <= 13)");
  pk->callback([&] {
    if (pk_exact) {
      const ExactProbability p = exact_pk(pk_k);
      if (json)
        out << nlohmann::json{{"k", pk_k},
                              {"numerator", p.numerator.str()},
                              {"exponent", p.exponent},
                              {"value", static_cast<double>(p.value())}}
                   .dump()
            << '\n';
      else
        out << p.to_string() << '\n' << fmt(p.value()) << '\n';
    } else {
      const LogEstimate e = estimate_pk(pk_k);
      if (json)
        out << estimate_json(e).dump() << '\n';
      else
        print_estimate(out, e);
    }
  });

  // pki
  int pki_k = 0, pki_i = 0;
  bool pki_exact = false, pki_bound = false;
  auto* pki = app.add_subcommand(
      "pki", "worst-case regularity probability given an induced core");
  pki->add_option("--k", pki_k, "total vertices, odd")->required();
  pki->add_option("--i", pki_i, "core size")->required();
  pki->add_flag("--exact", pki_exact, "maximize over cores exactly");
  pki->add_flag("--bound", pki_bound, "log-domain sandwich bounds");
  pki->callback([&] {
    if (pki_exact && pki_bound)
      throw CLI::ValidationError("pki", "--exact and --bound are exclusive");
    if (pki_bound) {
      const PkiBounds b = bound_pki(pki_k, pki_i);
      if (json)
        out << nlohmann::json{{"k", pki_k},
                              {"i", pki_i},
                              {"log_a", static_cast<double>(b.log_a)},
                              {"log_b", static_cast<double>(b.log_b)},
                              {"a_used_exact_tail", b.a_used_exact_tail}}
                   .dump()
            << '\n';
      else
        out << "log_a = " << fmt(b.log_a) << '\n'
            << "log_b = " << fmt(b.log_b) << '\n'
            << "a_used_exact_tail = "
            << (b.a_used_exact_tail ? "true" : "false") << '\n';
    } else {
      const PkiResult r = exact_pki(pki_k, pki_i);
      if (json)
        out << nlohmann::json{{"k", pki_k},
                              {"i", pki_i},
                              {"numerator", r.p.numerator.str()},
                              {"exponent", r.p.exponent},
                              {"value", static_cast<double>(r.p.value())},
                              {"argmax", r.argmax}}
                   .dump()
            << '\n';
      else
        out << r.p.to_string() << '\n'
            << fmt(r.p.value()) << '\n'
            << "argmax = " << join(r.argmax) << '\n';
    }
  });

  // estimate
  DegreeSequence est_d;
  auto* est = app.add_subcommand(
      "estimate", "asymptotic count of graphs with a given degree sequence");
  est->add_option("--d", est_d, "degree sequence, comma separated")
      ->delimiter(',')
      ->required();
  est->callback([&] {
    const LogEstimate e = estimate_count(est_d);
    if (json)
      out << estimate_json(e).dump() << '\n';
    else
      print_estimate(out, e);
  });

  // ratio
  RatioSpec rs;
  auto* ratio = app.add_subcommand(
      "ratio", "constrained-count ratio N(d)/N(d-s) estimate");
  ratio->add_option("--k", rs.k, "total vertices, odd")->required();
  ratio->add_option("--i", rs.i, "core size")->required();
  ratio->add_option("--d", rs.d, "core degree vector")->delimiter(',')
      ->required();
  ratio->add_option("--s", rs.s, "shift vector")->delimiter(',')->required();
  ratio->callback([&] {
    const long double v = ratio_estimate(rs);
    if (json)
      out << nlohmann::json{{"ratio", static_cast<double>(v)}}.dump() << '\n';
    else
      out << "ratio = " << fmt(v) << '\n';
  });

  // prob-induced
  int pi_k = 0;
  DegreeSequence pi_d;
  auto* pi = app.add_subcommand(
      "prob-induced",
      "probability a fixed graph sits induced on the first vertices of a "
      "regular G(k,1/2) sample");
  pi->add_option("--k", pi_k, "total vertices, odd")->required();
  pi->add_option("--d", pi_d, "induced graph degree sequence")
      ->delimiter(',')
      ->required();
  pi->callback([&] {
    const LogEstimate e = prob_induced(pi_k, pi_d);
    if (json)
      out << estimate_json(e).dump() << '\n';
    else
      print_estimate(out, e);
  });

  // moments
  long long mo_n = 0;
  int mo_k = 0;
  bool mo_exact = false, mo_lemma = false;
  std::string mo_out;
  auto* mo = app.add_subcommand(
      "moments", "second-moment variance profile for the regular-subset count");
  mo->add_option("--n", mo_n, "ambient graph order")->required();
  mo->add_option("--k", mo_k, "subset size, odd")->required();
  mo->add_flag("--exact", mo_exact, "measure overlap ratios by enumeration");
  mo->add_flag("--lemma", mo_lemma, "bound overlap ratios analytically");
  mo->add_option("--out", mo_out, "write to file instead of stdout");
  mo->callback([&] {
    if (mo_exact && mo_lemma)
      throw CLI::ValidationError("moments", "--exact and --lemma are exclusive");
    const PkiMode mode =
        mo_exact || (!mo_lemma && mo_k <= exact_budget_max_k)
            ? PkiMode::exact
            : PkiMode::lemma_bound;
    const MomentReport rep = variance_bound_profile(mo_n, mo_k, mode);
    if (json) {
      write_text(mo_out, rep.to_json() + "\n", out);
      return;
    }
    std::ostringstream text;
    text << "n = " << rep.n << '\n'
         << "k = " << rep.k << '\n'
         << "pki_mode = "
         << (rep.pki_mode == PkiMode::exact ? "exact" : "lemma") << '\n'
         << "log_ex = " << fmt(rep.log_ex) << '\n'
         << "t = " << rep.t << '\n'
         << "log_total = " << fmt(rep.log_total) << '\n'
         << "log_n_over_log_k = " << fmt(rep.log_n_over_log_k) << '\n'
         << '\n'
         << rep.to_csv();
    write_text(mo_out, text.str(), out);
  });

  // tail
  long long ta_n = 0;
  int ta_k0 = 0;
  auto* ta = app.add_subcommand(
      "tail", "log union bound on induced regular subgraphs of size >= k0");
  ta->add_option("--n", ta_n, "ambient graph order")->required();
  ta->add_option("--k0", ta_k0, "smallest subgraph order in the tail")
      ->required();
  ta->callback([&] {
    const long double v = upper_bound_tail(ta_n, ta_k0);
    if (json)
      out << nlohmann::json{{"n", ta_n},
                            {"k0", ta_k0},
                            {"log_tail", static_cast<double>(v)}}
                 .dump()
          << '\n';
    else
      out << "log_tail = " << fmt(v) << '\n';
  });

  // search
  std::string se_g6;
  int se_n = 0;
  double se_p = 0.5;
  std::uint64_t se_seed = 0, se_budget = 0;
  bool se_heur = false;
  auto* se = app.add_subcommand(
      "search", "largest vertex subset inducing a regular subgraph");
  auto* se_g6_opt =
      se->add_option("--graph6", se_g6, "graph in graph6 notation");
  auto* se_n_opt =
      se->add_option("--gnp-n", se_n, "sample a G(n,p) instance instead");
  se_g6_opt->excludes(se_n_opt);
  se->add_option("--p", se_p, "edge probability for --gnp-n");
  se->add_option("--seed", se_seed,
                 "seed for --gnp-n sampling and the heuristic stream");
  se->add_flag("--heuristic", se_heur, "local search instead of exact");
  se->add_option("--budget", se_budget,
                 "node budget (exact) or iteration budget (heuristic)");
  se->callback([&] {
    if (se_g6_opt->count() == se_n_opt->count())
      throw CLI::ValidationError("search",
                                 "give exactly one of --graph6, --gnp-n");
    const Graph g = se_g6_opt->count()
                        ? parse_graph6(se_g6)
                        : sample_gnp(se_n, se_p, Seed{se_seed});
    SearchResult res;
    if (se_heur) {
      const Seed stream = se_n_opt->count() ? derive_seed(Seed{se_seed}, 1)
                                            : Seed{se_seed};
      res = max_induced_regular_heuristic(
          g, stream, se_budget ? se_budget : heuristic_default_budget);
    } else {
      res = max_induced_regular_exact(
          g, se_budget ? se_budget : search_default_node_budget);
    }
    if (json) {
      out << res.to_json() << '\n';
      return;
    }
    out << "size = " << res.size << '\n' << "r = " << res.r << '\n';
    out << "vertices =";
    for (int v : res.vertices()) out << ' ' << v;
    out << '\n'
        << "optimal = " << (res.optimal ? "true" : "false") << '\n'
        << "nodes = " << res.nodes << '\n';
  });

  // sample
  bool sa_gnp = false, sa_reg = false;
  int sa_n = 0, sa_k = 0, sa_count = 1;
  double sa_p = 0.5;
  std::uint64_t sa_seed = 0;
  auto* sa = app.add_subcommand(
      "sample", "draw seeded graphs, printed one per line in graph6");
  sa->add_flag("--gnp", sa_gnp, "G(n,p) samples");
  sa->add_flag("--regular", sa_reg,
               "exactly uniform (k-1)/2-regular samples, k odd, k <= 13");
  sa->add_option("--n", sa_n, "vertices for --gnp");
  sa->add_option("--p", sa_p, "edge probability for --gnp");
  sa->add_option("--k", sa_k, "vertices for --regular");
  sa->add_option("--seed", sa_seed, "base seed");
  sa->add_option("--count", sa_count, "number of samples");
  sa->callback([&] {
    if (sa_gnp == sa_reg)
      throw CLI::ValidationError("sample",
                                 "give exactly one of --gnp, --regular");
    std::vector<Graph> graphs;
    if (sa_reg) {
      graphs = sample_regular_exact(sa_k, Seed{sa_seed}, sa_count);
    } else {
      for (int j = 0; j < sa_count; ++j)
        graphs.push_back(sample_gnp(sa_n, sa_p, derive_seed(Seed{sa_seed}, j)));
    }
    if (json) {
      std::vector<std::string> lines;
      for (const Graph& g : graphs) lines.push_back(write_graph6(g));
      out << nlohmann::json{{"graphs", lines}}.dump() << '\n';
      return;
    }
    for (const Graph& g : graphs) out << write_graph6(g) << '\n';
  });

  // sweep
  ExperimentConfig cfg;
  std::string sw_config, sw_out;
  auto* sw = app.add_subcommand(
      "sweep", "sample, search, and tabulate G(n,1/2) instances");
  auto* sw_n = sw->add_option("--n", cfg.n_range, "graph orders")
                   ->delimiter(',');
  auto* sw_tr = sw->add_option("--trials", cfg.trials, "trials per order");
  auto* sw_seed = sw->add_option("--seed", cfg.seed.value, "master seed");
  auto* sw_sm = sw->add_option("--search-mode", cfg.search_mode,
                               "auto | exact | heuristic");
  auto* sw_pm = sw->add_option("--pk-mode", cfg.pk_mode,
                               "auto | exact | asymptotic");
  auto* sw_cap = sw->add_option("--exact-cap", cfg.exact_search_cap,
                                "auto mode: exact search up to this order");
  auto* sw_nb = sw->add_option("--node-budget", cfg.node_budget,
                               "exact search node budget, 0 = default");
  auto* sw_hb = sw->add_option("--heuristic-budget", cfg.heuristic_budget,
                               "heuristic iteration budget, 0 = default");
  sw->add_option("--config", sw_config, "JSON config file; flags override");
  sw->add_option("--out", sw_out, "CSV output path, default stdout");
  sw->callback([&] {
    if (!sw_config.empty()) {
      std::ifstream file(sw_config);
      if (!file)
        throw CLI::ValidationError("--config",
                                   "cannot read file: " + sw_config);
      std::ostringstream buf;
      buf << file.rdbuf();
      ExperimentConfig loaded;
      try {
        loaded = ExperimentConfig::from_json(buf.str());
      } catch (const std::exception& e) {
        throw CLI::ValidationError("--config", e.what());
      }
      if (sw_n->count()) loaded.n_range = cfg.n_range;
      if (sw_tr->count()) loaded.trials = cfg.trials;
      if (sw_seed->count()) loaded.seed = cfg.seed;
      if (sw_sm->count()) loaded.search_mode = cfg.search_mode;
      if (sw_pm->count()) loaded.pk_mode = cfg.pk_mode;
      if (sw_cap->count()) loaded.exact_search_cap = cfg.exact_search_cap;
      if (sw_nb->count()) loaded.node_budget = cfg.node_budget;
      if (sw_hb->count()) loaded.heuristic_budget = cfg.heuristic_budget;
      cfg = loaded;
    }
    if (cfg.n_range.empty())
      throw CLI::ValidationError("--n", "at least one graph order required");
    if (cfg.trials < 1)
      throw CLI::ValidationError("--trials", "must be >= 1");
    std::vector<SweepRow> rows;
    try {
      rows = run_sweep(cfg);
    } catch (const std::domain_error& e) {
      throw CLI::ValidationError("sweep", e.what());
    }
    const std::string path = sw_out.empty() ? cfg.output_path : sw_out;
    if (json) {
      nlohmann::json jrows = nlohmann::json::array();
      for (const SweepRow& r : rows)
        jrows.push_back({{"n", r.n},
                         {"trial", r.trial},
                         {"seed", r.derived_seed},
                         {"observed_max_size", r.observed_max_size},
                         {"observed_r", r.observed_r},
                         {"optimal", r.optimal},
                         {"bound_2n23", r.bound_2n23},
                         {"log_ex", r.log_ex}});
      write_text(path, jrows.dump() + "\n", out);
      return;
    }
    write_text(path, sweep_csv(rows), out);
  });

  // The --json flag may appear before or after the subcommand name.
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.back()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace regsub
