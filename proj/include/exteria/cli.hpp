// Command-line front end. `run` parses arguments, dispatches to the library
// and writes one JSON document (or TSV table) to `out`.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or guard error.
#pragma once

#include "exteria/json_io.hpp"
#include "exteria/localization.hpp"
#include "exteria/orbits.hpp"
#include "exteria/parallel.hpp"
#include "exteria/relations.hpp"
#include "exteria/shapes.hpp"
#include "exteria/tangent.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace exteria::cli {

inline constexpr const char* kSchema = "exteria/1";

/// Usage errors detected after parsing (bad values, guard violations).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int m = 0, n = 0, t = 0;
  std::uint64_t seed = 1;
  int trials = 20;
  std::uint64_t modulus = kDefaultPrime;
  unsigned threads = 0;  // 0: EXTERIA_THREADS or 1
  std::string format = "json";
  std::string output;
  bool transposed = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline QMatrix load_matrix(const std::string& path) {
  try {
    return parse_matrix(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw UsageError("malformed matrix file '" + path + "': " + e.what());
  }
}

inline ExteriorPoint transpose_point(const ExteriorPoint& x) { return ExteriorPoint(x.n, x.m, x.t, x.coords.transpose()); }

/// Swaps m and n when m > n, recording the transposition.
inline void normalize_shape(RunConfig& c) {
  if (c.m > c.n) {
    std::swap(c.m, c.n);
    c.transposed = true;
  }
}

inline void require_mnt(const RunConfig& c, bool need_t = true) {
  if (c.m < 1 || c.n < 1) throw UsageError("--m and --n must be positive");
  if (need_t && (c.t < 1 || c.t > std::min(c.m, c.n))) throw UsageError("--t must satisfy 1 <= t <= min(m, n)");
}

inline int int_value(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad integer '" + text + "' for " + what);
  }
}

/// Point grammar: zero | rank1 | normal:u=U,k=K | smooth | generic |
/// compound:PATH | file:PATH.
inline ExteriorPoint build_point(const std::string& desc, RunConfig& c) {
  auto shape_needed = [&] {
    normalize_shape(c);
    require_mnt(c);
  };
  if (desc == "zero") {
    shape_needed();
    return ExteriorPoint::zero(c.m, c.n, c.t);
  }
  if (desc == "rank1") {
    shape_needed();
    return normal_form({1, 0}, c.m, c.n, c.t);
  }
  if (desc == "smooth" || desc == "generic") {
    shape_needed();
    return compound(random_matrix(c.m, c.n, std::min(c.m, c.n), c.seed), c.t);
  }
  if (desc.rfind("normal:", 0) == 0) {
    shape_needed();
    int u = -1, k = -1;
    std::stringstream ss(desc.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("normal form expects u=U,k=K, got '" + item + "'");
      std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      if (key == "u") u = int_value(val, "u");
      else if (key == "k") k = int_value(val, "k");
      else throw UsageError("unknown normal form key '" + key + "'");
    }
    if (u < 0) throw UsageError("normal form needs u");
    if (k < 0) k = u <= 1 ? 0 : 1;
    if (!is_admissible({u, k}, c.m, c.n, c.t))
      throw UsageError("(u, k) = (" + std::to_string(u) + ", " + std::to_string(k) + ") is not admissible for (m, n, t) = (" +
                       std::to_string(c.m) + ", " + std::to_string(c.n) + ", " + std::to_string(c.t) + ")");
    return normal_form({u, k}, c.m, c.n, c.t);
  }
  if (desc.rfind("compound:", 0) == 0) {
    QMatrix b = load_matrix(desc.substr(9));
    if (b.rows() > b.cols()) {
      b = b.transpose();
      c.transposed = true;
    }
    c.m = static_cast<int>(b.rows());
    c.n = static_cast<int>(b.cols());
    require_mnt(c);
    return compound(b, c.t);
  }
  if (desc.rfind("file:", 0) == 0) {
    ExteriorPoint x;
    try {
      x = point_from_json(Json::parse(read_file(desc.substr(5))));
    } catch (const Json::exception& e) {
      throw UsageError("malformed point file: " + std::string(e.what()));
    }
    if (x.m > x.n) {
      x = transpose_point(x);
      c.transposed = true;
    }
    c.m = x.m;
    c.n = x.n;
    c.t = x.t;
    return x;
  }
  throw UsageError("unknown point '" + desc + "' (zero, rank1, normal:u=U,k=K, smooth, generic, compound:PATH, file:PATH)");
}

inline Json header(const std::string& command, const RunConfig& c) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["transposed"] = c.transposed;
  return j;
}

inline std::string prime_label(const OrbitType& o, int m, int n, int t) { return orbit_to_prime(o, m, n, t).label(); }

inline Json face_json(const PrimeIdeal& p) {
  Json f = Json::array();
  for (int x : p.face) f.push_back(x);
  return f;
}

inline std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(int_value(item, what));
  if (out.empty()) throw UsageError(what + " must be a comma-separated list");
  return out;
}

struct Emitter {
  const RunConfig& cfg;
  std::ostream& out;

  void json(const Json& doc) const { write(doc.dump(2) + "\n"); }
  void tsv(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) const {
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "\t" : "") + cells[i];
      s += "\n";
    };
    line(head);
    for (const auto& r : rows) line(r);
    write(s);
  }
  void write(const std::string& s) const {
    if (cfg.output.empty()) {
      out << s;
      return;
    }
    std::ofstream f(cfg.output);
    if (!f) throw UsageError("cannot write '" + cfg.output + "'");
    f << s;
  }
};

/// One relation family: named relations that must expand to zero.
inline std::vector<std::pair<std::string, RelationExpr>> family_relations(const std::string& family, int t, int n, int s,
                                                                          std::uint64_t seed, int count) {
  std::vector<std::pair<std::string, RelationExpr>> out;
  if (family == "plu2") {
    out.emplace_back("plu2", plu2_relation());
  } else if (family == "plucker") {
    if (t < 1) throw UsageError("plucker needs --t >= 1");
    if (n <= 0) n = t + 2;
    if (n < t + 1) throw UsageError("plucker needs n >= t + 1");
    if (n > 8 || t > 4) throw UsageError("plucker is limited to t <= 4 and n <= 8");
    int i = 0;
    for (auto& r : all_plucker_relations(t, n)) out.emplace_back("plucker#" + std::to_string(i++), std::move(r));
  } else if (family == "twelve-term") {
    out.emplace_back("twelve-term", twelve_term_relation());
  } else if (family == "twelve-term-3") {
    out.emplace_back("twelve-term-3", append_index(twelve_term_relation()));
  } else if (family == "genplu2") {
    if (t < 1 || t > 4) throw UsageError("genplu2 needs 1 <= t <= 4");
    std::vector<int> ss;
    if (s >= 0) ss.push_back(s);
    else
      for (int x = 0; x <= t; ++x) ss.push_back(x);
    for (int x : ss) {
      if (x > t) throw UsageError("genplu2 needs 0 <= s <= t");
      out.emplace_back("genplu2(s=" + std::to_string(x) + ",t=" + std::to_string(t) + ")", genplu2_relation(x, t));
    }
  } else if (family == "pushforward") {
    if (t < 2 || t > 3) throw UsageError("pushforward needs t in {2, 3}");
    std::mt19937_64 rng(seed);
    const int p = t + 2;
    std::uniform_int_distribution<int> col(1, p);
    RelationExpr base = plucker_relation(exteria::detail::iota_vec(1, t - 1), exteria::detail::iota_vec(t, 2 * t));
    for (int i = 0; i < count; ++i) {
      QMatrix a = random_integer_matrix(t, p, rng, -3, 3);
      std::vector<int> u(2 * t);
      for (auto& x : u) x = col(rng);
      out.emplace_back("pushforward#" + std::to_string(i), pushforward_relation(base, a, u));
    }
  } else if (family == "degree3") {
    out = degree3_catalog();
  } else {
    throw UsageError("unknown family '" + family +
                     "' (plu2, plucker, twelve-term, twelve-term-3, genplu2, pushforward, degree3)");
  }
  return out;
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact computations with compound matrices and the varieties X_t(m, n)", "exteria"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  auto add_common = [&](CLI::App* sub, bool shape) {
    if (shape) {
      sub->add_option("--m", cfg.m, "Rows");
      sub->add_option("--n", cfg.n, "Columns");
      sub->add_option("--t", cfg.t, "Exterior degree");
    }
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--output", cfg.output, "Write the report to this file");
    sub->add_option("--threads", cfg.threads, "Worker threads (default EXTERIA_THREADS or 1)");
  };

  // compound
  auto* c_compound = app.add_subcommand("compound", "Compound matrix Lambda_t(B)");
  add_common(c_compound, true);
  std::string matrix_path;
  int random_rank = -1;
  c_compound->add_option("--matrix", matrix_path, "Matrix text file ('m n' then rows)");
  c_compound->add_option("--rank", random_rank, "Use a seeded random m x n matrix of this rank");

  // small-rank
  auto* c_small = app.add_subcommand("small-rank", "Small rank of a point of L_t(m, n)");
  add_common(c_small, true);
  std::string point_spec = "generic", strategy = "randomized";
  c_small->add_option("--point", point_spec, "Point (zero, rank1, normal:u=U,k=K, smooth, generic, compound:PATH, file:PATH)");
  c_small->add_option("--strategy", strategy, "randomized or certificate")->check(CLI::IsMember({"randomized", "certificate"}));
  c_small->add_option("--trials", cfg.trials, "Random trials")->capture_default_str();

  // classify
  auto* c_classify = app.add_subcommand("classify", "Orbit, dimension and prime of a point");
  add_common(c_classify, true);
  c_classify->add_option("--point", point_spec, "Point");
  c_classify->add_option("--trials", cfg.trials, "Random trials")->capture_default_str();

  // normal-form
  auto* c_normal = app.add_subcommand("normal-form", "Normal form d_{u,u+k-1}, or the list of all orbits");
  add_common(c_normal, true);
  std::optional<int> nf_u, nf_k;
  c_normal->add_option("--u", nf_u, "Small rank u");
  c_normal->add_option("--k", nf_k, "k (rank C(u+k-1, u-1))");
  c_normal->add_option("--format", cfg.format, "json or tsv (tsv for the orbit list)")->check(CLI::IsMember({"json", "tsv"}));

  // testfn
  auto* c_testfn = app.add_subcommand("testfn", "Values of the test functions f_v");
  add_common(c_testfn, true);
  c_testfn->add_option("--point", point_spec, "Point");

  // shapes
  auto* c_shapes = app.add_subcommand("shapes", "Shape statistics gamma, pi, epsilon");
  add_common(c_shapes, true);
  std::string shape_text;
  int boxes = -1, max_part = -1;
  c_shapes->add_option("--shape", shape_text, "Parts, e.g. 3,2,2");
  c_shapes->add_option("--boxes", boxes, "Check the pi formula on every shape with this many boxes");
  c_shapes->add_option("--max-part", max_part, "Largest part when enumerating");
  c_shapes->add_option("--format", cfg.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));

  // primes
  auto* c_primes = app.add_subcommand("primes", "G-stable primes of A_t with faces and orbits");
  add_common(c_primes, true);
  c_primes->add_option("--format", cfg.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));

  // relations
  auto* c_rel = app.add_subcommand("relations", "Relation families among minors");
  c_rel->require_subcommand(1);
  std::string family, expr_text, rel_file, mode = "exact";
  int rel_t = 2, rel_n = -1, rel_s = -1, rel_count = 10;
  auto add_family = [&](CLI::App* sub) {
    add_common(sub, false);
    sub->add_option("--family", family, "plu2, plucker, twelve-term, twelve-term-3, genplu2, pushforward, degree3");
    sub->add_option("--t", rel_t, "Minor size")->capture_default_str();
    sub->add_option("--n", rel_n, "Columns (plucker)");
    sub->add_option("--s", rel_s, "s (genplu2; default all)");
    sub->add_option("--count", rel_count, "Random instances (pushforward)")->capture_default_str();
  };
  auto* c_gen = c_rel->add_subcommand("gen", "Print a relation family");
  add_family(c_gen);
  auto* c_verify = c_rel->add_subcommand("verify", "Check that relations expand to zero");
  add_family(c_verify);
  c_verify->add_option("--expr", expr_text, "Relation text, e.g. '+[12|12][34|34]-[13|12][24|34]'");
  c_verify->add_option("--input", rel_file, "Relation JSON file");
  c_verify->add_option("--mode", mode, "exact or probabilistic")->check(CLI::IsMember({"exact", "probabilistic"}));
  c_verify->add_option("--trials", cfg.trials, "Evaluations (probabilistic)")->capture_default_str();
  c_verify->add_option("--modulus", cfg.modulus, "Prime modulus (probabilistic)")->capture_default_str();

  // localize
  auto* c_loc = app.add_subcommand("localize", "Certify K[Phi_0][1/F] = A_t[1/F] minor by minor");
  add_common(c_loc, true);
  LocalizeOptions lopt;
  bool full = false;
  int phi_level = -1;
  c_loc->add_option("--k-max", lopt.k_max, "Largest power of the cofactor")->capture_default_str();
  c_loc->add_option("--deg-bound", lopt.degree_bound, "Generator products of at most this many factors (default t+2)");
  c_loc->add_flag("--full", full, "Include every certificate identity");
  c_loc->add_option("--phi", phi_level, "Only list Phi_LEVEL (0, 1 or 2)");
  c_loc->add_option("--format", cfg.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));

  // tangent
  auto* c_tan = app.add_subcommand("tangent", "Tangent dimension from the degree <= d relations");
  add_common(c_tan, true);
  int degree = 2;
  std::string tan_point = "rank1";
  c_tan->add_option("--deg", degree, "Relation degree bound (1..3)")->capture_default_str();
  c_tan->add_option("--point", tan_point, "zero, rank1, smooth, normal:u=U,k=K, compound:PATH or file:PATH")
      ->capture_default_str();

  // fibers
  auto* c_fib = app.add_subcommand("fibers", "Compare Lambda_t(f) and Lambda_t(g)");
  add_common(c_fib, true);
  std::string f_path, g_path, sample;
  int fib_rank = -1;
  c_fib->add_option("--f", f_path, "Matrix file for f");
  c_fib->add_option("--g", g_path, "Matrix file for g");
  c_fib->add_option("--sample", sample, "Seeded pair: same, negated, twisted or unrelated")
      ->check(CLI::IsMember({"same", "negated", "twisted", "unrelated"}));
  c_fib->add_option("--rank", fib_rank, "Rank of the sampled f (default t + 1)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (cfg.threads == 0) cfg.threads = default_threads();
  const detail::Emitter emit{cfg, out};

  try {
    if (*c_compound) {
      QMatrix b;
      if (!matrix_path.empty()) {
        b = detail::load_matrix(matrix_path);
      } else {
        detail::require_mnt(cfg, false);
        if (random_rank < 0) random_rank = std::min(cfg.m, cfg.n);
        if (random_rank > std::min(cfg.m, cfg.n)) throw UsageError("--rank exceeds min(m, n)");
        b = random_matrix(cfg.m, cfg.n, random_rank, cfg.seed);
      }
      if (b.rows() > b.cols()) {
        b = b.transpose();
        cfg.transposed = true;
      }
      cfg.m = static_cast<int>(b.rows());
      cfg.n = static_cast<int>(b.cols());
      detail::require_mnt(cfg);
      ExteriorPoint x = compound(b, cfg.t);
      Json j = detail::header("compound", cfg);
      j["m"] = cfg.m;
      j["n"] = cfg.n;
      j["t"] = cfg.t;
      j["matrix"] = to_json(b);
      j["rank"] = rank(b);
      j["compound_rank"] = x.rank();
      j["expected_compound_rank"] = binomial(static_cast<long long>(rank(b)), cfg.t);
      j["point"] = to_json(x);
      emit.json(j);
      return 0;
    }

    if (*c_small) {
      ExteriorPoint x = detail::build_point(point_spec, cfg);
      auto strat = strategy == "certificate" ? SmallRankStrategy::Certificate : SmallRankStrategy::Randomized;
      Json j = detail::header("small-rank", cfg);
      j["m"] = x.m;
      j["n"] = x.n;
      j["t"] = x.t;
      j["point"] = point_spec;
      j["strategy"] = strategy;
      j["sr"] = small_rank(x, strat, cfg.seed, cfg.trials);
      j["rank"] = x.rank();
      emit.json(j);
      return 0;
    }

    if (*c_classify) {
      ExteriorPoint x = detail::build_point(point_spec, cfg);
      OrbitDescriptor d = classify(x, cfg.seed, cfg.trials);
      Json j = detail::header("classify", cfg);
      j["m"] = x.m;
      j["n"] = x.n;
      j["t"] = x.t;
      j["point"] = point_spec;
      j["in_variety"] = d.in_variety;
      j["sr"] = d.small_rank;
      j["rank"] = d.rank;
      if (d.in_variety) {
        j["u"] = d.orbit->u;
        j["k"] = d.orbit->k;
        j["dim"] = d.dimension;
        j["prime"] = d.prime->label();
      } else {
        j["reason"] = d.reason;
      }
      emit.json(j);
      return 0;
    }

    if (*c_normal) {
      detail::normalize_shape(cfg);
      detail::require_mnt(cfg);
      if (nf_u) {
        OrbitType o{*nf_u, nf_k.value_or(*nf_u <= 1 ? 0 : 1)};
        if (!is_admissible(o, cfg.m, cfg.n, cfg.t)) throw UsageError("(u, k) is not admissible for these (m, n, t)");
        ExteriorPoint x = normal_form(o, cfg.m, cfg.n, cfg.t);
        Json j = detail::header("normal-form", cfg);
        j["u"] = o.u;
        j["k"] = o.k;
        j["rank"] = x.rank();
        j["dim"] = orbit_dimension(o, cfg.m, cfg.n, cfg.t);
        j["prime"] = detail::prime_label(o, cfg.m, cfg.n, cfg.t);
        j["point"] = to_json(x);
        emit.json(j);
        return 0;
      }
      auto orbits = admissible_orbits(cfg.m, cfg.n, cfg.t);
      if (cfg.format == "tsv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& o : orbits)
          rows.push_back({std::to_string(o.u), std::to_string(o.k), std::to_string(orbit_rank(o)),
                          std::to_string(orbit_dimension(o, cfg.m, cfg.n, cfg.t)),
                          detail::prime_label(o, cfg.m, cfg.n, cfg.t)});
        emit.tsv({"u", "k", "rank", "dim", "prime"}, rows);
        return 0;
      }
      Json j = detail::header("normal-form", cfg);
      j["m"] = cfg.m;
      j["n"] = cfg.n;
      j["t"] = cfg.t;
      j["count"] = orbits.size();
      Json list = Json::array();
      for (const auto& o : orbits) {
        Json e;
        e["u"] = o.u;
        e["k"] = o.k;
        e["rank"] = orbit_rank(o);
        e["dim"] = orbit_dimension(o, cfg.m, cfg.n, cfg.t);
        e["prime"] = detail::prime_label(o, cfg.m, cfg.n, cfg.t);
        list.push_back(std::move(e));
      }
      j["orbits"] = std::move(list);
      emit.json(j);
      return 0;
    }

    if (*c_testfn) {
      ExteriorPoint x = detail::build_point(point_spec, cfg);
      if (x.m <= x.t || x.n <= x.t) throw UsageError("testfn needs m, n > t");
      Json j = detail::header("testfn", cfg);
      j["m"] = x.m;
      j["n"] = x.n;
      j["t"] = x.t;
      j["point"] = point_spec;
      Json vals = Json::array();
      for (int v = 0; v <= x.t + 1; ++v) {
        Json e;
        e["v"] = v;
        e["value"] = f_v_eval(x, v).str();
        vals.push_back(std::move(e));
      }
      j["f"] = std::move(vals);
      emit.json(j);
      return 0;
    }

    if (*c_shapes) {
      if (cfg.t < 1) throw UsageError("shapes needs --t >= 1");
      const int bound = cfg.m > 0 && cfg.n > 0 ? std::min(cfg.m, cfg.n) : 0;
      if (!shape_text.empty()) {
        Shape s(detail::parse_int_list(shape_text, "--shape"), bound);
        const int top = std::max(cfg.t, bound > 0 ? bound : s.largest());
        Json j = detail::header("shapes", cfg);
        j["shape"] = s.parts();
        j["t"] = cfg.t;
        Json g = Json::array(), p = Json::array(), checks = Json::array();
        for (int i = 1; i <= (bound > 0 ? bound + 1 : s.largest() + 1); ++i) g.push_back(s.gamma(i));
        for (int i = 1; i <= top; ++i) p.push_back(s.pi(i, cfg.t).str());
        bool all = true;
        for (int u = 3; u <= std::max(cfg.t, s.bound()); ++u) {
          bool ok = pi_formula_check(s, u, cfg.t);
          all = all && ok;
          Json e;
          e["u"] = u;
          e["pi"] = s.pi(u, cfg.t).str();
          e["formula"] = pi_formula_rhs(s, u, cfg.t).str();
          e["holds"] = ok;
          checks.push_back(std::move(e));
        }
        j["gamma"] = std::move(g);
        j["pi"] = std::move(p);
        j["epsilon"] = s.epsilon(bound > 0 ? bound : std::max(1, s.largest()));
        j["in_At_support"] = in_At_support(s, cfg.t);
        j["pi_formula"] = std::move(checks);
        emit.json(j);
        return all ? 0 : 1;
      }
      if (boxes < 0) throw UsageError("shapes needs --shape or --boxes");
      if (boxes > 30) throw UsageError("--boxes is limited to 30");
      const int cap = max_part > 0 ? max_part : (bound > 0 ? bound : boxes);
      auto list = shapes_with_boxes(boxes, cap, bound);
      std::size_t failures = 0, support = 0;
      std::vector<std::vector<std::string>> rows;
      for (const auto& s : list) {
        bool ok = true;
        for (int u = 3; u <= std::max(cfg.t, bound > 0 ? bound : s.largest()); ++u) {
          Shape sb(s.parts(), bound > 0 ? bound : std::max(cfg.t, s.largest()));
          ok = ok && pi_formula_check(sb, u, cfg.t);
        }
        bool sup = in_At_support(s, cfg.t);
        failures += !ok;
        support += sup;
        rows.push_back({s.str(), std::to_string(s.gamma(1)), s.pi(2, cfg.t).str(), sup ? "1" : "0", ok ? "1" : "0"});
      }
      if (cfg.format == "tsv") {
        emit.tsv({"shape", "gamma1", "pi2", "in_At_support", "pi_formula"}, rows);
      } else {
        Json j = detail::header("shapes", cfg);
        j["boxes"] = boxes;
        j["t"] = cfg.t;
        j["shapes"] = list.size();
        j["in_At_support"] = support;
        j["pi_formula_failures"] = failures;
        emit.json(j);
      }
      return failures ? 1 : 0;
    }

    if (*c_primes) {
      if (cfg.n == 0) cfg.n = cfg.m;
      detail::normalize_shape(cfg);
      detail::require_mnt(cfg);
      auto cat = prime_catalog(cfg.m, cfg.t);
      auto orbits = admissible_orbits(cfg.m, cfg.n, cfg.t);
      auto orbit_of = [&](const PrimeIdeal& p) -> std::optional<OrbitType> {
        for (const auto& o : orbits)
          if (orbit_to_prime(o, cfg.m, cfg.n, cfg.t) == p) return o;
        return std::nullopt;
      };
      if (cfg.format == "tsv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : cat) {
          std::string face;
          for (int f : p.face) face += (face.empty() ? "" : ",") + std::to_string(f);
          auto o = orbit_of(p);
          rows.push_back({p.label(), face, o ? std::to_string(o->u) : "", o ? std::to_string(o->k) : "",
                          o ? std::to_string(orbit_dimension(*o, cfg.m, cfg.n, cfg.t)) : ""});
        }
        emit.tsv({"prime", "face", "u", "k", "dim"}, rows);
        return 0;
      }
      Json j = detail::header("primes", cfg);
      j["m"] = cfg.m;
      j["n"] = cfg.n;
      j["t"] = cfg.t;
      j["count"] = cat.size();
      Json list = Json::array();
      for (const auto& p : cat) {
        Json e;
        e["prime"] = p.label();
        e["face"] = detail::face_json(p);
        if (auto o = orbit_of(p)) {
          e["orbit"] = {{"u", o->u}, {"k", o->k}};
          e["dim"] = orbit_dimension(*o, cfg.m, cfg.n, cfg.t);
        }
        list.push_back(std::move(e));
      }
      j["primes"] = std::move(list);
      emit.json(j);
      return 0;
    }

    if (*c_rel) {
      const bool verify = static_cast<bool>(*c_verify);
      std::vector<std::pair<std::string, RelationExpr>> rels;
      std::string label = family;
      if (verify && !expr_text.empty()) {
        try {
          rels.emplace_back("expr", parse_relation(expr_text));
        } catch (const std::invalid_argument& e) {
          throw UsageError(std::string("bad --expr: ") + e.what());
        }
        label = "expr";
      } else if (verify && !rel_file.empty()) {
        Json doc;
        try {
          doc = Json::parse(detail::read_file(rel_file));
        } catch (const Json::exception& e) {
          throw UsageError("malformed relation file: " + std::string(e.what()));
        }
        rels.emplace_back(rel_file, relation_from_json(doc));
        label = "file";
      } else {
        if (family.empty()) throw UsageError("relations needs --family");
        rels = detail::family_relations(family, rel_t, rel_n, rel_s, cfg.seed, rel_count);
      }
      for (const auto& [name, r] : rels) {
        auto [rows, cols] = r.extent();
        if (rows > 8 || cols > 10) throw UsageError("relation " + name + " is larger than 8 x 10; refusing to expand");
      }
      Json j = detail::header(verify ? "relations verify" : "relations gen", cfg);
      j["family"] = label;
      if (!verify) {
        Json list = Json::array();
        for (const auto& [name, r] : rels) {
          Json e;
          e["name"] = name;
          e["text"] = r.str();
          e["terms"] = to_json(r);
          list.push_back(std::move(e));
        }
        j["relations"] = std::move(list);
        emit.json(j);
        return 0;
      }
      const auto zmode = mode == "exact" ? ZeroTestMode::Exact : ZeroTestMode::Probabilistic;
      Json failures = Json::array();
      for (const auto& [name, r] : rels) {
        ZeroVerdict v = is_zero(r, zmode, cfg.seed, cfg.trials, cfg.modulus);
        if (!v.zero) failures.push_back({{"name", name}, {"witness", v.witness}});
      }
      j["mode"] = mode;
      j["count"] = rels.size();
      j["status"] = failures.empty() ? "zero" : "nonzero";
      if (!failures.empty()) j["failures"] = std::move(failures);
      emit.json(j);
      return j["status"] == "zero" ? 0 : 1;
    }

    if (*c_loc) {
      detail::normalize_shape(cfg);
      detail::require_mnt(cfg);
      if (cfg.t >= cfg.m) throw UsageError("localize needs t < min(m, n)");
      if (phi_level >= 0) {
        if (phi_level > 2) throw UsageError("--phi must be 0, 1 or 2");
        auto phi = phi_set(phi_level, cfg.m, cfg.n, cfg.t);
        if (cfg.format == "tsv") {
          std::vector<std::vector<std::string>> rows;
          for (const auto& s : phi) rows.push_back({s.str()});
          emit.tsv({"minor"}, rows);
          return 0;
        }
        Json j = detail::header("localize", cfg);
        j["m"] = cfg.m;
        j["n"] = cfg.n;
        j["t"] = cfg.t;
        j["level"] = phi_level;
        j["size"] = phi.size();
        Json list = Json::array();
        for (const auto& s : phi) list.push_back(s.str());
        j["minors"] = std::move(list);
        emit.json(j);
        return 0;
      }
      if (cfg.m * cfg.n > 25) throw UsageError("localize is limited to m * n <= 25");
      if (lopt.k_max < 0 || lopt.k_max > 6) throw UsageError("--k-max must lie in 0..6");
      if (lopt.degree_bound > cfg.t + 4) throw UsageError("--deg-bound is limited to t + 4");
      lopt.threads = cfg.threads;
      lopt.seed = cfg.seed;
      LocalizeReport rep = verify_localize(cfg.m, cfg.n, cfg.t, lopt);
      if (cfg.format == "tsv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& e : rep.entries)
          rows.push_back({e.minor.str(), std::to_string(e.level), std::to_string(e.step), std::to_string(e.k),
                          std::to_string(e.exponent), std::to_string(e.terms), e.certified && e.verified ? "1" : "0"});
        emit.tsv({"minor", "level", "step", "k", "exponent", "terms", "certified"}, rows);
        return rep.all_certified() ? 0 : 1;
      }
      Json j = detail::header("localize", cfg);
      j["m"] = cfg.m;
      j["n"] = cfg.n;
      j["t"] = cfg.t;
      j["mn"] = cfg.m * cfg.n;
      j["phi_sizes"] = {rep.phi_sizes[0], rep.phi_sizes[1], rep.phi_sizes[2]};
      j["denominator_identity"] = rep.denominator_identity_holds;
      j["F_in_phi0"] = rep.F_in_phi0;
      j["k_max"] = lopt.k_max;
      j["deg_bound"] = lopt.degree_bound < 0 ? cfg.t + 2 : lopt.degree_bound;
      Json table = Json::array();
      for (const auto& e : rep.entries) {
        Json row;
        row["minor"] = e.minor.str();
        row["level"] = e.level;
        row["step"] = e.step;
        row["k"] = e.k;
        row["exponent"] = e.exponent;
        row["terms"] = e.terms;
        Json borrowed = Json::array();
        for (const auto& b : e.borrowed) borrowed.push_back(b.str());
        row["borrowed"] = std::move(borrowed);
        row["certified"] = e.certified;
        row["verified"] = e.verified;
        if (full && e.level > 0 && e.certified) row["identity"] = to_json(e.identity);
        table.push_back(std::move(row));
      }
      j["certificates"] = std::move(table);
      j["all_certified"] = rep.all_certified();
      emit.json(j);
      return rep.all_certified() ? 0 : 1;
    }

    if (*c_tan) {
      ExteriorPoint x = detail::build_point(tan_point, cfg);
      RelationIdealSlice slice;
      try {
        slice = relation_ideal_slice(x.m, x.n, x.t, degree, cfg.threads);
      } catch (const std::length_error& e) {
        throw UsageError(e.what());
      }
      const std::size_t dim = tangent_dim_at(x, slice);
      const long vdim = variety_dimension(x.m, x.n, x.t);
      Json j = detail::header("tangent", cfg);
      j["ambient"] = {{"m", x.m}, {"n", x.n}, {"t", x.t}, {"variables", slice.variables()}};
      j["point"] = tan_point;
      j["deg"] = degree;
      j["slice_dimension"] = slice.dimension();
      j["tangent_dim"] = dim;
      j["variety_dim"] = vdim;
      const long d = static_cast<long>(dim);
      j["verdict"] = d == vdim ? "smooth" : (d > vdim ? "singularity-consistent" : "inconsistent");
      if (sing_count_in_range(x.m, x.n, x.t)) {
        SingCount sc = sing_counting_check(x.m, x.n, x.t);
        j["sing_count"] = {{"enumerated", sc.enumerated}, {"closed_form", sc.closed_form}, {"mn", sc.mn}};
      }
      emit.json(j);
      return d >= vdim ? 0 : 1;
    }

    if (*c_fib) {
      QMatrix f, g;
      if (!sample.empty()) {
        detail::require_mnt(cfg);
        const int r = fib_rank < 0 ? cfg.t + 1 : fib_rank;
        if (r < cfg.t || r > std::min(cfg.m, cfg.n)) throw UsageError("--rank must lie in t..min(m, n)");
        // f = A B with A m x r, B r x n; the twist is A T B with T invertible.
        std::mt19937_64 rng(cfg.seed);
        QMatrix a = random_integer_matrix(cfg.m, r, rng), b = random_integer_matrix(r, cfg.n, rng);
        f = a * b;
        if (sample == "same") g = f;
        else if (sample == "negated") g = f * Rational(-1);
        else if (sample == "unrelated") g = random_integer_matrix(cfg.m, r, rng) * random_integer_matrix(r, cfg.n, rng);
        else g = a * random_invertible(r, cfg.seed + 1) * b;
      } else {
        if (f_path.empty() || g_path.empty()) throw UsageError("fibers needs --f and --g, or --sample");
        f = detail::load_matrix(f_path);
        g = detail::load_matrix(g_path);
        if (f.rows() != g.rows() || f.cols() != g.cols()) throw UsageError("f and g differ in shape");
        cfg.m = static_cast<int>(f.rows());
        cfg.n = static_cast<int>(f.cols());
        detail::require_mnt(cfg);
      }
      const auto tt = static_cast<std::size_t>(cfg.t);
      const std::size_t rf = rank(f), rg = rank(g);
      Json j = detail::header("fibers", cfg);
      j["m"] = cfg.m;
      j["n"] = cfg.n;
      j["t"] = cfg.t;
      if (!sample.empty()) j["sample"] = sample;
      j["rank_f"] = rf;
      j["rank_g"] = rg;
      QMatrix cf = compound_matrix(f, cfg.t), cg = compound_matrix(g, cfg.t);
      j["compounds_equal"] = cf == cg;
      if (rf > tt && rg > tt) {
        j["case"] = "rank > t";
        j["same_fiber"] = same_fiber_high_rank(f, g, cfg.t);
      } else if (rf == tt && rg == tt) {
        RankTFiber r = same_fiber_rank_t(f, g, cfg.t);
        j["case"] = "rank = t";
        j["same_line"] = r.same_line;
        if (r.same_line) j["scalar"] = r.scalar.str();
        j["same_fiber"] = r.same_line && r.scalar_is_one;
      } else {
        j["case"] = "other";
      }
      emit.json(j);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace exteria::cli
