#include "moduli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "moduli/counting.hpp"
#include "moduli/io.hpp"
#include "moduli/quiver.hpp"

namespace moduli::cli {

namespace {

std::string join(const std::vector<Index>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

const char* yes(bool b) { return b ? "true" : "false"; }

AnySystem load_system(const std::string& path) { return system_from_json(read_json_file(path)); }

template <class S>
void print_system(std::ostream& os, const LinearSystem<S>& sys, const std::string& prime = "") {
  os << "A" << prime << " =\n" << format_matrix(sys.A());
  os << "B" << prime << " =\n" << format_matrix(sys.B());
  os << "C" << prime << " =\n" << format_matrix(sys.C());
}

template <class S>
void print_header(std::ostream& os, const LinearSystem<S>& sys) {
  os << "field: " << sys.field().name() << "\n";
  os << "type: m=" << sys.m() << " n=" << sys.n() << " p=" << sys.p() << "\n";
}

void print_code(std::ostream& os, const KalmanCode& code) {
  std::vector<Index> cols = code.columns();
  for (auto& c : cols) ++c;
  os << "kalman_code: j=(" << join(cols) << ") p=(" << join(code.column_heights()) << ")\n";
  std::istringstream art(code.ascii());
  for (std::string line; std::getline(art, line);) os << "  " << line << "\n";
}

template <class S>
void print_point(std::ostream& os, const std::string& label, const GrassmannPoint<S>& pt) {
  os << label << ": k=" << pt.k() << " N=" << pt.ambient() << " pivots=" << pt.pivots().to_string() << "\n";
  os << format_matrix(pt.rep());
}

// analyze

struct AnalyzeOptions {
  std::string system;
  bool json = false;
  bool oracle = false;
};

template <class S>
void analyze(std::ostream& out, const LinearSystem<S>& sys, const AnalyzeOptions& opt) {
  const auto cls = classify(sys);
  const QuiverRep<S> rep(sys);
  auto mode = SubrepMode::RankCriterion;
  if (opt.oracle) {
    require_field<Fp>(sys.field());
    mode = SubrepMode::Oracle;
  }
  const auto subreps = subrep_dimvectors(rep, mode);
  const bool simple = subreps.empty();
  const bool plus = is_theta_stable(rep, theta_plus(sys.n()), mode);
  const bool minus = is_theta_stable(rep, theta_minus(sys.n()), mode);
  std::optional<KalmanCode> code;
  std::optional<MultiIndex> cell, index;
  if (cls.cc) {
    code = kalman_code(sys);
    index = multiindex_from_code(*code);
    if (sys.m() + sys.n() - 1 > 0) cell = schubert_cell_of(psi(sys));
  }

  if (opt.json) {
    json j;
    j["field"] = field_to_json(sys.field());
    j["m"] = sys.m();
    j["n"] = sys.n();
    j["p"] = sys.p();
    j["cc"] = cls.cc;
    j["co"] = cls.co;
    j["canonical"] = cls.canonical;
    j["rank_c"] = cls.rank_c;
    j["rank_o"] = cls.rank_o;
    j["simple"] = simple;
    j["theta_plus_stable"] = plus;
    j["theta_minus_stable"] = minus;
    json dims = json::array();
    for (const auto& d : subreps) dims.push_back({d.left, d.right});
    j["subrep_dimvectors"] = std::move(dims);
    j["kalman_code"] = code ? kalman_code_to_json(*code) : json(nullptr);
    j["multi_index"] = index ? json(index->one_based()) : json(nullptr);
    j["schubert_cell"] = cell ? json(cell->one_based()) : json(nullptr);
    out << j.dump(2) << "\n";
    return;
  }
  print_header(out, sys);
  out << "cc=" << yes(cls.cc) << " co=" << yes(cls.co) << " canonical=" << yes(cls.canonical) << "\n";
  out << "rank_c=" << cls.rank_c << " rank_o=" << cls.rank_o << "\n";
  out << "simple=" << yes(simple) << " theta_plus_stable=" << yes(plus) << " theta_minus_stable=" << yes(minus)
      << "\n";
  out << "subrep_dimvectors:";
  if (subreps.empty()) out << " none";
  for (const auto& d : subreps) out << " (" << d.left << "," << d.right << ")";
  out << "\n";
  if (code) {
    print_code(out, *code);
    out << "multi_index: " << index->to_string() << "\n";
    out << "schubert_cell: " << (cell ? cell->to_string() : std::string("{}")) << "\n";
  } else {
    out << "kalman_code: none\n";
    out << "schubert_cell: none\n";
  }
}

// canon

template <class S>
void canon(std::ostream& out, const LinearSystem<S>& sys, bool as_json) {
  const auto cf = canonical_form(sys);
  if (as_json) {
    json j;
    j["kalman_code"] = kalman_code_to_json(cf.code);
    j["g"] = matrix_to_json(cf.g);
    j["system"] = system_to_json(cf.system);
    out << j.dump(2) << "\n";
    return;
  }
  print_header(out, sys);
  print_code(out, cf.code);
  out << "g =\n" << format_matrix(cf.g);
  print_system(out, cf.system, "'");
}

// embed

json locus_json(const LocusMembership& l) {
  return json{{"in_cc", l.in_cc}, {"in_co", l.in_co}, {"in_canonical", l.in_canonical}};
}

template <class S>
void embed(std::ostream& out, const LinearSystem<S>& sys, bool as_json) {
  const auto cls = classify(sys);
  std::optional<GrassmannPoint<S>> psi_pt;
  if (cls.cc && sys.m() + sys.n() - 1 > 0) psi_pt = psi(sys);
  const auto g = gamma(sys);
  const auto loc = locus_membership(g, sys.m(), sys.p());
  std::optional<Index> stratum;
  if (loc.in_cc) stratum = stratum_dimension(g);
  std::optional<InfiniteGrassmannPoint<S>> g_co;
  std::optional<LocusMembership> loc_co;
  if (cls.co) {
    g_co = gamma_observable(sys);
    loc_co = locus_membership(*g_co, sys.m(), sys.p());
  }

  if (as_json) {
    json j;
    j["psi"] = psi_pt ? point_to_json(*psi_pt) : json(nullptr);
    j["schubert_cell"] = psi_pt ? json(schubert_cell_of(*psi_pt).one_based()) : json(nullptr);
    j["gamma"] = point_to_json(g.point);
    j["gamma_locus"] = locus_json(loc);
    j["stratum"] = stratum ? json(*stratum) : json(nullptr);
    j["gamma_co"] = g_co ? point_to_json(g_co->point) : json(nullptr);
    j["gamma_co_locus"] = loc_co ? locus_json(*loc_co) : json(nullptr);
    out << j.dump(2) << "\n";
    return;
  }
  print_header(out, sys);
  if (psi_pt) {
    print_point(out, "psi", *psi_pt);
    out << "schubert_cell: " << schubert_cell_of(*psi_pt).to_string() << "\n";
  } else {
    out << "psi: none\n";
  }
  print_point(out, "gamma", g.point);
  out << "locus: in_cc=" << yes(loc.in_cc) << " in_co=" << yes(loc.in_co) << " in_canonical=" << yes(loc.in_canonical)
      << "\n";
  out << "stratum: " << (stratum ? std::to_string(*stratum) : std::string("none")) << "\n";
  if (g_co) {
    print_point(out, "gamma_co", g_co->point);
    out << "locus_co: in_cc=" << yes(loc_co->in_cc) << " in_co=" << yes(loc_co->in_co)
        << " in_canonical=" << yes(loc_co->in_canonical) << "\n";
  }
}

// census

struct CensusArgs {
  int m = 1;
  int p = 1;
  int n_min = 0;
  int n_max = 2;
  std::vector<std::uint32_t> qs{2};
  bool dual = false;
  std::string mode = "exhaustive";
  unsigned threads = 0;
};

std::uint64_t census_bound() {
  const char* env = std::getenv("MODULI_SYS_CENSUS_BOUND");
  if (!env) return kDefaultCensusBound;
  const std::string text(env);
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::ParseError, "MODULI_SYS_CENSUS_BOUND must be a nonnegative integer");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::ParseError, "MODULI_SYS_CENSUS_BOUND is out of range");
  }
}

void census(std::ostream& out, const CensusArgs& a) {
  if (a.n_min > a.n_max) throw Error(ErrorCode::IndexOutOfRange, "--n-min exceeds --n-max");
  CensusOptions opt;
  opt.bound = census_bound();
  opt.threads = a.threads;
  opt.mode = a.mode == "canonical" ? CensusMode::CanonicalForms : CensusMode::Exhaustive;
  for (auto q : a.qs) Field::prime(q);
  // compute everything first so a failure leaves no partial table
  std::vector<CensusReport> rows;
  for (auto q : a.qs) {
    for (int n = a.n_min; n <= a.n_max; ++n) {
      rows.push_back(a.dual ? census_co(a.m, n, a.p, q, opt) : census_cc(a.m, n, a.p, q, opt));
    }
  }
  write_census_header(out);
  for (const auto& r : rows) write_census_row(out, r);
}

// realize

template <class S>
void realize_cmd(std::ostream& out, const MarkovSequence<S>& seq, bool as_json) {
  const auto prof = realizability_order(seq);
  const auto sys = realize(seq);
  const bool ok = verify_realization(sys, seq);
  if (as_json) {
    json j = system_to_json(sys);
    j["r"] = prof->r;
    j["s"] = prof->s;
    j["verify"] = ok;
    out << j.dump(2) << "\n";
    return;
  }
  print_header(out, sys);
  out << "hankel_order: r=" << prof->r << " s=" << prof->s << "\n";
  out << "n=" << sys.n() << " verify=" << yes(ok) << "\n";
  print_system(out, sys);
}

// random

struct RandomArgs {
  std::string field = "Q";
  int m = 1;
  int n = 2;
  int p = 1;
  std::uint64_t seed = 0;
  int range = 3;
  bool cc = false;
  bool canonical = false;
  int attempts = 10000;
};

Field parse_field_flag(const std::string& text) {
  if (text == "Q") return Field::rationals();
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return Field::prime(std::stoull(text));
  }
  return field_from_json(json(text));
}

template <class S>
LinearSystem<S> random_system(const Field& f, const RandomArgs& a, std::mt19937_64& rng) {
  auto draw = [&](Index rows, Index cols) {
    Mat<S> out = zeros<S>(f, rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) {
        long long v = 0;
        if (f.is_prime_field()) {
          v = static_cast<long long>(std::uniform_int_distribution<std::uint32_t>(0, f.characteristic() - 1)(rng));
        } else {
          v = std::uniform_int_distribution<long long>(-a.range, a.range)(rng);
        }
        out(i, j) = ScalarTraits<S>::from_int(f, v);
      }
    }
    return out;
  };
  for (int attempt = 0; attempt < a.attempts; ++attempt) {
    Mat<S> am = draw(a.n, a.n);
    Mat<S> bm = draw(a.n, a.m);
    Mat<S> cm = draw(a.p, a.n);
    LinearSystem<S> sys(f, std::move(am), std::move(bm), std::move(cm));
    const auto cls = classify(sys);
    if ((a.cc && !cls.cc) || (a.canonical && !cls.canonical)) continue;
    return sys;
  }
  throw Error(ErrorCode::NotControllable,
              "no system with the requested property found in " + std::to_string(a.attempts) + " draws");
}

void random_cmd(std::ostream& out, const RandomArgs& a) {
  if (a.m < 0 || a.n < 0 || a.p < 0) throw Error(ErrorCode::DimensionMismatch, "dimensions must be nonnegative");
  if (a.range < 0) throw Error(ErrorCode::IndexOutOfRange, "--range must be nonnegative");
  const Field f = parse_field_flag(a.field);
  std::mt19937_64 rng(a.seed);
  json j = f.is_prime_field() ? system_to_json(random_system<Fp>(f, a, rng))
                              : system_to_json(random_system<Rational>(f, a, rng));
  out << j.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact classification, canonical forms, embeddings and realization of linear control systems"};
  app.name("moduli-sys");
  app.require_subcommand(1);

  AnalyzeOptions analyze_opt;
  auto* analyze_cmd = app.add_subcommand("analyze", "Classify a system and print its Kalman code and Schubert cell");
  analyze_cmd->add_option("--system", analyze_opt.system, "System JSON file")->required();
  analyze_cmd->add_flag("--json", analyze_opt.json, "JSON output");
  analyze_cmd->add_flag("--oracle", analyze_opt.oracle, "Enumerate subrepresentations (finite fields only)");

  std::string canon_path;
  bool canon_json = false;
  auto* canon_cmd = app.add_subcommand("canon", "Print the canonical form (g, g·Σ) of a cc system");
  canon_cmd->add_option("--system", canon_path, "System JSON file")->required();
  canon_cmd->add_flag("--json", canon_json, "JSON output");

  std::string embed_path;
  bool embed_json = false;
  auto* embed_cmd = app.add_subcommand("embed", "Print the Grassmannian points psi and gamma");
  embed_cmd->add_option("--system", embed_path, "System JSON file")->required();
  embed_cmd->add_flag("--json", embed_json, "JSON output");

  CensusArgs census_args;
  auto* census_cmd = app.add_subcommand("census", "Count orbits over F_q and compare with the closed formula (CSV)");
  census_cmd->add_option("--m", census_args.m, "Number of inputs")->required()->check(CLI::NonNegativeNumber);
  census_cmd->add_option("--p", census_args.p, "Number of outputs")->required()->check(CLI::NonNegativeNumber);
  census_cmd->add_option("--n-min", census_args.n_min, "Smallest state dimension")->check(CLI::NonNegativeNumber);
  census_cmd->add_option("--n-max", census_args.n_max, "Largest state dimension")->required()->check(CLI::NonNegativeNumber);
  census_cmd->add_option("--q", census_args.qs, "Field sizes, comma separated")->required()->delimiter(',');
  census_cmd->add_flag("--dual", census_args.dual, "Count co systems through duality");
  census_cmd->add_option("--mode", census_args.mode, "exhaustive or canonical")
      ->check(CLI::IsMember({"exhaustive", "canonical"}));
  census_cmd->add_option("--threads", census_args.threads, "Worker threads (0: hardware concurrency)");

  std::string markov_path;
  bool realize_json = false;
  auto* realize_cmd_ = app.add_subcommand("realize", "Realize a Markov sequence by a canonical system");
  realize_cmd_->add_option("--markov", markov_path, "Markov sequence JSON file")->required();
  realize_cmd_->add_flag("--json", realize_json, "JSON output");

  RandomArgs random_args;
  auto* random_cmd_ = app.add_subcommand("random", "Emit a random system as JSON");
  random_cmd_->add_option("--field", random_args.field, "Q or a prime q");
  random_cmd_->add_option("--m", random_args.m, "Number of inputs")->check(CLI::NonNegativeNumber);
  random_cmd_->add_option("--n", random_args.n, "State dimension")->check(CLI::NonNegativeNumber);
  random_cmd_->add_option("--p", random_args.p, "Number of outputs")->check(CLI::NonNegativeNumber);
  random_cmd_->add_option("--seed", random_args.seed, "Seed");
  random_cmd_->add_option("--range", random_args.range, "Entries in [-range, range] over Q")->check(CLI::NonNegativeNumber);
  random_cmd_->add_flag("--cc", random_args.cc, "Resample until completely controllable");
  random_cmd_->add_flag("--canonical", random_args.canonical, "Resample until canonical");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error[UsageError]: " << e.what() << "\n";
    return kValidationError;
  }

  // Buffer the output so that a failing command prints nothing on stdout.
  std::ostringstream buf;
  try {
    if (*analyze_cmd) {
      std::visit([&](const auto& sys) { analyze(buf, sys, analyze_opt); }, load_system(analyze_opt.system));
    } else if (*canon_cmd) {
      std::visit([&](const auto& sys) { canon(buf, sys, canon_json); }, load_system(canon_path));
    } else if (*embed_cmd) {
      std::visit([&](const auto& sys) { embed(buf, sys, embed_json); }, load_system(embed_path));
    } else if (*census_cmd) {
      census(buf, census_args);
    } else if (*realize_cmd_) {
      std::visit([&](const auto& seq) { realize_cmd(buf, seq, realize_json); },
                 markov_from_json(read_json_file(markov_path)));
    } else if (*random_cmd_) {
      random_cmd(buf, random_args);
    }
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return is_validation_error(e.code()) ? kValidationError : kComputationalError;
  } catch (const json::exception& e) {
    err << "error[ParseError]: " << e.what() << "\n";
    return kValidationError;
  }
  out << buf.str();
  return kOk;
}

}  // namespace moduli::cli
