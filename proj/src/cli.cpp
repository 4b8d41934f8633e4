#include "aniso/cli.hpp"

#include "aniso/ellipsoid.hpp"
#include "aniso/lattice.hpp"
#include "aniso/sequence.hpp"
#include "aniso/spectra.hpp"
#include "aniso/tractability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace aniso::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0 || text.find('/', slash + 1) != std::string::npos) {
      throw InputError("not a rational: \"" + text + "\"");
    }
    if (r.get_den() == 0) throw InputError("zero denominator in \"" + text + "\"");
    r.canonicalize();
    return r;
  }
  // [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, any = true) digits += text[i];
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, any = true) {
      digits += text[i];
      --scale;
    }
  }
  if (!any) throw InputError("not a number: \"" + text + "\"");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    const std::string exp = text.substr(i + 1);
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp, &used);
    } catch (const std::exception&) {
      throw InputError("bad exponent in \"" + text + "\"");
    }
    if (used != exp.size()) throw InputError("bad exponent in \"" + text + "\"");
    scale += e;
    i = text.size();
  }
  if (i != text.size()) throw InputError("not a number: \"" + text + "\"");
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale < 0 ? Rational(num, pow10) : Rational(num * pow10);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

namespace {

using Cell = std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::nullptr_t) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
  } visitor;
  return std::visit(visitor, c);
}

nlohmann::json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
        }
        return v;
      },
      c);
}

enum class Format { csv, json };

struct Config {
  std::string seq;
  std::string format = "csv";
  std::string out_path;
  std::string mode = "float";
  unsigned threads = 0;

  Format output_format() const { return format == "json" ? Format::json : Format::csv; }
  WeightMode weight_mode() const { return mode == "exact" ? WeightMode::exact : WeightMode::float64; }
};

unsigned resolve_threads(const Config& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("ANISO_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string render(const Table& t, Format f) {
  std::ostringstream os;
  if (f == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
      arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << "\n";
    return os.str();
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

void emit(const std::string& text, const Config& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw InputError("cannot open output file " + cfg.out_path);
  f << text;
}

nlohmann::json parse_json_arg(const std::string& arg, const char* what) {
  std::string text = arg;
  if (text.empty()) throw InputError(std::string(what) + " is required");
  const auto first = text.find_first_not_of(" \t\n");
  const char lead = first == std::string::npos ? '\0' : text[first];
  if (lead != '{' && lead != '[') {
    const std::string path = text[0] == '@' ? text.substr(1) : text;
    std::ifstream f(path);
    if (!f) throw InputError(std::string("cannot read ") + what + " file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON in ") + what + ": " + e.what());
  }
}

SequencePair load_sequence(const Config& cfg) { return sequence_from_json(parse_json_arg(cfg.seq, "--seq")); }

template <typename T>
std::vector<T> parse_list(const std::string& text, char sep = ',') {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      if constexpr (std::is_floating_point_v<T>) {
        out.push_back(static_cast<T>(std::stod(item, &used)));
      } else {
        if (item.find('-') != std::string::npos) throw InputError("negative index");
        out.push_back(static_cast<T>(std::stoull(item, &used)));
      }
      if (used != item.size()) throw InputError("trailing characters");
    } catch (const std::exception&) {
      throw InputError("bad list entry \"" + item + "\"");
    }
  }
  if (out.empty()) throw InputError("empty list \"" + text + "\"");
  return out;
}

std::vector<std::uint64_t> n_grid(const std::string& list, std::uint64_t n_max) {
  if (!list.empty()) return parse_list<std::uint64_t>(list);
  return geometric_grid(n_max);
}

OrderStatisticOptions order_options(const Config& cfg) {
  OrderStatisticOptions o;
  o.mode = cfg.weight_mode();
  o.threads = resolve_threads(cfg);
  return o;
}

CountOptions count_options(const Config& cfg) {
  CountOptions o;
  o.threads = resolve_threads(cfg);
  return o;
}

struct Args {
  Config cfg;
  // volume
  std::string a_list, b_list;
  double t = 1.0;
  bool doubled = false;
  // count
  std::string threshold;
  bool strict = false;
  double tolerance = 0.0;
  // widths / eigs / equiv
  std::string n_list;
  std::uint64_t n_max = 1024;
  double omega = 0.0;
  // sandwich
  std::uint64_t m_min = 1, m_max = 20;
  // complexity / bridge
  double eps = 0.0;
  std::string problem = "I";
  std::string direction = "app-to-i";
  // classify
  std::string a_family, b_family, st_list;
  bool b_only = false;
  // probe
  double s = 1.0, tt = 1.0;
  std::string eps_list, d_list;
};

int cmd_volume(const Args& args, std::ostream& out) {
  Vector a, b;
  if (!args.cfg.seq.empty()) {
    const auto seq = load_sequence(args.cfg);
    a = seq.coefficients().a;
    b = seq.coefficients().b;
  } else {
    const auto av = parse_list<double>(args.a_list.empty() ? args.b_list : args.a_list);
    const auto bv = parse_list<double>(args.b_list);
    a = Eigen::Map<const Vector>(av.data(), static_cast<Eigen::Index>(av.size()));
    b = Eigen::Map<const Vector>(bv.data(), static_cast<Eigen::Index>(bv.size()));
    if (args.a_list.empty()) a.setOnes();
  }
  if (args.doubled) b *= 2.0;
  const Ellipsoid body(a, b, args.t);
  const double log_v = body.log_volume();
  Table t{{"d", "t", "volume", "log_volume"}, {}};
  t.rows.push_back({static_cast<std::int64_t>(body.dim()), args.t, std::exp(log_v), log_v});
  emit(render(t, args.cfg.output_format()), args.cfg, out);
  return kOk;
}

int cmd_count(const Args& args, std::ostream& out) {
  const auto seq = load_sequence(args.cfg);
  if (args.threshold.empty()) throw InputError("--threshold is required");
  CountOptions o = count_options(args.cfg);
  o.comparison = args.strict ? Comparison::strict : Comparison::non_strict;
  o.tolerance = args.tolerance;
  std::uint64_t n = 0;
  if (args.cfg.weight_mode() == WeightMode::exact) {
    n = count_exact(seq.coefficients(), parse_rational(args.threshold), o);
  } else {
    n = count(seq.coefficients(), parse_rational(args.threshold).get_d(), o);
  }
  Table t{{"threshold", "comparison", "mode", "count"}, {}};
  t.rows.push_back({args.threshold, std::string(args.strict ? "lt" : "le"), args.cfg.mode, n});
  emit(render(t, args.cfg.output_format()), args.cfg, out);
  return kOk;
}

int cmd_widths(const Args& args, std::ostream& out, bool eigen) {
  const auto seq = load_sequence(args.cfg);
  const auto grid = n_grid(args.n_list, args.n_max);
  std::optional<double> omega;
  if (eigen) omega = args.omega;
  const auto rows = spectrum(seq.coefficients(), grid, omega, order_options(args.cfg));
  Table t;
  t.columns = eigen ? std::vector<std::string>{"n", "weight", "lambda_n"} : std::vector<std::string>{"n", "a_n"};
  for (const auto& r : rows) {
    if (eigen) {
      t.rows.push_back({r.n, r.weight, *r.lambda_n});
    } else {
      t.rows.push_back({r.n, r.a_n});
    }
  }
  emit(render(t, args.cfg.output_format()), args.cfg, out);
  return kOk;
}

int cmd_equiv(const Args& args, std::ostream& out) {
  const auto seq = load_sequence(args.cfg);
  const auto grid = n_grid(args.n_list, args.n_max);
  const auto diag = equivalence_diagnostic(seq.coefficients(), grid, order_options(args.cfg));
  Table t{{"n", "a_n", "ratio", "log_constant"}, {}};
  for (const auto& r : diag.rows) t.rows.push_back({r.n, r.a_n, r.ratio, diag.log_constant});
  emit(render(t, args.cfg.output_format()), args.cfg, out);
  return kOk;
}

int cmd_sandwich(const Args& args, std::ostream& out, std::ostream& err) {
  const auto seq = load_sequence(args.cfg);
  const auto report = sandwich_check(seq.coefficients(), args.m_min, args.m_max, args.cfg.weight_mode(),
                                     count_options(args.cfg));
  Table t{{"m", "lower", "count", "upper", "ok"}, {}};
  for (const auto& r : report.rows) t.rows.push_back({r.m, r.lower, r.count, r.upper, r.ok});
  emit(render(t, args.cfg.output_format()), args.cfg, out);
  if (!report.all_ok()) {
    err << "sandwich bound violated\n";
    return kIdentityViolation;
  }
  return kOk;
}

int cmd_complexity(const Args& args, std::ostream& out) {
  const auto seq = load_sequence(args.cfg);
  const auto mode = args.cfg.weight_mode();
  std::uint64_t n = 0;
  if (args.problem == "I") {
    n = complexity_I(seq.coefficients(), args.eps, mode, count_options(args.cfg));
  } else if (args.problem == "APP") {
    n = complexity_APP(seq.coefficients(), args.omega, args.eps, mode, count_options(args.cfg));
  } else {
    throw InputError("--problem must be I or APP");
  }
  Table t{{"problem", "eps", "omega", "n"}, {}};
  t.rows.push_back({args.problem, args.eps, args.problem == "APP" ? Cell(args.omega) : Cell(nullptr), n});
  emit(render(t, args.cfg.output_format()), args.cfg, out);
  return kOk;
}

int cmd_bridge(const Args& args, std::ostream& out, std::ostream& err) {
  const auto seq = load_sequence(args.cfg);
  const auto mode = args.cfg.weight_mode();
  std::vector<std::pair<std::string, BridgeResult>> results;
  if (args.direction == "app-to-i" || args.direction == "both") {
    results.emplace_back("app-to-i",
                         bridge_app_to_i(seq.coefficients(), args.omega, args.eps, mode, count_options(args.cfg)));
  }
  if (args.direction == "i-to-app" || args.direction == "both") {
    results.emplace_back("i-to-app",
                         bridge_i_to_app(seq.coefficients(), args.omega, args.eps, mode, count_options(args.cfg)));
  }
  if (results.empty()) throw InputError("--direction must be app-to-i, i-to-app or both");
  Table t{{"direction", "eps", "mapped_eps", "mapped_log_eps", "n", "n_mapped", "equal_counts"}, {}};
  bool ok = true;
  for (const auto& [dir, r] : results) {
    t.rows.push_back({dir, r.eps, r.mapped_eps, r.mapped_log_eps, r.source_count, r.target_count, r.equal_counts});
    ok = ok && r.equal_counts;
  }
  emit(render(t, args.cfg.output_format()), args.cfg, out);
  if (!ok) {
    err << "complexity identity violated\n";
    return kIdentityViolation;
  }
  return kOk;
}

std::vector<WeakIndex> parse_st(const std::string& text) {
  std::vector<WeakIndex> out;
  if (text.empty()) return out;
  for (const auto& pair : [&] {
         std::vector<std::string> parts;
         std::stringstream ss(text);
         std::string p;
         while (std::getline(ss, p, ';')) {
           if (!p.empty()) parts.push_back(p);
         }
         return parts;
       }()) {
    const auto v = parse_list<double>(pair);
    if (v.size() != 2) throw InputError("(s,t) pairs are written s,t and separated by ';'");
    out.push_back({v[0], v[1]});
  }
  return out;
}

int cmd_classify(const Args& args, std::ostream& out) {
  std::optional<Family> a, b;
  if (!args.cfg.seq.empty()) {
    const auto doc = parse_json_arg(args.cfg.seq, "--seq");
    if (!doc.is_object() || !doc.contains("b")) throw InputError("--seq needs at least \"b\"");
    b = family_from_json(doc.at("b"));
    if (doc.contains("a")) a = family_from_json(doc.at("a"));
  }
  if (!args.b_family.empty()) b = family_from_json(parse_json_arg(args.b_family, "--b-family"));
  if (!args.a_family.empty()) a = family_from_json(parse_json_arg(args.a_family, "--a-family"));
  if (!b) throw InputError("a smoothness family is required (--b-family or --seq)");
  const auto st = parse_st(args.st_list);
  TractabilityVerdict v;
  if (args.b_only) {
    v = classify_b_only(*b, st);
  } else {
    if (!a) throw InputError("a scaling family is required (--a-family, --seq, or --b-only)");
    v = classify(*a, *b, st);
  }
  if (args.cfg.output_format() == Format::json) {
    emit(v.to_json().dump(2) + "\n", args.cfg, out);
    return kOk;
  }
  Table t{{"problem", "notion", "holds", "rule", "evidence"}, {}};
  auto add = [&](const char* problem, const std::vector<NotionVerdict>& list) {
    for (const auto& n : list) t.rows.push_back({std::string(problem), n.notion, to_string(n.holds), n.rule, n.evidence.dump()});
  };
  add("I", v.notions);
  add("APP", v.ec_notions);
  emit(render(t, Format::csv), args.cfg, out);
  return kOk;
}

int cmd_probe(const Args& args, std::ostream& out) {
  const auto seq = load_sequence(args.cfg);
  const auto eps = parse_list<double>(args.eps_list);
  std::vector<int> dims;
  for (auto d : parse_list<std::uint64_t>(args.d_list)) dims.push_back(static_cast<int>(d));
  const auto cells = empirical_probe(seq, args.s, args.tt, eps, dims, count_options(args.cfg));
  Table t{{"eps", "d", "n", "ratio", "status"}, {}};
  for (const auto& c : cells) {
    t.rows.push_back({c.eps, static_cast<std::int64_t>(c.d), c.n ? Cell(*c.n) : Cell(nullptr),
                      c.n ? Cell(c.ratio) : Cell(nullptr), c.status});
  }
  emit("# heuristic: finite-grid ratios, not a tractability decision\n" + render(t, args.cfg.output_format()),
       args.cfg, out);
  return kOk;
}

void add_common(CLI::App* sub, Config& cfg, bool needs_seq = true) {
  auto* seq = sub->add_option("--seq", cfg.seq, "sequence JSON: inline object, @file or file path");
  if (needs_seq) seq->required();
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
  sub->add_option("--threads", cfg.threads, "worker threads (default: $ANISO_THREADS or 1)");
  sub->add_option("--mode", cfg.mode, "weight arithmetic")->check(CLI::IsMember({"float", "exact"}));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximation numbers, complexities and tractability of weighted anisotropic Sobolev embeddings",
               "aniso"};
  app.require_subcommand(1, 1);
  Args args;

  auto* volume = app.add_subcommand("volume", "volume of {x : sum a_j |x_j|^{b_j} <= t}");
  add_common(volume, args.cfg, false);
  volume->add_option("--a", args.a_list, "comma-separated a_j (default all 1)");
  volume->add_option("--b", args.b_list, "comma-separated exponents b_j");
  volume->add_option("--t", args.t, "radius t");
  volume->add_flag("--doubled", args.doubled, "use exponents 2 b_j");

  auto* cnt = app.add_subcommand("count", "number of k in Z^d with w(k) <= T (or < T)");
  add_common(cnt, args.cfg);
  cnt->add_option("--threshold,-T", args.threshold, "threshold T (decimal or p/q)")->required();
  cnt->add_flag("--strict", args.strict, "count w(k) < T");
  cnt->add_option("--tol", args.tolerance, "float tie tolerance");

  auto* widths = app.add_subcommand("widths", "approximation numbers a_n");
  add_common(widths, args.cfg);
  widths->add_option("--n", args.n_list, "comma-separated n");
  widths->add_option("--n-max", args.n_max, "geometric grid 1,2,4,... up to this n");

  auto* eigs = app.add_subcommand("eigs", "Korobov eigenvalues lambda_{d,n}");
  add_common(eigs, args.cfg);
  eigs->add_option("--omega", args.omega, "Korobov base in (0,1)")->required();
  eigs->add_option("--n", args.n_list, "comma-separated n");
  eigs->add_option("--n-max", args.n_max, "geometric grid up to this n");

  auto* equiv = app.add_subcommand("equiv", "n^g a_n / vol(B_{a,2b})^g over a grid");
  add_common(equiv, args.cfg);
  equiv->add_option("--n", args.n_list, "comma-separated n");
  equiv->add_option("--n-max", args.n_max, "geometric grid up to this n");

  auto* sandwich = app.add_subcommand("sandwich", "lattice count bounds C(m) against ellipsoid volumes");
  add_common(sandwich, args.cfg);
  sandwich->add_option("--m-min", args.m_min, "first m");
  sandwich->add_option("--m-max", args.m_max, "last m");

  auto* complexity = app.add_subcommand("complexity", "information complexity n(eps, I_d) or n(eps, APP_d)");
  add_common(complexity, args.cfg);
  complexity->add_option("--eps", args.eps, "accuracy in (0,1)")->required();
  complexity->add_option("--problem", args.problem, "I or APP")->check(CLI::IsMember({"I", "APP"}));
  complexity->add_option("--omega", args.omega, "Korobov base in (0,1), APP only");

  auto* bridge = app.add_subcommand("bridge", "check n(eps, APP_d) and n(eps, I_d) against each other");
  add_common(bridge, args.cfg);
  bridge->add_option("--omega", args.omega, "Korobov base in (0,1)")->required();
  bridge->add_option("--eps", args.eps, "accuracy in (0,1)")->required();
  bridge->add_option("--direction", args.direction, "app-to-i, i-to-app or both")
      ->check(CLI::IsMember({"app-to-i", "i-to-app", "both"}));

  auto* classify_cmd = app.add_subcommand("classify", "tractability verdicts for sequence families");
  add_common(classify_cmd, args.cfg, false);
  classify_cmd->add_option("--a-family", args.a_family, "scaling family JSON");
  classify_cmd->add_option("--b-family", args.b_family, "smoothness family JSON");
  classify_cmd->add_flag("--b-only", args.b_only, "use a_j = (2 pi)^{2 b_j}");
  classify_cmd->add_option("--st", args.st_list, "(s,t) pairs: \"s,t;s,t\"");

  auto* probe = app.add_subcommand("probe", "ln n(eps, I_d) / (eps^{-s} + d^t) on a grid (heuristic)");
  add_common(probe, args.cfg);
  probe->add_option("--s", args.s, "s > 0")->required();
  probe->add_option("--t", args.tt, "t > 0")->required();
  probe->add_option("--eps", args.eps_list, "comma-separated eps")->required();
  probe->add_option("--d", args.d_list, "comma-separated d")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    if (*volume) return cmd_volume(args, out);
    if (*cnt) return cmd_count(args, out);
    if (*widths) return cmd_widths(args, out, false);
    if (*eigs) return cmd_widths(args, out, true);
    if (*equiv) return cmd_equiv(args, out);
    if (*sandwich) return cmd_sandwich(args, out, err);
    if (*complexity) return cmd_complexity(args, out);
    if (*bridge) return cmd_bridge(args, out, err);
    if (*classify_cmd) return cmd_classify(args, out);
    if (*probe) return cmd_probe(args, out);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacityError;
  } catch (const IdentityViolation& e) {
    err << "identity violation: " << e.what() << "\n";
    return kIdentityViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace aniso::cli
