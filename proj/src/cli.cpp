#include "smoothtable/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <regex>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "smoothtable/asymptotics.hpp"
#include "smoothtable/bigint.hpp"
#include "smoothtable/census.hpp"
#include "smoothtable/errors.hpp"
#include "smoothtable/interval_stats.hpp"
#include "smoothtable/params.hpp"
#include "smoothtable/sieve.hpp"
#include "smoothtable/smooth.hpp"
#include "smoothtable/witness.hpp"

namespace smoothtable::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  int precision = 6;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string max_pairs = "1000000000";
  std::string max_sieve = std::to_string(kSieveCeiling);
};

struct Context {
  int precision;
  unsigned threads;
  ResourceLimits limits;
  std::uint64_t max_sieve;
};

// Scalars go in `fields`; commands with a row set also fill `columns`/`rows`.
// Text output prints `primary` alone when set, otherwise key: value lines.
struct Report {
  Json fields = Json::object();
  std::string primary;
  std::string table_name = "rows";
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  std::optional<std::string> csv;   // verbatim CSV, bypassing the generic writer
  std::optional<Json> json;         // verbatim JSON object
};

using Handler = std::function<Report(const Context&)>;

BigInt parse_big(const std::string& name, const std::string& text) {
  static const std::regex pattern(R"(^\s*([0-9]+)(?:\.([0-9]*))?(?:[eE]\+?([0-9]+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw ArgumentError(fmt::format("{}: expected a non-negative integer, got '{}'", name, text));
  }
  const std::string frac = m[2].str();
  BigInt mantissa(m[1].str() + frac, 10);
  long exponent = m[3].matched ? std::stol(m[3].str()) : 0;
  exponent -= static_cast<long>(frac.size());
  if (exponent >= 0) return mantissa * pow_big(BigInt(10), static_cast<unsigned long>(exponent));
  const BigInt scale = pow_big(BigInt(10), static_cast<unsigned long>(-exponent));
  if (mantissa % scale != 0) {
    throw ArgumentError(fmt::format("{}: '{}' is not an integer", name, text));
  }
  return mantissa / scale;
}

std::uint64_t parse_u64(const std::string& name, const std::string& text) {
  const BigInt v = parse_big(name, text);
  if (!fits_u64(v)) throw ArgumentError(fmt::format("{}: '{}' exceeds 64 bits", name, text));
  return to_u64(v);
}

std::vector<std::uint64_t> parse_list(const std::string& name, const std::vector<std::string>& items) {
  std::vector<std::uint64_t> out;
  for (const auto& s : items) out.push_back(parse_u64(name, s));
  return out;
}

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (static_cast<unsigned __int128>(r) * r > x) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

SpfTable sieve_for(std::uint64_t need, const Context& ctx) {
  need = std::max<std::uint64_t>(need, 2);
  if (need > ctx.max_sieve) {
    throw ResourceError(
        fmt::format("sieve up to {} needed but --max-sieve is {}; reduce the inputs", need, ctx.max_sieve));
  }
  return SpfTable(need);
}

double rounded(double v, int precision) {
  if (!std::isfinite(v)) return v;
  return std::stod(fmt::format("{:.{}g}", v, precision));
}

Json round_reals(const Json& j, int precision) {
  if (j.is_number_float()) return rounded(j.get<double>(), precision);
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_reals(it.value(), precision);
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(round_reals(v, precision));
    return out;
  }
  return j;
}

std::string cell(const Json& j, int precision) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return fmt::format("{:.{}g}", j.get<double>(), precision);
  return j.dump();
}

std::string rational_text(const Rational& q) { return q.get_str(); }

void render(const Report& r, const std::string& format, int precision, std::ostream& out) {
  if (format == "json") {
    Json obj = r.json ? *r.json : r.fields;
    if (!r.json && !r.columns.empty()) {
      Json rows = Json::array();
      for (const auto& row : r.rows) {
        Json o = Json::object();
        for (std::size_t c = 0; c < r.columns.size(); ++c) o[r.columns[c]] = row[c];
        rows.push_back(std::move(o));
      }
      obj[r.table_name] = std::move(rows);
    }
    out << round_reals(obj, precision).dump() << '\n';
    return;
  }
  if (r.csv) {
    out << *r.csv;
    return;
  }
  if (format == "csv") {
    if (!r.columns.empty()) {
      out << fmt::format("{}\n", fmt::join(r.columns, ","));
      for (const auto& row : r.rows) {
        std::vector<std::string> cells;
        for (const auto& v : row) cells.push_back(cell(v, precision));
        out << fmt::format("{}\n", fmt::join(cells, ","));
      }
      return;
    }
    std::vector<std::string> keys, values;
    for (auto it = r.fields.begin(); it != r.fields.end(); ++it) {
      keys.push_back(it.key());
      values.push_back(cell(it.value(), precision));
    }
    out << fmt::format("{}\n{}\n", fmt::join(keys, ","), fmt::join(values, ","));
    return;
  }
  if (!r.primary.empty() && r.columns.empty()) {
    out << cell(r.fields.at(r.primary), precision) << '\n';
    return;
  }
  for (auto it = r.fields.begin(); it != r.fields.end(); ++it) {
    out << it.key() << ": " << cell(it.value(), precision) << '\n';
  }
  if (!r.columns.empty()) {
    out << fmt::format("{}\n", fmt::join(r.columns, " "));
    for (const auto& row : r.rows) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(cell(v, precision));
      out << fmt::format("{}\n", fmt::join(cells, " "));
    }
  }
}

Factorization factor_u64(std::uint64_t n, const SpfTable& table) {
  Factorization f;
  for (std::uint64_t p : table.primes()) {
    if (p * p > n) break;
    if (n % p) continue;
    PrimePower pp{p, 0};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
    }
    f.push_back(pp);
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

Json histogram_json(const std::vector<std::uint64_t>& h) {
  Json a = Json::array();
  for (auto v : h) a.push_back(v);
  return a;
}

// ---- subcommands ----

void add_psi(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y, method = "exact"; double eps = 0.1; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("psi", "Count y-smooth integers up to x");
  sub->add_option("--x", a->x, "Upper bound x")->required();
  sub->add_option("--y", a->y, "Smoothness bound y")->required();
  sub->add_option("--method", a->method, "exact, hildebrand or ennola")
      ->check(CLI::IsMember({"exact", "hildebrand", "ennola"}));
  sub->add_option("--eps", a->eps, "Range slack for the Hildebrand formula");
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto x = parse_u64("--x", a->x);
    const auto y = parse_u64("--y", a->y);
    Report r;
    r.fields["x"] = x;
    r.fields["y"] = y;
    r.fields["method"] = a->method;
    r.primary = "value";
    if (a->method == "exact") {
      r.fields["value"] = psi_exact(x, y, sieve_for(std::min(x, y), ctx));
    } else {
      const PsiApprox p =
          a->method == "hildebrand" ? psi_hildebrand(x, y, a->eps) : psi_ennola(x, y, sieve_for(y, ctx));
      r.fields["value"] = p.value;
      r.fields["in_range"] = p.in_range;
    }
    return r;
  });
}

void add_rho(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  auto u = std::make_shared<double>(0.0);
  auto* sub = app.add_subcommand("rho", "Dickman rho(u)");
  sub->add_option("--u", *u, "Argument u >= 0")->required();
  reg.emplace_back(sub, [u](const Context&) {
    Report r;
    r.fields["u"] = *u;
    r.fields["value"] = dickman_rho(*u);
    r.primary = "value";
    return r;
  });
}

void add_xi(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  auto t = std::make_shared<double>(0.0);
  auto* sub = app.add_subcommand("xi", "Positive root of e^xi = 1 + t xi");
  sub->add_option("--t", *t, "Argument t > 1")->required();
  reg.emplace_back(sub, [t](const Context&) {
    Report r;
    r.fields["t"] = *t;
    r.fields["value"] = xi_solve(*t);
    r.primary = "value";
    return r;
  });
}

void add_alpha(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y, regime = "saddle"; double eps = 0.1; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("alpha", "Saddle point alpha(x, y) or an asymptotic form");
  sub->add_option("--x", a->x, "Upper bound x (may exceed 64 bits for saddle)")->required();
  sub->add_option("--y", a->y, "Smoothness bound y")->required();
  sub->add_option("--regime", a->regime, "saddle, general, large_y or small_y")
      ->check(CLI::IsMember({"saddle", "general", "large_y", "small_y"}));
  sub->add_option("--eps", a->eps, "Range slack for the large_y form");
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto y = parse_u64("--y", a->y);
    Report r;
    r.primary = "alpha";
    if (a->regime == "saddle") {
      const BigInt x = parse_big("--x", a->x);
      if (x < to_big(y)) throw ArgumentError("alpha: requires x >= y");
      const SaddleResult s = saddle_alpha_log(static_cast<double>(log_big(x)), y, sieve_for(y, ctx));
      r.fields["x"] = to_string(x);
      r.fields["y"] = y;
      r.fields["regime"] = a->regime;
      r.fields["alpha"] = s.alpha;
      r.fields["residual"] = s.residual;
      r.fields["iterations"] = s.iterations;
    } else {
      const auto x = parse_u64("--x", a->x);
      r.fields["x"] = x;
      r.fields["y"] = y;
      r.fields["regime"] = a->regime;
      r.fields["alpha"] = alpha_asymptotic(x, y, parse_alpha_regime(a->regime), a->eps);
    }
    return r;
  });
}

void add_theta(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y, z; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("theta", "Count n <= x with all prime factors in [z, y]");
  sub->add_option("--x", a->x)->required();
  sub->add_option("--y", a->y)->required();
  sub->add_option("--z", a->z)->required();
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto x = parse_u64("--x", a->x);
    const auto y = parse_u64("--y", a->y);
    const auto z = parse_u64("--z", a->z);
    Report r;
    r.fields["x"] = x;
    r.fields["y"] = y;
    r.fields["z"] = z;
    r.fields["value"] = theta_exact(x, y, z, sieve_for(std::min(x, y), ctx));
    r.primary = "value";
    return r;
  });
}

void add_nk(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y, z; std::optional<std::uint32_t> k; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("nk", "Count n in S(x, y) by Omega_z(n)");
  sub->add_option("--x", a->x)->required();
  sub->add_option("--y", a->y)->required();
  sub->add_option("--z", a->z)->required();
  sub->add_option("--k", a->k, "Single value of Omega_z; all k when omitted");
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto x = parse_u64("--x", a->x);
    const auto y = parse_u64("--y", a->y);
    const auto z = parse_u64("--z", a->z);
    const SpfTable table = sieve_for(std::min(x, y), ctx);
    Report r;
    r.fields["x"] = x;
    r.fields["y"] = y;
    r.fields["z"] = z;
    if (a->k) {
      r.fields["k"] = *a->k;
      r.fields["value"] = nk_exact(x, y, z, *a->k, table);
      r.primary = "value";
    } else {
      const auto h = nk_histogram(x, y, z, table);
      r.columns = {"k", "count"};
      for (std::size_t k = 0; k < h.size(); ++k) r.rows.push_back({k, h[k]});
    }
    return r;
  });
}

void add_pik(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x; std::optional<std::uint32_t> k; bool fit = false; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("pik", "Count n <= x with exactly k distinct prime factors");
  sub->add_option("--x", a->x)->required();
  sub->add_option("--k", a->k, "Single k; all k when omitted");
  sub->add_flag("--fit", a->fit, "Fit the Hardy-Ramanujan constants c, C on this x");
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto x = parse_u64("--x", a->x);
    const SpfTable table = sieve_for(x, ctx);
    Report r;
    r.fields["x"] = x;
    if (a->fit) {
      const auto hr = hardy_ramanujan_check(x, table);
      r.fields["c"] = hr.c;
      r.fields["C"] = hr.C;
      r.fields["holds"] = hr.holds;
      r.columns = {"k", "count", "bound"};
      for (const auto& row : hr.rows) r.rows.push_back({row.k, row.count, row.bound});
    } else if (a->k) {
      r.fields["k"] = *a->k;
      r.fields["value"] = count_by_omega(x, *a->k, table);
      r.primary = "value";
    } else {
      const auto h = omega_histogram(x, table);
      r.columns = {"k", "count"};
      for (std::size_t k = 0; k < h.size(); ++k) r.rows.push_back({k, h[k]});
    }
    return r;
  });
}

void add_tau(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string n; long double a = 0, b = 0; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("tau", "Count divisors d of n with a < d <= b");
  sub->add_option("--n", a->n)->required();
  sub->add_option("--a", a->a)->required();
  sub->add_option("--b", a->b)->required();
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto n = parse_u64("--n", a->n);
    if (n == 0) throw ArgumentError("tau: n must be positive");
    const Factorization f = factor_u64(n, sieve_for(isqrt(n) + 1, ctx));
    Report r;
    r.fields["n"] = n;
    r.fields["a"] = static_cast<double>(a->a);
    r.fields["b"] = static_cast<double>(a->b);
    r.fields["value"] = divisor_count_in(f, a->a, a->b);
    r.primary = "value";
    return r;
  });
}

void add_census(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y; bool erdos = false; };
  auto t = std::make_shared<Args>();
  auto* table = app.add_subcommand("census-table", "A(x): distinct products ab with a, b <= sqrt(x)");
  table->add_option("--x", t->x)->required();
  table->add_flag("--erdos", t->erdos, "Also report the Erdos-type bound and ratio");
  reg.emplace_back(table, [t](const Context& ctx) {
    const auto x = parse_u64("--x", t->x);
    Report r;
    r.fields["x"] = x;
    r.primary = "value";
    if (t->erdos) {
      const ErdosBound e = erdos_bound_eval(x, ctx.limits);
      r.fields["value"] = e.a_x;
      r.fields["delta"] = e.delta;
      r.fields["bound"] = e.bound;
      r.fields["ratio"] = e.ratio;
      r.primary.clear();
    } else {
      r.fields["value"] = table_census(x, ctx.limits);
    }
    return r;
  });

  auto c = std::make_shared<Args>();
  auto* coprime = app.add_subcommand("census-coprime", "A*(x): coprime products ab with a, b <= sqrt(x)");
  coprime->add_option("--x", c->x)->required();
  reg.emplace_back(coprime, [c](const Context& ctx) {
    const auto x = parse_u64("--x", c->x);
    Report r;
    r.fields["x"] = x;
    r.fields["value"] = coprime_census(x, ctx.limits);
    r.primary = "value";
    return r;
  });

  auto s = std::make_shared<Args>();
  auto* smooth = app.add_subcommand("census-smooth", "A(x, y): distinct products of S(sqrt x, y)");
  smooth->add_option("--x", s->x)->required();
  smooth->add_option("--y", s->y)->required();
  reg.emplace_back(smooth, [s](const Context& ctx) {
    const auto x = parse_u64("--x", s->x);
    const auto y = parse_u64("--y", s->y);
    Report r;
    r.fields["x"] = x;
    r.fields["y"] = y;
    r.fields["value"] = smooth_census(x, y, sieve_for(std::min(isqrt(x), y), ctx), ctx.limits);
    r.primary = "value";
    return r;
  });
}

void add_scan(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::vector<std::string> xs, ys; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("scan", "Dichotomy scan over an (x, y) grid");
  sub->add_option("--x", a->xs, "x values (comma separated or repeated)")->required()->delimiter(',');
  sub->add_option("--y", a->ys, "y values (comma separated or repeated)")->required()->delimiter(',');
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto xs = parse_list("--x", a->xs);
    const auto ys = parse_list("--y", a->ys);
    std::uint64_t need = 2;
    for (auto x : xs) {
      for (auto y : ys) {
        if (x >= y) need = std::max(need, y);
      }
    }
    const auto rows = dichotomy_scan(xs, ys, sieve_for(need, ctx), ctx.limits, ctx.threads);
    Report r;
    r.csv = to_csv(rows);
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json o = Json::object();
      o["x"] = row.x;
      o["y"] = row.y;
      o["u"] = row.u;
      if (row.error) {
        o["psi"] = nullptr;
        o["a_xy"] = nullptr;
        o["ratio"] = nullptr;
      } else {
        o["psi"] = row.psi;
        o["a_xy"] = row.a_xy;
        o["ratio"] = row.ratio;
      }
      o["threshold"] = row.threshold;
      o["regime"] = std::string(to_string(row.regime));
      if (row.error) o["error"] = *row.error;
      arr.push_back(std::move(o));
    }
    r.json = Json{{"rows", std::move(arr)}};
    return r;
  });
}

void add_witness(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string n, x, y, method = "small_y"; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("witness", "Certified divisor d of n with d, n/d <= sqrt(x)");
  sub->add_option("--n", a->n)->required();
  sub->add_option("--x", a->x)->required();
  sub->add_option("--y", a->y)->required();
  sub->add_option("--method", a->method, "small_y or theorem1")
      ->check(CLI::IsMember({"small_y", "theorem1"}));
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto y = parse_u64("--y", a->y);
    const SpfTable table = sieve_for(y, ctx);
    DivisorWitness w;
    if (a->method == "small_y") {
      w = witness_small_y(parse_u64("--n", a->n), parse_u64("--x", a->x), y, table);
    } else {
      const BigInt n = parse_big("--n", a->n);
      const BigInt x = parse_big("--x", a->x);
      const Theorem1Params p = theorem1_params(x, y, table);
      w = witness_theorem1(n, x, y, p, interval_family(y, p), table);
    }
    Report r;
    r.json = to_json(w);
    r.fields["n"] = to_string(w.n);
    r.fields["d"] = to_string(w.d);
    r.fields["cofactor"] = to_string(w.cofactor);
    r.fields["method"] = std::string(to_string(w.method));
    r.fields["certified"] = w.all_certified();
    r.columns = {"certificate", "holds", "lhs", "rhs"};
    for (const auto& c : w.certificates) r.rows.push_back({c.name, c.holds, c.lhs, c.rhs});
    return r;
  });
}

void add_stats(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("stats", "Interval means, variances and Chebyshev check over S(x, y)");
  sub->add_option("--x", a->x)->required();
  sub->add_option("--y", a->y)->required();
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto x = parse_u64("--x", a->x);
    const auto y = parse_u64("--y", a->y);
    const SpfTable table = sieve_for(y, ctx);
    const Theorem1Params p = theorem1_params(x, y, table);
    const ChebyshevReport rep = chebyshev_check(x, y, interval_family(y, p), table);
    Report r;
    r.fields["x"] = x;
    r.fields["y"] = y;
    r.fields["population"] = rep.population;
    r.fields["all_good_fraction"] = rational_text(rep.all_good_fraction);
    r.fields["union_bound"] = rational_text(rep.union_bound);
    r.columns = {"interval", "lo", "hi", "mu", "sigma2", "cheb_lhs", "cheb_rhs", "mu_estimate"};
    for (const auto& s : rep.intervals) {
      const std::string name = s.index.tail ? "inf" : std::to_string(s.index.i);
      r.rows.push_back({name, s.interval.lo, s.interval.hi, rational_text(s.mu), rational_text(s.sigma2),
                        s.cheb_lhs ? Json(rational_text(*s.cheb_lhs)) : Json(nullptr),
                        s.cheb_rhs ? Json(rational_text(*s.cheb_rhs)) : Json(nullptr), s.mu_estimate});
    }
    return r;
  });
}

void add_params(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y; std::optional<double> lambda; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("params", "Construction parameters for (x, y)");
  sub->add_option("--x", a->x)->required();
  sub->add_option("--y", a->y)->required();
  sub->add_option("--lambda", a->lambda, "Also derive the split-bound parameters for this lambda");
  reg.emplace_back(sub, [a](const Context& ctx) {
    const BigInt xb = parse_big("--x", a->x);
    const auto y = parse_u64("--y", a->y);
    const Theorem1Params p = theorem1_params(xb, y, sieve_for(y, ctx));
    const IntervalFamily fam = interval_family(y, p);
    Report r;
    r.fields["x"] = to_string(xb);
    r.fields["y"] = y;
    r.fields["u"] = p.u;
    r.fields["eta"] = p.eta;
    r.fields["N"] = p.N;
    r.fields["kappa"] = p.kappa;
    r.fields["alpha"] = p.alpha;
    r.fields["Y"] = p.Y;
    r.fields["construction_range"] = p.construction_range();
    if (fits_u64(xb)) {
      const double t = dichotomy_threshold(to_u64(xb), y);
      r.fields["threshold"] = t;
      r.fields["regime"] = std::string(to_string(classify_threshold(t)));
    }
    if (a->lambda) {
      if (!fits_u64(xb)) throw ArgumentError("params: --lambda requires x < 2^64");
      const Theorem2Params q = theorem2_params(to_u64(xb), y, *a->lambda);
      r.fields["lambda"] = q.lambda;
      r.fields["log_log_z"] = q.log_log_z;
      r.fields["z"] = q.z ? Json(*q.z) : Json(nullptr);
      r.fields["H"] = q.H;
      r.fields["L_cap"] = q.L_cap;
      r.fields["G"] = q.G;
    }
    r.table_name = "intervals";
    r.columns = {"interval", "lo", "hi", "first", "last"};
    for (std::size_t i = 0; i < fam.narrow.size(); ++i) {
      const auto& J = fam.narrow[i];
      r.rows.push_back({std::to_string(i + 1), J.lo, J.hi, J.first, J.last});
    }
    r.rows.push_back({"inf", fam.tail.lo, fam.tail.hi, fam.tail.first, fam.tail.last});
    return r;
  });
}

void add_split(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y, z; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("split-bound", "Omega_z split upper bound for A(x, y)");
  sub->add_option("--x", a->x)->required();
  sub->add_option("--y", a->y)->required();
  sub->add_option("--z", a->z)->required();
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto x = parse_u64("--x", a->x);
    const auto y = parse_u64("--y", a->y);
    const auto z = parse_u64("--z", a->z);
    const SplitBound s = theorem2_split_bound(x, y, z, sieve_for(y, ctx), ctx.limits);
    Report r;
    r.fields["x"] = x;
    r.fields["y"] = y;
    r.fields["z"] = z;
    r.fields["bound"] = s.bound;
    r.fields["a_xy"] = s.a_xy;
    r.fields["holds"] = s.bound >= s.a_xy;
    r.fields["nk_x"] = histogram_json(s.nk_x);
    r.fields["nk_root"] = histogram_json(s.nk_root);
    return r;
  });
}

void add_heuristic(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& reg) {
  struct Args { std::string x, y; double eta = 0.1; };
  auto a = std::make_shared<Args>();
  auto* sub = app.add_subcommand("heuristic", "Predicted and empirical mean of tau(n; (1-eta) sqrt x, sqrt x)");
  sub->add_option("--x", a->x)->required();
  sub->add_option("--y", a->y)->required();
  sub->add_option("--eta", a->eta, "Window parameter in (0, 1)");
  reg.emplace_back(sub, [a](const Context& ctx) {
    const auto x = parse_u64("--x", a->x);
    const auto y = parse_u64("--y", a->y);
    const std::uint64_t population = psi_exact(x, y, sieve_for(std::min(x, y), ctx));
    if (population > ctx.limits.max_pairs) {
      throw ResourceError(fmt::format("heuristic: population {} exceeds --max-pairs", population));
    }
    const HeuristicReport h = heuristic_expected_tau(x, y, a->eta, sieve_for(y, ctx));
    Report r;
    r.fields["x"] = x;
    r.fields["y"] = y;
    r.fields["eta"] = a->eta;
    r.fields["population"] = h.population;
    r.fields["predicted"] = h.predicted;
    r.fields["predicted_eta_form"] = h.predicted_eta_form;
    r.fields["empirical"] = h.empirical;
    r.table_name = "by_omega";
    r.columns = {"k", "members", "mean_tau", "predicted"};
    for (const auto& s : h.by_omega) r.rows.push_back({s.k, s.members, s.mean_tau, s.predicted});
    return r;
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic tools for smooth numbers and their multiplication table",
               "smoothtable"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--precision", opt.precision, "Significant digits for real values")
      ->check(CLI::Range(1, 17));
  app.add_option("--threads", opt.threads, "Worker threads for scans")->check(CLI::Range(1u, 1024u));
  app.add_option("--max-pairs", opt.max_pairs, "Upper limit on pair enumeration per census");
  app.add_option("--max-sieve", opt.max_sieve, "Upper limit on the sieve size");

  std::vector<std::pair<CLI::App*, Handler>> reg;
  add_psi(app, reg);
  add_rho(app, reg);
  add_xi(app, reg);
  add_alpha(app, reg);
  add_theta(app, reg);
  add_nk(app, reg);
  add_pik(app, reg);
  add_tau(app, reg);
  add_census(app, reg);
  add_scan(app, reg);
  add_witness(app, reg);
  add_stats(app, reg);
  add_params(app, reg);
  add_split(app, reg);
  add_heuristic(app, reg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    Context ctx{opt.precision, opt.threads, {parse_u64("--max-pairs", opt.max_pairs)},
                parse_u64("--max-sieve", opt.max_sieve)};
    for (const auto& [sub, handler] : reg) {
      if (sub->parsed()) {
        render(handler(ctx), opt.format, opt.precision, out);
        return kExitOk;
      }
    }
    err << app.help();
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace smoothtable::cli
