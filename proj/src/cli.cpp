#include "hq/cli.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "hq/cache.hpp"
#include "hq/error.hpp"
#include "hq/hilb.hpp"
#include "hq/integrals.hpp"
#include "hq/serialize.hpp"
#include "hq/tautological.hpp"
#include "hq/toric.hpp"
#include "hq/universal.hpp"

namespace hq {

namespace {

using nlohmann::json;

/// Bad flag value; reported with exit code 2.
struct UsageError {
  std::string flag;
  std::string message;
};

struct Params {
  std::string surface = "P2";
  int r = 0;
  std::string d;
  int k = 0;
  int kmax = 0;
  long long w = 0;
  std::string vstar, vstar_chern, e, e_chern, lambda, split, expr, shape = "quot-count";
  std::vector<std::string> bundles;
  std::string seed = "default";
  std::string format = "json";
  int threads = 0;
  bool no_cache = false;
  int box = 0;
  int max_minus = 2;
  bool stand_in = false;
  int truncation = -1;
  int rank_v = 2;
  int rank_lambda = 1;
  int max_degree = -1;
  bool count_only = false;
};

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& text, const std::string& flag) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) throw UsageError{flag, "'" + text + "' is not an integer"};
  return v;
}

/// "d" on Picard rank one, "a:b" on Picard rank two.
DivisorClass parse_degree(const std::string& text, const ToricSurfaceModel& s, const std::string& flag) {
  DivisorClass d;
  for (const auto& part : split_on(text, ':')) d.push_back(parse_int(part, flag));
  if (static_cast<int>(d.size()) != s.pic_rank())
    throw UsageError{flag, "degree '" + text + "' needs " + std::to_string(s.pic_rank()) + " coordinate(s) on " +
                               s.name()};
  return d;
}

/// "d1,d2,.../m1,m2,..." with the minus-lines after '/'; "none" is empty.
SplitBundle parse_split(const std::string& text, const ToricSurfaceModel& s, const std::string& flag) {
  if (text == "none") return empty_bundle(s);
  const auto halves = split_on(text, '/');
  if (halves.size() > 2) throw UsageError{flag, "more than one '/' in '" + text + "'"};
  auto lines = [&](const std::string& part) {
    std::vector<DivisorClass> out;
    if (part.empty()) return out;
    for (const auto& item : split_on(part, ',')) out.push_back(parse_degree(item, s, flag));
    return out;
  };
  return split_bundle(s, lines(halves[0]), halves.size() == 2 ? lines(halves[1]) : std::vector<DivisorClass>{});
}

/// "r=3,c1=7,c2=36"
ChernData parse_chern(const std::string& text, const ToricSurfaceModel& s, const std::string& flag) {
  ChernData c;
  bool have_r = false, have_c1 = false, have_c2 = false;
  for (const auto& item : split_on(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError{flag, "expected key=value in '" + item + "'"};
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "r" || key == "rank") {
      c.rank = static_cast<int>(parse_int(value, flag));
      have_r = true;
    } else if (key == "c1") {
      c.c1 = parse_degree(value, s, flag);
      have_c1 = true;
    } else if (key == "c2") {
      c.c2 = parse_int(value, flag);
      have_c2 = true;
    } else {
      throw UsageError{flag, "unknown key '" + key + "'"};
    }
  }
  if (!have_r || !have_c1 || !have_c2) throw UsageError{flag, "needs r, c1 and c2"};
  return c;
}

ToricSurfaceModel parse_surface(const Params& p) {
  try {
    return make_surface(p.surface);
  } catch (const DomainError& e) {
    throw UsageError{"--surface", e.what()};
  }
}

ChernExpr parse_expr(const std::string& text, const std::string& flag) {
  try {
    return parse_chern_expr(text);
  } catch (const ParseError& e) {
    throw UsageError{flag, e.what()};
  }
}

std::uint64_t resolve_seed(const std::string& text) {
  if (text == "default") return kDefaultSeed;
  if (text == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  const std::int64_t v = parse_int(text, "--seed");
  if (v < 0) throw UsageError{"--seed", "must be non-negative"};
  return static_cast<std::uint64_t>(v);
}

/// Bundle given either by split degrees or by Chern data (realized as a
/// split stand-in).
struct BundleInput {
  SplitBundle bundle;
  json echo;
};

BundleInput bundle_input(const ToricSurfaceModel& s, const Params& p, const std::string& split_text,
                         const std::string& split_flag, const std::string& chern_text, const std::string& chern_flag) {
  if (!split_text.empty() && !chern_text.empty())
    throw UsageError{split_flag, "give either " + split_flag + " or " + chern_flag};
  if (!split_text.empty()) return {parse_split(split_text, s, split_flag), split_text};
  if (!chern_text.empty()) {
    const ChernData c = parse_chern(chern_text, s, chern_flag);
    return {realize_split_model(s, c, {p.box, p.max_minus}), chern_text};
  }
  throw UsageError{split_flag, "missing; give " + split_flag + " or " + chern_flag};
}

json chern_json(const ChernData& c) { return to_json(c); }

/// Scalars print as-is; strings without quotes.
std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const json& report, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << "\n";
    return;
  }
  if (format == "plain") {
    for (const auto& [key, value] : report.items()) {
      if (key == "rows" && value.is_array()) {
        for (const auto& row : value) {
          std::string line;
          for (const auto& [rk, rv] : row.items()) {
            if (!rv.is_primitive()) continue;
            if (!line.empty()) line += " ";
            line += rk + "=" + scalar_text(rv);
          }
          out << line << "\n";
        }
      } else {
        out << key << ": " << (value.is_primitive() ? scalar_text(value) : value.dump()) << "\n";
      }
    }
    return;
  }
  // csv
  if (report.contains("rows") && report["rows"].is_array() && !report["rows"].empty()) {
    std::vector<std::string> keys;
    for (const auto& [rk, rv] : report["rows"][0].items())
      if (rv.is_primitive()) keys.push_back(rk);
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    for (const auto& row : report["rows"]) {
      for (std::size_t i = 0; i < keys.size(); ++i)
        out << (i ? "," : "") << csv_field(row.contains(keys[i]) ? scalar_text(row[keys[i]]) : "");
      out << "\n";
    }
    return;
  }
  out << "key,value\n";
  for (const auto& [key, value] : report.items())
    if (value.is_primitive()) out << csv_field(key) << "," << csv_field(scalar_text(value)) << "\n";
}

struct Context {
  Params p;
  std::uint64_t seed = kDefaultSeed;
  std::optional<ResultCache> cache;
  std::ostream* err = nullptr;

  ComputeOptions compute() const { return {seed, p.threads, cache ? &*cache : nullptr}; }
};

struct Outcome {
  json report;
  int code = 0;
};

Outcome cmd_surface_info(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  json r = to_json(s);
  r["pic_rank"] = s.pic_rank();
  return {r, 0};
}

Outcome cmd_fixed_points(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  if (ctx.p.k < 0) throw UsageError{"--k", "must be non-negative"};
  FixedPointEnumerator it(s.num_fixed_points(), ctx.p.k);
  HilbFixedPoint fp;
  json rows = json::array();
  std::int64_t count = 0;
  while (it.next(fp)) {
    ++count;
    if (!ctx.p.count_only) rows.push_back({{"index", count - 1}, {"partitions", to_json(fp)}});
  }
  json r = {{"inputs", {{"surface", s.name()}, {"k", ctx.p.k}}}, {"count", count}, {"value", std::to_string(count)}};
  if (!ctx.p.count_only) r["rows"] = rows;
  return {r, 0};
}

Outcome cmd_chi(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  if (ctx.p.split.empty()) throw UsageError{"--split", "missing"};
  const SplitBundle b = parse_split(ctx.p.split, s, "--split");
  const Integer value = chi_surface(s, b, ctx.seed);
  return {{{"inputs", {{"surface", s.name()}, {"split", ctx.p.split}}},
           {"bundle", to_json(b)},
           {"value", to_string(value)}},
          0};
}

Outcome cmd_expected_dim(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  ChernData vstar;
  json echo;
  if (!ctx.p.vstar_chern.empty() && ctx.p.vstar.empty()) {
    vstar = parse_chern(ctx.p.vstar_chern, s, "--vstar-chern");
    echo = {{"vstar_chern", ctx.p.vstar_chern}};
  } else if (!ctx.p.vstar.empty() && ctx.p.vstar_chern.empty()) {
    vstar = chern_data(s, parse_split(ctx.p.vstar, s, "--vstar"));
    echo = {{"vstar", ctx.p.vstar}};
  } else {
    throw UsageError{"--vstar", "give exactly one of --vstar or --vstar-chern"};
  }
  echo["surface"] = s.name();
  echo["k"] = ctx.p.k;
  return {{{"inputs", echo},
           {"chi_vstar", chi_from_chern(s, vstar)},
           {"value", std::to_string(expected_dim_pairs(s, dual(vstar), ctx.p.k))}},
          0};
}

Outcome cmd_c2_for_zero(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  if (ctx.p.d.empty()) throw UsageError{"--d", "missing"};
  const DivisorClass d = parse_degree(ctx.p.d, s, "--d");
  const std::int64_t value = s.pic_rank() == 1 ? c2_for_expected_dim_zero(ctx.p.r, static_cast<int>(d[0]), ctx.p.k)
                                               : c2_for_expected_dim_zero(s, ctx.p.r, d, ctx.p.k);
  return {{{"inputs", {{"surface", s.name()}, {"r", ctx.p.r}, {"d", ctx.p.d}, {"k", ctx.p.k}}},
           {"value", std::to_string(value)}},
          0};
}

Outcome cmd_validate_construction(Context& ctx) {
  if (ctx.p.d.empty()) throw UsageError{"--d", "missing"};
  const int d = static_cast<int>(parse_int(ctx.p.d, "--d"));
  const auto rep = validate_construction(ctx.p.r, d, ctx.p.w);
  json r = {{"inputs", {{"r", ctx.p.r}, {"d", d}, {"w", ctx.p.w}}},
            {"ok", rep.ok},
            {"lower_bound", rep.lower},
            {"upper_bound", rep.upper},
            {"epsilon", rep.epsilon},
            {"violations", rep.violations}};
  for (const auto& v : rep.violations) *ctx.err << "violation: " << v << "\n";
  return {r, rep.ok ? 0 : 1};
}

Outcome cmd_quot_count(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  auto in = bundle_input(s, ctx.p, ctx.p.vstar, "--vstar", ctx.p.vstar_chern, "--vstar-chern");
  const SplitBundle v = in.bundle.dual();
  const Rational value = quot_count(s, v, ctx.p.k, ctx.compute());
  return {{{"inputs", {{"surface", s.name()}, {"k", ctx.p.k}, {ctx.p.vstar.empty() ? "vstar_chern" : "vstar", in.echo}}},
           {"vstar_model", to_json(in.bundle)},
           {"expected_dim", expected_dim_pairs(s, v, ctx.p.k)},
           {"value", to_string(value)}},
          0};
}

Outcome cmd_chi_theta(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  auto in = bundle_input(s, ctx.p, ctx.p.e, "--e", ctx.p.e_chern, "--e-chern");
  const auto res = chi_theta(s, in.bundle, ctx.p.k, ctx.compute());
  for (const auto& w : res.warnings) *ctx.err << "warning: " << w << "\n";
  return {{{"inputs", {{"surface", s.name()}, {"k", ctx.p.k}, {ctx.p.e.empty() ? "e_chern" : "e", in.echo}}},
           {"e_model", to_json(in.bundle)},
           {"chi_pair", res.chi_pair},
           {"warnings", res.warnings},
           {"value", to_string(res.value)}},
          0};
}

Outcome cmd_verify_conjecture(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  if (ctx.p.d.empty()) throw UsageError{"--d", "missing"};
  const DivisorClass d = parse_degree(ctx.p.d, s, "--d");
  ConjectureOptions opts;
  opts.compute = ctx.compute();
  opts.realize = {ctx.p.box, ctx.p.max_minus};
  const auto rep = verify_conjecture(s, ctx.p.r, d, ctx.p.kmax, opts);
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json j = {{"k", row.k},
              {"quot", row.quot ? json(to_string(*row.quot)) : json(nullptr)},
              {"chi", row.chi ? json(to_string(*row.chi)) : json(nullptr)},
              {"equal", row.equal},
              {"chi_pair", row.chi_pair},
              {"vstar", chern_json(row.vstar)},
              {"e", chern_json(row.e)}};
    if (!row.note.empty()) j["note"] = row.note;
    if (row.vstar_model) j["vstar_model"] = to_json(*row.vstar_model);
    if (row.e_model) j["e_model"] = to_json(*row.e_model);
    rows.push_back(j);
  }
  return {{{"inputs", {{"surface", s.name()}, {"r", ctx.p.r}, {"d", ctx.p.d}, {"kmax", ctx.p.kmax}}},
           {"rows", rows},
           {"all_equal", rep.all_equal()},
           {"hypotheses", rep.hypotheses}},
          rep.all_equal() ? 0 : 1};
}

Outcome cmd_taut_integral(Context& ctx) {
  const auto s = parse_surface(ctx.p);
  const bool virtual_mode = !ctx.p.vstar.empty() || !ctx.p.vstar_chern.empty();
  if (virtual_mode) {
    auto in = bundle_input(s, ctx.p, ctx.p.vstar, "--vstar", ctx.p.vstar_chern, "--vstar-chern");
    const SplitBundle lambda = ctx.p.lambda.empty() ? empty_bundle(s) : parse_split(ctx.p.lambda, s, "--lambda");
    const ChernExpr p = parse_expr(ctx.p.expr.empty() ? "1" : ctx.p.expr, "--expr");
    try {
      p.validate({kITId}, true);
    } catch (const DomainError& e) {
      throw UsageError{"--expr", e.what()};
    }
    VirtualOptions vo;
    vo.compute = ctx.compute();
    vo.mode = ctx.p.stand_in ? AmbientMode::virtual_stand_in : AmbientMode::honest;
    if (ctx.p.truncation >= 0) vo.truncation = ctx.p.truncation;
    const auto res = virtual_integral(s, in.bundle.dual(), lambda, ctx.p.k, p, vo);
    return {{{"inputs",
              {{"surface", s.name()},
               {"k", ctx.p.k},
               {ctx.p.vstar.empty() ? "vstar_chern" : "vstar", in.echo},
               {"lambda", ctx.p.lambda.empty() ? "none" : ctx.p.lambda},
               {"expr", p.to_string()},
               {"stand_in", ctx.p.stand_in}}},
             {"kind", "virtual"},
             {"vstar_model", to_json(in.bundle)},
             {"ambient_dim", res.ambient_dim},
             {"virtual_dim", res.virtual_dim},
             {"notes", res.notes},
             {"value", to_string(res.value)}},
            0};
  }
  if (ctx.p.expr.empty()) throw UsageError{"--expr", "missing"};
  IntegralRequest req;
  req.surface = s.id;
  req.k = ctx.p.k;
  json declared = json::object();
  for (const auto& spec : ctx.p.bundles) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError{"--bundle", "expected NAME=SPEC in '" + spec + "'"};
    const std::string name = spec.substr(0, eq);
    if (name == kTangentId) throw UsageError{"--bundle", "'T' is reserved for the tangent bundle"};
    req.bundles[name] = parse_split(spec.substr(eq + 1), s, "--bundle");
    declared[name] = spec.substr(eq + 1);
  }
  req.expr = parse_expr(ctx.p.expr, "--expr");
  std::set<std::string> ids{kTangentId};
  for (const auto& [id, b] : req.bundles) ids.insert(id);
  try {
    req.expr.validate(ids, false);
  } catch (const DomainError& e) {
    throw UsageError{"--expr", e.what()};
  }
  const Rational value = integrate(req, ctx.compute());
  return {{{"inputs", {{"surface", s.name()}, {"k", ctx.p.k}, {"bundles", declared}, {"expr", req.expr.to_string()}}},
           {"kind", "hilbert"},
           {"value", to_string(value)}},
          0};
}

Outcome cmd_universal_poly(Context& ctx) {
  const UniversalShape shape = ctx.p.shape == "quot-count"
                                   ? UniversalShape::quot_count()
                                   : UniversalShape::expression(parse_expr(ctx.p.shape, "--shape"));
  UniversalOptions opts;
  opts.compute = ctx.compute();
  if (ctx.p.max_degree >= 0) opts.max_degree = ctx.p.max_degree;
  const auto poly = universal_poly(shape, ctx.p.k, ctx.p.rank_v, ctx.p.rank_lambda, opts);
  json r = to_json(poly);
  r["inputs"] = {{"shape", ctx.p.shape}, {"k", ctx.p.k}, {"rank_v", ctx.p.rank_v}, {"rank_lambda", ctx.p.rank_lambda}};
  r["value"] = poly.to_string();
  return {r, 0};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant localization on Hilbert schemes of points of toric surfaces", "hq"};
  app.require_subcommand(1);
  Context ctx;
  Params& p = ctx.p;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", p.seed, "specialization seed, or 'random'");
    sub->add_option("--format", p.format, "json, csv or plain")->check(CLI::IsMember({"json", "csv", "plain"}));
    sub->add_option("--threads", p.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    sub->add_flag("--no-cache", p.no_cache, "bypass the result cache");
  };
  auto surface = [&](CLI::App* sub) { sub->add_option("--surface", p.surface, "P2, P1xP1 or Hirzebruch(a)"); };
  auto realize = [&](CLI::App* sub) {
    sub->add_option("--box", p.box, "degree search box for split stand-ins (0 = default)");
    sub->add_option("--max-minus", p.max_minus, "most minus-lines in a split stand-in");
  };

  std::map<std::string, std::function<Outcome(Context&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<Outcome(Context&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[name] = std::move(fn);
    return sub;
  };

  {
    auto* s = add("surface-info", "fan data of a surface", cmd_surface_info);
    surface(s);
  }
  {
    auto* s = add("fixed-points", "torus-fixed points of X^[k]", cmd_fixed_points);
    surface(s);
    s->add_option("--k", p.k)->required();
    s->add_flag("--count-only", p.count_only);
  }
  {
    auto* s = add("chi", "Euler characteristic of a split bundle on the surface", cmd_chi);
    surface(s);
    s->add_option("--split", p.split, "degrees, minus-lines after '/'")->required();
  }
  {
    auto* s = add("expected-dim", "chi(V*) - 1 - (rk V - 2) k", cmd_expected_dim);
    surface(s);
    s->add_option("--vstar", p.vstar);
    s->add_option("--vstar-chern", p.vstar_chern);
    s->add_option("--k", p.k)->required();
  }
  {
    auto* s = add("c2-for-zero", "c2(V*) giving expected dimension zero", cmd_c2_for_zero);
    surface(s);
    s->add_option("--r", p.r)->required();
    s->add_option("--d", p.d)->required();
    s->add_option("--k", p.k)->required();
  }
  {
    auto* s = add("validate-construction", "parameter bounds on P2", cmd_validate_construction);
    s->add_option("--r", p.r)->required();
    s->add_option("--d", p.d)->required();
    s->add_option("--w", p.w)->required();
  }
  {
    auto* s = add("quot-count", "integral of c_2k(V*^[k])", cmd_quot_count);
    surface(s);
    realize(s);
    s->add_option("--vstar", p.vstar);
    s->add_option("--vstar-chern", p.vstar_chern);
    s->add_option("--k", p.k)->required();
  }
  {
    auto* s = add("chi-theta", "chi(X^[k], Theta_e)", cmd_chi_theta);
    surface(s);
    realize(s);
    s->add_option("--e", p.e, "split degrees of e ('none' for the empty class)");
    s->add_option("--e-chern", p.e_chern);
    s->add_option("--k", p.k)->required();
  }
  {
    auto* s = add("verify-conjecture", "compare quot counts with chi(Theta_e) for k = 1..kmax", cmd_verify_conjecture);
    surface(s);
    realize(s);
    s->add_option("--r", p.r)->required();
    s->add_option("--d", p.d)->required();
    s->add_option("--kmax", p.kmax)->required();
  }
  {
    auto* s = add("taut-integral", "integral over X^[k] or over the virtual class of S_{V,k}", cmd_taut_integral);
    surface(s);
    realize(s);
    s->add_option("--k", p.k)->required();
    s->add_option("--expr", p.expr);
    s->add_option("--bundle", p.bundles, "NAME=SPEC, repeatable");
    s->add_option("--vstar", p.vstar);
    s->add_option("--vstar-chern", p.vstar_chern);
    s->add_option("--lambda", p.lambda);
    s->add_flag("--stand-in", p.stand_in, "allow a non-honest V* for the ambient space");
    s->add_option("--truncation", p.truncation, "highest power of h kept");
  }
  {
    auto* s = add("universal-poly", "fit the universal polynomial", cmd_universal_poly);
    s->add_option("--shape", p.shape, "'quot-count' or an expression in c_j(IT) and h");
    s->add_option("--k", p.k)->required();
    s->add_option("--rank-v", p.rank_v);
    s->add_option("--rank-lambda", p.rank_lambda);
    s->add_option("--max-degree", p.max_degree);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  ctx.err = &err;
  try {
    ctx.seed = resolve_seed(p.seed);
    if (!p.no_cache) ctx.cache.emplace(ResultCache::default_path());
    Outcome o = handlers.at(name)(ctx);
    o.report["command"] = name;
    o.report["engine_version"] = kEngineVersion;
    o.report["seed"] = ctx.seed;
    emit(o.report, p.format, out);
    return o.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.flag << ": " << e.message << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hq
