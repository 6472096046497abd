#include "rankone/dynamics.hpp"
#include "rankone/equivalence.hpp"
#include "rankone/poisson.hpp"
#include "schema.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace rankone::cli {

using namespace detail;

namespace {

constexpr std::size_t kMaxMixingPoints = 100'000;

// Named level sets of one run. X<j> names the tower at stage j unless redefined.
class SetTable {
 public:
  SetTable(const Construction& c, const Json* defs) : c_(c) {
    if (!defs) return;
    if (!defs->is_object()) config_error("sets", "expected an object");
    for (const auto& item : defs->items()) {
      if (item.key().empty()) config_error("sets", "set names must be nonempty");
    }
    for (const auto& item : defs->items()) sets_.emplace(item.key(), build(item.value(), child("sets", item.key())));
  }

  const LevelSet& get(const Json& name, const std::string& path) {
    const std::string key = get_string(name, path);
    if (auto it = sets_.find(key); it != sets_.end()) return it->second;
    if (key.size() > 1 && key[0] == 'X' && std::all_of(key.begin() + 1, key.end(), ::isdigit)) {
      const int j = static_cast<int>(get_int(Json(key.substr(1)), path, 1, 1000));
      return sets_.emplace(key, c_.tower_set(j)).first->second;
    }
    config_error(path, "unknown set '" + key + "'");
  }

 private:
  LevelSet build(const Json& def, const std::string& path) {
    if (!def.is_object()) config_error(path, "expected an object");
    LevelSet out;
    if (find(def, "tower")) {
      check_object(def, path, {"tower", "lift_to"});
      out = c_.tower_set(static_cast<int>(get_int(def["tower"], child(path, "tower"), 1, 1000)));
    } else if (find(def, "ranges")) {
      check_object(def, path, {"stage", "ranges", "lift_to"});
      const int stage = static_cast<int>(get_int(require(def, "stage", path), child(path, "stage"), 1, 1000));
      const Json& ranges = def["ranges"];
      check_array(ranges, child(path, "ranges"), false);
      std::vector<LevelRange> rs;
      for (std::size_t i = 0; i < ranges.size(); ++i) {
        const std::string rpath = child(child(path, "ranges"), i);
        if (!ranges[i].is_array() || ranges[i].size() != 2) config_error(rpath, "expected [lo, hi]");
        rs.push_back({get_bigint(ranges[i][0], rpath), get_bigint(ranges[i][1], rpath)});
      }
      out = c_.level_set(stage, std::move(rs));
    } else if (find(def, "union")) {
      check_object(def, path, {"union", "lift_to"});
      const Json& names = def["union"];
      check_array(names, child(path, "union"));
      std::vector<LevelSet> parts;
      int stage = 1;
      for (std::size_t i = 0; i < names.size(); ++i) {
        parts.push_back(get(names[i], child(child(path, "union"), i)));
        stage = std::max(stage, parts.back().stage());
      }
      out = c_.empty_set(stage);
      for (const auto& p : parts) out = set_union(out, c_.lift(p, stage));
    } else {
      config_error(path, "expected one of 'tower', 'ranges' or 'union'");
    }
    if (const Json* l = find(def, "lift_to")) {
      const int target = static_cast<int>(get_int(*l, child(path, "lift_to"), out.stage(), 1000));
      out = c_.lift(out, target);
    }
    return out;
  }

  const Construction& c_;
  std::map<std::string, LevelSet> sets_;
};

std::string join(const std::vector<std::string>& items, const char* sep = ";") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

template <class T>
std::string join_numbers(const std::vector<T>& items) {
  std::vector<std::string> s;
  for (const auto& x : items) {
    if constexpr (std::is_same_v<T, BigInt>) {
      s.push_back(x.str());
    } else {
      s.push_back(std::to_string(x));
    }
  }
  return join(s);
}

struct Context {
  const RunConfig& config;
  Construction c;
  SetTable sets;
  Report report;

  explicit Context(const RunConfig& cfg)
      : config(cfg), c(cfg.params, cfg.limits), sets(c, find(cfg.document, "sets")) {}

  std::string dec(const Rational& q) const { return render_decimal(q, config.precision); }
  std::string dec(const Real& x) const { return render_decimal(x, config.precision); }

  const Json& block(std::string_view key) const {
    const Json* b = find(config.document, key);
    if (!b) config_error(std::string(key), "the config has no '" + std::string(key) + "' block");
    return *b;
  }

  // The list form of a block: either an array or a single object.
  std::vector<std::pair<const Json*, std::string>> items(std::string_view key) const {
    const Json& b = block(key);
    std::vector<std::pair<const Json*, std::string>> out;
    if (b.is_array()) {
      check_array(b, std::string(key));
      for (std::size_t i = 0; i < b.size(); ++i) out.push_back({&b[i], child(std::string(key), i)});
    } else {
      out.push_back({&b, std::string(key)});
    }
    return out;
  }

  std::vector<int> stage_list(const Json& item, const std::string& path, std::string_view key) const {
    const Json& v = require(item, key, path);
    std::vector<int> out;
    if (v.is_array()) {
      check_array(v, child(path, key));
      for (std::size_t i = 0; i < v.size(); ++i) out.push_back(static_cast<int>(get_int(v[i], child(child(path, key), i), 1, 1000)));
    } else {
      out.push_back(static_cast<int>(get_int(v, child(path, key), 1, 1000)));
    }
    return out;
  }
};

void cmd_stages(Context& ctx) {
  int from = 1;
  int to = std::min(3, ctx.c.last_tower_stage());
  if (const Json* b = find(ctx.config.document, "stages")) {
    check_object(*b, "stages", {"from", "to"});
    if (const Json* f = find(*b, "from")) from = static_cast<int>(get_int(*f, "stages.from", 1, 1000));
    if (const Json* t = find(*b, "to")) to = static_cast<int>(get_int(*t, "stages.to", 1, 1000));
  }
  if (from > to) config_error("stages", "'from' exceeds 'to'");
  ctx.report.columns = {"j", "r_j", "h_j", "w_j", "mu_X_j", "w_j_decimal", "mu_X_j_decimal", "spacers", "offsets"};
  for (int j = from; j <= to; ++j) {
    const BigInt h = ctx.c.height(j);
    const Rational w = ctx.c.width(j);
    const Rational mu = w * Rational(h);
    std::vector<std::string> row{std::to_string(j), "", h.str(), to_string(w), to_string(mu), ctx.dec(w), ctx.dec(mu), "", ""};
    if (j <= ctx.c.last_cut_stage()) {
      const auto& g = ctx.c.geometry(j);
      row[1] = std::to_string(g.cuts);
      row[7] = join_numbers(g.spacers);
      row[8] = join_numbers(g.offsets);
    }
    ctx.report.rows.push_back(std::move(row));
  }
}

void cmd_sidon(Context& ctx) {
  const Json& b = ctx.block("sidon");
  check_object(b, "sidon", {"stages", "exhaustive_budget", "random_samples", "seed"});
  SidonCheckOptions options;
  options.seed = ctx.config.seed;
  if (const Json* e = find(b, "exhaustive_budget")) options.exhaustive_budget = get_bigint(*e, "sidon.exhaustive_budget");
  if (options.exhaustive_budget < 1) config_error("sidon.exhaustive_budget", "must be positive");
  if (const Json* r = find(b, "random_samples")) {
    options.random_samples = static_cast<std::size_t>(get_int(*r, "sidon.random_samples", 0, 10'000'000));
  }
  if (const Json* s = find(b, "seed")) options.seed = get_u64(*s, "sidon.seed");

  ctx.report.columns = {"j", "m", "kind", "columns", "measure", "measure_decimal", "column_bound", "within_bound"};
  Json per_stage = Json::array();
  std::size_t violations = 0;
  for (int j : ctx.stage_list(b, "sidon", "stages")) {
    const SidonReport r = sidon_check(ctx.c, j, options);
    const Rational bound = ctx.c.tower_set(j).measure() / Rational(ctx.c.geometry(j).cuts);
    Rational worst = 0;
    for (const auto& hit : r.hits) {
      worst = std::max(worst, hit.witness.measure);
      ctx.report.rows.push_back({std::to_string(j), hit.m.str(), to_string(hit.witness.kind),
                                 join_numbers(hit.witness.columns), to_string(hit.witness.measure),
                                 ctx.dec(hit.witness.measure), to_string(bound),
                                 hit.witness.measure <= bound ? "yes" : "no"});
    }
    violations += r.violations;
    per_stage.push_back(Json{{"j", j},
                             {"exhaustive", r.exhaustive},
                             {"tested", r.tested},
                             {"random_tested", r.random_tested},
                             {"window_radius", r.window_radius.str()},
                             {"nonempty", r.hits.size()},
                             {"violations", r.violations},
                             {"max_measure", to_string(worst)},
                             {"column_bound", to_string(bound)}});
  }
  ctx.report.summary["seed"] = std::to_string(options.seed);
  ctx.report.summary["exhaustive_budget"] = options.exhaustive_budget.str();
  ctx.report.summary["random_samples"] = options.random_samples;
  ctx.report.summary["stages"] = per_stage;
  ctx.report.summary["violations"] = violations;
  if (violations > 0) ctx.report.exit_code = 1;
}

Direction parse_direction(const Json& v, const std::string& path) {
  const std::string s = get_string(v, path);
  if (s == "forward") return Direction::Forward;
  if (s == "inverse") return Direction::Inverse;
  config_error(path, "expected \"forward\" or \"inverse\"");
}

void cmd_display_stats(Context& ctx) {
  ctx.report.columns = {"set", "j", "direction", "r_j", "mu_A", "expr0", "expr1", "display1_defect",
                        "expr0_decimal", "expr1_decimal", "display1_defect_decimal"};
  for (const auto& [item, path] : ctx.items("theorem3")) {
    check_object(*item, path, {"set", "j", "directions"});
    const LevelSet& a = ctx.sets.get(require(*item, "set", path), child(path, "set"));
    std::vector<Direction> dirs{Direction::Forward, Direction::Inverse};
    if (const Json* d = find(*item, "directions")) {
      check_array(*d, child(path, "directions"));
      dirs.clear();
      for (std::size_t i = 0; i < d->size(); ++i) dirs.push_back(parse_direction((*d)[i], child(child(path, "directions"), i)));
    }
    for (int j : ctx.stage_list(*item, path, "j")) {
      for (Direction dir : dirs) {
        const auto r = display_stats(ctx.c, a, j, dir);
        ctx.report.rows.push_back({(*item)["set"].get<std::string>(), std::to_string(j), to_string(dir),
                                   std::to_string(r.cuts), to_string(r.mu_a), to_string(r.expr0), to_string(r.expr1),
                                   to_string(r.display1_defect), ctx.dec(r.expr0), ctx.dec(r.expr1),
                                   ctx.dec(r.display1_defect)});
      }
    }
  }
}

void cmd_asymmetry(Context& ctx) {
  ctx.report.columns = {"set",           "j",             "r_j",          "mu_A",         "forward_expr0",
                        "forward_expr1", "inverse_expr0", "inverse_expr1", "forward_defect", "inverse_defect",
                        "mirrored"};
  std::size_t asymmetric = 0;
  for (const auto& [item, path] : ctx.items("asymmetry")) {
    check_object(*item, path, {"set", "j"});
    const LevelSet& a = ctx.sets.get(require(*item, "set", path), child(path, "set"));
    for (int j : ctx.stage_list(*item, path, "j")) {
      const auto f = display_stats(ctx.c, a, j, Direction::Forward);
      const auto i = display_stats(ctx.c, a, j, Direction::Inverse);
      const bool mirrored = f.expr0 == i.expr1 && f.expr1 == i.expr0;
      if (f.expr0 != f.expr1) ++asymmetric;
      ctx.report.rows.push_back({(*item)["set"].get<std::string>(), std::to_string(j), std::to_string(f.cuts),
                                 to_string(f.mu_a), to_string(f.expr0), to_string(f.expr1), to_string(i.expr0),
                                 to_string(i.expr1), to_string(f.display1_defect), to_string(i.display1_defect),
                                 mirrored ? "yes" : "no"});
    }
  }
  ctx.report.summary["rows_with_expr0_ne_expr1"] = asymmetric;
}

void cmd_mixing(Context& ctx) {
  ctx.report.columns = {"a", "b", "n", "value", "value_decimal"};
  for (const auto& [item, path] : ctx.items("mixing")) {
    check_object(*item, path, {"a", "b", "n", "n_range"});
    const LevelSet& a = ctx.sets.get(require(*item, "a", path), child(path, "a"));
    const LevelSet& b = ctx.sets.get(require(*item, "b", path), child(path, "b"));
    std::vector<BigInt> ns;
    if (const Json* n = find(*item, "n")) {
      check_array(*n, child(path, "n"));
      for (std::size_t k = 0; k < n->size(); ++k) ns.push_back(get_bigint((*n)[k], child(child(path, "n"), k)));
    }
    if (const Json* r = find(*item, "n_range")) {
      const std::string rpath = child(path, "n_range");
      check_object(*r, rpath, {"from", "to", "step"});
      const BigInt from = get_bigint(require(*r, "from", rpath), child(rpath, "from"));
      const BigInt to = get_bigint(require(*r, "to", rpath), child(rpath, "to"));
      BigInt step = 1;
      if (const Json* s = find(*r, "step")) step = get_bigint(*s, child(rpath, "step"));
      if (step < 1) config_error(child(rpath, "step"), "must be positive");
      if (to >= from && (to - from) / step >= kMaxMixingPoints) config_error(rpath, "more than 100000 points");
      for (BigInt n = from; n <= to; n += step) ns.push_back(n);
    }
    if (ns.empty()) config_error(path, "needs 'n' or 'n_range'");
    if (ns.size() > kMaxMixingPoints) config_error(path, "more than 100000 points");
    for (const auto& p : mixing_curve(ctx.c, a, b, ns)) {
      ctx.report.rows.push_back({(*item)["a"].get<std::string>(), (*item)["b"].get<std::string>(), p.n.str(),
                                 to_string(p.value), ctx.dec(p.value)});
    }
  }
}

PoissonCaps parse_caps(const Json& block, const std::string& path) {
  PoissonCaps caps;
  if (const Json* c = find(block, "caps")) {
    const std::string cpath = child(path, "caps");
    check_object(*c, cpath, {"max_count", "max_factors"});
    if (const Json* m = find(*c, "max_count")) caps.max_count = static_cast<unsigned>(get_int(*m, child(cpath, "max_count"), 0, 64));
    if (const Json* f = find(*c, "max_factors")) {
      caps.max_factors = static_cast<std::size_t>(get_int(*f, child(cpath, "max_factors"), 1, 12));
    }
  }
  return caps;
}

CylinderSpec parse_cylinder(Context& ctx, const Json& parts, const std::string& path) {
  check_array(parts, path);
  CylinderSpec spec;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string ppath = child(path, i);
    check_object(parts[i], ppath, {"set", "count"});
    spec.parts.push_back({ctx.sets.get(require(parts[i], "set", ppath), child(ppath, "set")),
                          static_cast<unsigned>(get_int(require(parts[i], "count", ppath), child(ppath, "count"), 0, 1000))});
  }
  return spec;
}

JointSpec parse_joint(Context& ctx, const Json& factors, const std::string& path) {
  check_array(factors, path);
  JointSpec spec;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string fpath = child(path, i);
    check_object(factors[i], fpath, {"set", "shift", "count"});
    BigInt shift = 0;
    if (const Json* s = find(factors[i], "shift")) shift = get_bigint(*s, child(fpath, "shift"));
    spec.factors.push_back({ctx.sets.get(require(factors[i], "set", fpath), child(fpath, "set")), shift,
                            static_cast<unsigned>(get_int(require(factors[i], "count", fpath), child(fpath, "count"), 0, 1000))});
  }
  return spec;
}

std::string item_name(const Json& item, const std::string& path, const std::string& fallback) {
  if (const Json* n = find(item, "name")) return get_string(*n, child(path, "name"));
  return fallback;
}

void cmd_poisson_exact(Context& ctx) {
  const Json& b = ctx.block("poisson_exact");
  check_object(b, "poisson_exact", {"cylinders", "gaps", "joints", "caps"});
  const PoissonCaps caps = parse_caps(b, "poisson_exact");
  ctx.report.columns = {"kind", "name", "n", "counts", "coeff", "rate", "value",
                        "product_coeff", "product_rate", "product_value", "gap"};
  auto& rows = ctx.report.rows;
  auto list = [&](std::string_view key) {
    std::vector<std::pair<const Json*, std::string>> out;
    if (const Json* v = find(b, key)) {
      const std::string path = child("poisson_exact", key);
      check_array(*v, path);
      for (std::size_t i = 0; i < v->size(); ++i) out.push_back({&(*v)[i], child(path, i)});
    }
    return out;
  };
  for (const auto& [item, path] : list("cylinders")) {
    check_object(*item, path, {"name", "parts"});
    const CylinderSpec spec = parse_cylinder(ctx, require(*item, "parts", path), child(path, "parts"));
    std::vector<unsigned> counts;
    for (const auto& p : spec.parts) counts.push_back(p.count);
    const auto v = cylinder_measure(ctx.c, spec, caps);
    rows.push_back({"cylinder", item_name(*item, path, path), "", join_numbers(counts), to_string(v.coeff),
                    to_string(v.rate), v.render(ctx.config.precision), "", "", "", ""});
  }
  for (const auto& [item, path] : list("gaps")) {
    check_object(*item, path, {"name", "first", "second", "n"});
    const CylinderSpec first = parse_cylinder(ctx, require(*item, "first", path), child(path, "first"));
    const CylinderSpec second = parse_cylinder(ctx, require(*item, "second", path), child(path, "second"));
    const BigInt n = get_bigint(require(*item, "n", path), child(path, "n"));
    const auto g = mixing_gap(ctx.c, first, second, n, caps);
    rows.push_back({"gap", item_name(*item, path, path), n.str(), "", to_string(g.joint.coeff), to_string(g.joint.rate),
                    g.joint.render(ctx.config.precision), to_string(g.product.coeff), to_string(g.product.rate),
                    g.product.render(ctx.config.precision), ctx.dec(g.gap)});
  }
  for (const auto& [item, path] : list("joints")) {
    check_object(*item, path, {"name", "factors", "table"});
    const JointSpec spec = parse_joint(ctx, require(*item, "factors", path), child(path, "factors"));
    const bool table = find(*item, "table") ? get_bool((*item)["table"], child(path, "table")) : false;
    const std::string name = item_name(*item, path, path);
    const auto dist = joint_count_distribution(ctx.c, spec, caps);
    std::vector<unsigned> own;
    for (const auto& f : spec.factors) own.push_back(f.count);
    for (const auto& [counts, v] : dist.table) {
      if (!table && counts != own) continue;
      rows.push_back({table ? "joint-table" : "joint", name, "", join_numbers(counts), to_string(v.coeff),
                      to_string(v.rate), v.render(ctx.config.precision), "", "", "", ""});
    }
    Json atoms = Json::array();
    for (std::size_t mask = 1; mask < dist.atoms.atoms.size(); ++mask) atoms.push_back(to_string(dist.atoms.atoms[mask]));
    ctx.report.summary["atoms"][name] = atoms;
  }
  if (rows.empty()) config_error("poisson_exact", "needs at least one of 'cylinders', 'gaps' or 'joints'");
}

void cmd_poisson_mc(Context& ctx) {
  ctx.report.columns = {"name",           "samples",    "seed",  "workers", "work_stage", "successes", "estimate",
                        "estimate_decimal", "standard_error", "exact_coeff", "exact_rate", "exact_value", "z_score",
                        "within_4se"};
  std::size_t outside = 0;
  for (const auto& [item, path] : ctx.items("poisson_mc")) {
    check_object(*item, path, {"name", "factors", "samples", "seed", "workers", "caps"});
    const PoissonCaps caps = parse_caps(*item, path);
    const JointSpec spec = parse_joint(ctx, require(*item, "factors", path), child(path, "factors"));
    const std::uint64_t samples = static_cast<std::uint64_t>(
        get_int(require(*item, "samples", path), child(path, "samples"), 1, 1'000'000'000));
    const std::uint64_t seed = find(*item, "seed") ? get_u64((*item)["seed"], child(path, "seed")) : ctx.config.seed;
    const unsigned workers = find(*item, "workers")
                                 ? static_cast<unsigned>(get_int((*item)["workers"], child(path, "workers"), 1, 256))
                                 : 1u;
    const auto exact = joint_probability(ctx.c, spec, caps);
    const auto mc = monte_carlo_joint(ctx.c, spec, samples, seed, workers, caps);
    const Rational estimate(BigInt(mc.successes), BigInt(mc.samples));
    const Real diff = abs(to_real(estimate) - exact.to_real());
    const Real se(mc.standard_error);
    bool within = se > 0 ? diff <= 4 * se : diff == 0;
    const std::string z = se > 0 ? ctx.dec(Real(diff / se)) : (diff == 0 ? "0" : "inf");
    if (!within) ++outside;
    ctx.report.rows.push_back({item_name(*item, path, path), std::to_string(samples), std::to_string(seed),
                               std::to_string(workers), std::to_string(mc.work_stage), std::to_string(mc.successes),
                               to_string(estimate), ctx.dec(estimate), ctx.dec(se), to_string(exact.coeff),
                               to_string(exact.rate), exact.render(ctx.config.precision), z, within ? "yes" : "no"});
  }
  ctx.report.summary["outside_4se"] = outside;
  if (outside > 0) ctx.report.exit_code = 1;
}

void cmd_oracle_check(Context& ctx) {
  const Json& b = ctx.block("oracle_check");
  check_object(b, "oracle_check", {"oracle_stage", "set_stage", "random_sets", "seed"});
  EquivalenceOptions options;
  options.oracle_stage = static_cast<int>(get_int(require(b, "oracle_stage", "oracle_check"), "oracle_check.oracle_stage", 1, 1000));
  options.set_stage = static_cast<int>(get_int(require(b, "set_stage", "oracle_check"), "oracle_check.set_stage", 1, 1000));
  if (const Json* r = find(b, "random_sets")) options.random_sets = static_cast<std::size_t>(get_int(*r, "oracle_check.random_sets", 1, 100'000));
  options.seed = find(b, "seed") ? get_u64(b["seed"], "oracle_check.seed") : ctx.config.seed;
  options.budget_floors = ctx.config.budget_floors;
  const auto report = check_equivalence(ctx.c, options);
  ctx.report.columns = {"category", "cases", "mismatches", "skipped"};
  for (const auto& cat : report.categories) {
    ctx.report.rows.push_back({cat.name, std::to_string(cat.cases), std::to_string(cat.mismatches), std::to_string(cat.skipped)});
  }
  ctx.report.summary["oracle_stage"] = options.oracle_stage;
  ctx.report.summary["set_stage"] = options.set_stage;
  ctx.report.summary["random_sets"] = options.random_sets;
  ctx.report.summary["seed"] = std::to_string(options.seed);
  ctx.report.summary["shift_radius"] = report.shift_radius;
  ctx.report.summary["first_mismatches"] = report.first_mismatches;
  ctx.report.summary["passed"] = report.passed();
  if (!report.passed()) ctx.report.exit_code = 1;
}

using Handler = void (*)(Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table{
      {"stages", cmd_stages},           {"sidon", cmd_sidon},
      {"theorem3", cmd_display_stats},       {"mixing", cmd_mixing},
      {"poisson-exact", cmd_poisson_exact}, {"poisson-mc", cmd_poisson_mc},
      {"asymmetry", cmd_asymmetry},     {"oracle-check", cmd_oracle_check}};
  return table;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

Report run_command(const RunConfig& config, std::string_view command) {
  for (const auto& [name, handler] : handlers()) {
    if (name != command) continue;
    Context ctx(config);
    ctx.report.command = name;
    ctx.report.provenance = provenance(config);
    if (const auto* powers = std::get_if<SidonPowerRule>(&config.params.rule); powers && powers->d <= 10) {
      ctx.report.warnings.push_back("d = " + powers->d.str() + " <= 10: the spacer family is outside the range where the Sidon property is proved");
    }
    handler(ctx);
    return std::move(ctx.report);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown command '" + std::string(command) + "'");
}

std::string render_csv(const Report& report) {
  std::string out;
  std::vector<std::string> header;
  for (const auto& c : report.columns) header.push_back(csv_field(c));
  out += join(header, ",") + "\n";
  for (const auto& row : report.rows) {
    std::vector<std::string> fields;
    for (const auto& f : row) fields.push_back(csv_field(f));
    out += join(fields, ",") + "\n";
  }
  return out;
}

std::string render_json(const Report& report) {
  Json doc = Json::object();
  doc["command"] = report.command;
  doc["provenance"] = report.provenance;
  doc["columns"] = report.columns;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < report.columns.size(); ++i) r[report.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["summary"] = report.summary;
  doc["warnings"] = report.warnings;
  doc["exit_code"] = report.exit_code;
  return doc.dump(2) + "\n";
}

std::string render_table(const Report& report, std::size_t max_rows) {
  const std::size_t shown = std::min(max_rows, report.rows.size());
  std::vector<std::size_t> width(report.columns.size());
  for (std::size_t i = 0; i < width.size(); ++i) width[i] = report.columns[i].size();
  for (std::size_t r = 0; r < shown; ++r) {
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = std::max(width[i], report.rows[r][i].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "  " : "") << cells[i];
      if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
    }
    out << "\n";
  };
  line(report.columns);
  for (std::size_t r = 0; r < shown; ++r) line(report.rows[r]);
  if (shown < report.rows.size()) out << "... " << report.rows.size() - shown << " more rows\n";
  if (!report.summary.empty()) out << "summary: " << report.summary.dump() << "\n";
  return out.str();
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<std::string, std::string> files[] = {{report.command + ".csv", render_csv(report)},
                                                       {report.command + ".json", render_json(report)}};
  for (const auto& [name, body] : files) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    f << body;
    if (!f) throw std::filesystem::filesystem_error("cannot write report", dir / name, std::make_error_code(std::errc::io_error));
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeAtomMeasure: return 1;
    case ErrorKind::InvalidArgument:
    case ErrorKind::StageOutOfRange:
    case ErrorKind::StageMismatch:
    case ErrorKind::Overlap:
    case ErrorKind::CountCap: return 2;
    case ErrorKind::HeadroomViolation:
    case ErrorKind::ResourceLimit:
    case ErrorKind::BudgetExceeded: return 3;
  }
  return 2;
}

}  // namespace rankone::cli
