// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "gdp/density.hpp"
#include "gdp/errors.hpp"
#include "gdp/io.hpp"
#include "gdp/moments.hpp"
#include "gdp/posterior.hpp"
#include "gdp/randmean.hpp"
#include "gdp/stickprior.hpp"

namespace gdp::cli {

namespace {

using io::format_double;

struct Sample {
  double mean;
  double variance;
  double se_mean;
};

Sample describe_sample(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, var, std::sqrt(var / n)};
}

CsvTable column(const std::string& name, const std::vector<double>& xs) {
  CsvTable t({name});
  for (double x : xs) t.row(std::vector<double>{x});
  return t;
}

std::string realization_csv(const StickRealization& r, const Metadata& meta) {
  CsvTable t({"weight", "atom"});
  t.comment("remainder", format_double(r.remainder))
      .comment("truncation_level", std::to_string(r.truncation_level));
  if (r.cap_reached) t.comment("cap_reached", "true");
  for (std::size_t j = 0; j < r.weights.size(); ++j) t.row({r.weights[j], r.atoms[j]});
  return t.render(meta);
}

Outcome run_moments(const Json& cfg, const Metadata& meta) {
  const auto h = parse_mixing(member(cfg, "mixing"));
  const auto base = parse_base(member(cfg, "base"));
  const auto order = static_cast<unsigned>(count_or(cfg, "orders", 4));
  const auto s = summary_moments(h, base);
  CsvTable m({"quantity", "value"});
  m.row(std::vector<std::string>{"mean", format_double(s.mean)});
  m.row(std::vector<std::string>{"variance", format_double(s.variance)});
  m.row(std::vector<std::string>{"third_central", format_double(s.third_central)});
  m.row(std::vector<std::string>{"fourth_central", format_double(s.fourth_central)});
  const auto rec = central_moments(h, base, order, std::max(order, kDefaultMaxMomentOrder));
  CsvTable r({"p", "central_moment"});
  for (unsigned p = 0; p <= order; ++p)
    r.row(std::vector<std::string>{std::to_string(p), format_double(rec[p])});
  Outcome out;
  out.artifacts.push_back({"moments.csv", m.render(meta)});
  out.artifacts.push_back({"recursion.csv", r.render(meta)});
  std::ostringstream line;
  line << "moments: " << h.describe() << " mean=" << format_double(s.mean)
       << " variance=" << format_double(s.variance);
  if (cfg.contains("set")) {
    const Json& a = cfg.at("set");
    const double p0 = base.probability(number(a, "lo"), number(a, "hi"));
    const auto sp = set_prob_moments(h, p0);
    CsvTable t({"quantity", "value"});
    t.comment("p0", format_double(p0));
    t.row(std::vector<std::string>{"mean", format_double(sp.mean)});
    t.row(std::vector<std::string>{"variance", format_double(sp.variance)});
    t.row(std::vector<std::string>{"third_central", format_double(sp.third_central)});
    out.artifacts.push_back({"set_moments.csv", t.render(meta)});
    line << " set_variance=" << format_double(sp.variance);
  }
  out.summary = line.str();
  return out;
}

Outcome run_flex(const Json& cfg, const Metadata& meta) {
  const double b0 = number(cfg, "b0");
  const auto xs = parse_grid(member(cfg, "x_grid"));
  const double q = number_or(cfg, "fourth_standardized", 3.0);
  if (!(q >= 1.0)) throw ConfigError("fourth_standardized must be >= 1");
  const auto sk = skewness_ratio_curve(b0, xs);
  const auto ku = kurtosis_ratio_curve(b0, xs, q);
  CsvTable s({"x", "a", "b", "rho"});
  for (const auto& p : sk.points) s.row({p.x, p.a, p.b, p.value});
  CsvTable k({"x", "a", "b", "kurtosis_ratio"});
  for (const auto& p : ku) k.row({p.x, p.a, p.b, p.value});
  Json body{{"b0", b0}, {"rho_max", sk.rho_max}, {"rho_min", sk.rho_min},
            {"fourth_standardized", q}};
  Outcome out;
  out.artifacts.push_back({"skewness.csv", s.render(meta)});
  out.artifacts.push_back({"kurtosis.csv", k.render(meta)});
  out.artifacts.push_back(json_artifact("flex.json", body, meta));
  out.summary = "flex: b0=" + format_double(b0) + " rho in [" + format_double(sk.rho_min) +
                ", " + format_double(sk.rho_max) + "] over " + std::to_string(xs.size()) +
                " points";
  return out;
}

Outcome run_consistency(const Json& cfg, const Metadata& meta) {
  const double a = number(cfg, "a");
  const double b = number(cfg, "b");
  const Json default_grid = {{"from", 1e3}, {"to", 1e6}, {"per_decade", 10}, {"integer", true}};
  const auto ns = parse_grid(cfg.contains("n_grid") ? cfg.at("n_grid") : default_grid);
  const auto wa = weight_asymptotics(a, b, ns);
  CsvTable t({"n", "u", "w"});
  Json points = Json::array();
  for (std::size_t k = 0; k < wa.n.size(); ++k) {
    t.row({wa.n[k], wa.u[k], wa.w[k]});
    points.push_back({{"n", wa.n[k]}, {"u", wa.u[k]}, {"w", wa.w[k]}});
  }
  Json body{{"a", a},
            {"b", b},
            {"slope", wa.slope},
            {"constant", wa.constant},
            {"reference_constant", wa.reference_constant},
            {"points", points}};
  Outcome out;
  out.artifacts.push_back({"consistency.csv", t.render(meta)});
  out.artifacts.push_back(json_artifact("consistency.json", body, meta));
  out.summary = "consistency: a=" + format_double(a) + " b=" + format_double(b) +
                " slope=" + format_double(wa.slope) + " constant=" + format_double(wa.constant);
  return out;
}

Json ratios_json(const PosteriorRatios& r) {
  return Json{{"nb_n", r.nb},         {"c_n", r.c},          {"nd_n", r.nd},
              {"nn1g_n", r.nn1g},     {"e_n", r.e},          {"f_n", r.f},
              {"h_n", r.h},           {"i_n", r.i},          {"b_next", r.b_next},
              {"c_next", r.c_next},   {"a_next2", r.a_next2}};
}

Outcome run_posterior(const Json& cfg, const Metadata& meta) {
  const auto h = parse_mixing(member(cfg, "mixing"));
  const auto base = parse_base(member(cfg, "base"));
  const Dataset data = Dataset::classify(numbers(cfg, "data"));
  const std::size_t n = data.size();
  if (n == 0) throw ConfigError("posterior needs at least one data point");
  Outcome out;
  Json body{{"n", n}};
  std::ostringstream line;
  line << "posterior: " << h.describe() << " n=" << n;
  if (data.profile() == Dataset::Profile::doubleton_tie) {
    const auto tw = tie_doubleton(h, base, data);
    body["profile"] = "doubleton_tie";
    body["tie"] = {data.tie().first, data.tie().second};
    body["outside_mass_factor"] = tw.outside;
    body["double_point_mass"] = tw.double_point;
    body["single_point_mass"] = tw.single_point;
    body["posterior_mean"] = tw.mean;
    line << " tie outside=" << format_double(tw.outside);
    out.artifacts.push_back(json_artifact("posterior.json", body, meta));
    out.summary = line.str();
    return out;
  }
  const auto pc = constants(h, n);
  const auto m2 = posterior_second_moment(h, base, data);
  body["profile"] = "all_distinct";
  body["w_n"] = pc.w;
  body["log_a_n"] = pc.log_a;
  body["ratios"] = ratios_json(pc.ratios);
  body["posterior_mean"] = m2.mean;
  body["posterior_variance"] = m2.variance;
  line << " w_n=" << format_double(pc.w) << " mean=" << format_double(m2.mean)
       << " variance=" << format_double(m2.variance);

  std::optional<std::pair<double, double>> set;
  if (cfg.contains("set")) {
    const Json& a = cfg.at("set");
    set.emplace(number_or(a, "lo", -HUGE_VAL), number_or(a, "hi", HUGE_VAL));
    const auto ind = base.with_transform(Indicator{set->first, set->second});
    const auto sm = posterior_second_moment(h, ind, data);
    body["set"] = {{"lo", set->first},
                   {"hi", set->second},
                   {"p0", ind.mean_y()},
                   {"posterior_mean", sm.mean},
                   {"posterior_variance", sm.variance}};
  }
  const std::size_t draws = count_or(cfg, "draws", 0);
  if (draws > 0) {
    const double eps = number_or(cfg, "epsilon", kDefaultEpsilon);
    const PosteriorSampler sampler(h, base, data, eps);
    const std::uint64_t seed = derive_seed(meta.seed, "posterior/draws");
    const auto means = tabulate<double>(draws, [&](std::size_t i) {
      return sampler.draw(seed, i).realization.random_mean(base);
    });
    const auto st = describe_sample(means);
    Json mc{{"draws", draws}, {"mean", st.mean}, {"variance", st.variance},
            {"se_mean", st.se_mean}};
    if (set) {
      const auto masses = sampler.sample_set_masses(set->first, set->second, draws, seed);
      const auto ss = describe_sample(masses);
      mc["set_mean"] = ss.mean;
      mc["set_variance"] = ss.variance;
    }
    body["monte_carlo"] = mc;
    const PosteriorDraw first = sampler.draw(seed, 0);
    std::ostringstream csv;
    CsvTable t({"weight", "atom", "pinned"});
    t.comment("remainder", format_double(first.realization.remainder))
        .comment("truncation_level", std::to_string(first.realization.truncation_level));
    for (std::size_t j = 0; j < first.pinned.size(); ++j)
      t.row(std::vector<std::string>{format_double(first.realization.weights[j]),
                                     format_double(first.realization.atoms[j]),
                                     std::to_string(first.pinned[j])});
    out.artifacts.push_back({"posterior_draw.csv", t.render(meta)});
    line << " mc_mean=" << format_double(st.mean);
  }
  out.artifacts.insert(out.artifacts.begin(), json_artifact("posterior.json", body, meta));
  out.summary = line.str();
  return out;
}

Outcome run_simulate(const Json& cfg, const Metadata& meta) {
  const auto h = parse_mixing(member(cfg, "mixing"));
  const auto base = parse_base(member(cfg, "base"));
  const double eps = number_or(cfg, "epsilon", kDefaultEpsilon);
  const std::size_t cap = count_or(cfg, "cap", kDefaultStickCap);
  Outcome out;
  const auto r = sample_process(h, base, eps, derive_seed(meta.seed, "simulate/realization"), cap);
  out.artifacts.push_back({"realization.csv", realization_csv(r, meta)});
  std::ostringstream line;
  line << "simulate: " << h.describe() << " sticks=" << r.truncation_level
       << " remainder=" << format_double(r.remainder);
  const std::size_t draws = count_or(cfg, "draws", 1000);
  if (draws > 0) {
    const auto means =
        sample_random_means(h, base, draws, derive_seed(meta.seed, "simulate/means"), eps);
    out.artifacts.push_back({"random_means.csv", column("theta", means).render(meta)});
    const auto st = describe_sample(means);
    line << " mean_of_means=" << format_double(st.mean);
  }
  if (cfg.contains("chain")) {
    const Json& c = cfg.at("chain");
    const std::size_t steps = count_or(c, "steps", 10000);
    const std::size_t burn = count_or(c, "burn_in", 1000);
    const auto chain = mean_chain(h, base, steps, burn, derive_seed(meta.seed, "simulate/chain"));
    out.artifacts.push_back({"chain.csv", column("theta", chain).render(meta)});
    line << " chain=" << chain.size();
  }
  out.summary = line.str();
  return out;
}

Outcome run_randmean(const Json& cfg, const Metadata& meta) {
  const auto h = parse_mixing(member(cfg, "mixing"));
  ScaleMixture mixture;
  mixture.alpha = number_or(cfg, "alpha", 2.0);
  mixture.normal_convention = flag_or(cfg, "normal_convention", mixture.alpha == 2.0);
  mixture.epsilon = number_or(cfg, "epsilon", kDefaultEpsilon);
  mixture.cap = count_or(cfg, "cap", kDefaultStickCap);
  const std::size_t draws = count_or(cfg, "draws", 10000);
  if (draws == 0) throw ConfigError("draws must be positive");
  const auto xs = sample_scale_mixture(h, mixture, draws, derive_seed(meta.seed, "randmean/samples"));
  Outcome out;
  out.artifacts.push_back({"samples.csv", column("theta", xs).render(meta)});
  const auto p_max = static_cast<unsigned>(count_or(cfg, "w_moments", 4));
  CsvTable wm({"p", "value"});
  for (unsigned p = 1; p <= p_max; ++p)
    wm.row(std::vector<std::string>{std::to_string(p), format_double(w_moment(h, p))});
  out.artifacts.push_back({"w_moments.csv", wm.render(meta)});
  std::ostringstream line;
  line << "randmean: " << h.describe() << " alpha=" << format_double(mixture.alpha)
       << " draws=" << draws << " EW=" << format_double(w_moment(h, 1));
  if (cfg.contains("cf")) {
    const Json& c = cfg.at("cf");
    const double u_max = number_or(c, "u_max", 5.0);
    const auto grid = parse_grid(Json{{"from", 0.0}, {"to", u_max},
                                      {"count", count_or(c, "count", 51)}});
    const double alpha = mixture.alpha;
    const bool normal = mixture.normal_convention;
    const CharacteristicFunction base_cf = [alpha, normal](double u) {
      return std::complex<double>(normal ? std::exp(-0.5 * u * u)
                                         : std::exp(-std::pow(std::abs(u), alpha)),
                                  0.0);
    };
    const auto mean_cf = empirical_cf(xs, u_max, count_or(c, "nodes", 64));
    const auto res = cf_identity_residual(h, base_cf, mean_cf, grid, 1e-9);
    Json pairs = Json::array();
    for (std::size_t k = 0; k < res.u.size(); ++k)
      pairs.push_back({{"u", res.u[k]}, {"residual", res.residual[k]}});
    Json body{{"alpha", alpha},
              {"normal_convention", normal},
              {"draws", draws},
              {"max_residual", res.max_residual},
              {"monte_carlo_bound", 4.0 / std::sqrt(static_cast<double>(draws))},
              {"residuals", pairs}};
    out.artifacts.push_back(json_artifact("cf_residual.json", body, meta));
    line << " cf_max_residual=" << format_double(res.max_residual);
  }
  out.summary = line.str();
  return out;
}

Outcome run_density(const Json& cfg, const Metadata& meta) {
  const auto h = parse_mixing(member(cfg, "mixing"));
  const auto data = numbers(cfg, "data");
  const auto prior = parse_grid_density(member(cfg, "prior"));
  const auto p0 = parse_grid_density(member(cfg, "error"));
  const auto ts = parse_grid(member(cfg, "t_grid"));
  const auto est = density_estimate(data, prior, p0, h, ts);
  CsvTable t({"t", "density"});
  for (std::size_t k = 0; k < est.t.size(); ++k) t.row({est.t[k], est.density[k]});
  const GridFunction fitted{est.t, est.density};
  const double integral = est.t.size() > 1 ? fitted.mass() : 0.0;
  Json body{{"n", data.size()},
            {"w_n", est.w},
            {"posterior_mean", est.posterior_mean},
            {"posterior_sd", est.posterior_sd},
            {"integral", integral}};
  Outcome out;
  out.artifacts.push_back({"density.csv", t.render(meta)});
  out.artifacts.push_back(json_artifact("density.json", body, meta));
  out.summary = "density: n=" + std::to_string(data.size()) + " w_n=" + format_double(est.w) +
                " posterior_sd=" + format_double(est.posterior_sd) +
                " integral=" + format_double(integral);
  return out;
}

using Handler = Outcome (*)(const Json&, const Metadata&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"moments", run_moments},     {"flex", run_flex},         {"consistency", run_consistency},
      {"posterior", run_posterior}, {"simulate", run_simulate}, {"randmean", run_randmean},
      {"density", run_density},
  };
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"moments",  "flex",     "consistency", "posterior",
                                                 "simulate", "randmean", "density"};
  return names;
}

Outcome execute(const std::string& command, const Json& config, std::uint64_t seed) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw ConfigError("unknown subcommand " + command);
  Metadata meta{command, io::hex64(io::fnv1a(command + "\n" + config.dump())), seed};
  return it->second(config, meta);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalised Dirichlet process prior: moments, posteriors and samplers", "gdp"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 1;
  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "root seed");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Json config = parse_config(read_file(config_path));
    Outcome o = execute(command, config, seed);
    write_artifacts(out_dir, o.artifacts);
    out << o.summary << '\n';
    return kExitOk;
  } catch (const NumericalError& e) {
    err << "gdp: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConfigError& e) {
    err << "gdp: config error: " << e.what() << '\n';
  } catch (const UnsupportedConfiguration& e) {
    err << "gdp: unsupported: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "gdp: domain error: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "gdp: config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "gdp: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace gdp::cli
