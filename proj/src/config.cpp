#include "favar/config.hpp"

#include "favar/errors.hpp"
#include "favar/io.hpp"

namespace favar {

using nlohmann::json;

json config_to_json(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["out"] = c.out_dir;
  j["data"] = {{"panel", c.panel_path},
               {"meta", c.meta_path},
               {"end_date", c.end_date}};
  json ae = {{"hidden_sizes", c.reducer.ae.hidden_sizes},
             {"activation", activation_name(c.reducer.ae.activation)},
             {"epochs", c.reducer.ae.epochs},
             {"minibatch", c.reducer.ae.minibatch}};
  json reduce = {{"model", reducer_name(c.reducer.kind)},
                 {"q", c.reducer.q},
                 {"ae", ae}};
  if (c.reducer.lle_k) {
    reduce["lle_k"] = *c.reducer.lle_k;
  } else {
    reduce["lle_k"] = nullptr;
  }
  j["reduce"] = reduce;
  j["var"] = {{"p", c.p},
              {"draws", c.sampler.draws},
              {"burn", c.sampler.burn},
              {"xi1_init", c.sampler.xi1_init},
              {"xi2_init", c.sampler.xi2_init},
              {"a0_prior_var", c.sampler.a0_prior_var},
              {"sample_hyper", c.sampler.sample_hyper}};
  j["structural"] = {{"scheme", c.scheme},
                     {"horizons", c.horizons},
                     {"policy_shock", c.policy_shock},
                     {"uncertainty_shock", c.uncertainty_shock},
                     {"targets", c.targets},
                     {"original_units", c.original_units}};
  j["simulate"] = {{"t", c.dgp.t},
                   {"n", c.dgp.n},
                   {"q", c.dgp.q},
                   {"loading_std", c.dgp.loading_std},
                   {"coef_std", c.dgp.coef_std},
                   {"clamp_eps", c.dgp.clamp_eps},
                   {"burn_in", c.dgp.burn_in},
                   {"iqr_lo", c.dgp.iqr_lo},
                   {"iqr_hi", c.dgp.iqr_hi},
                   {"replications", c.replications}};
  j["eval"] = {{"holdout", c.holdout},
               {"ensemble", c.ensemble_size},
               {"refit_every", c.refit_every},
               {"models", c.eval_models}};
  j["importance"] = {{"shapley_permutations", c.shapley_permutations},
                     {"shapley_rows", c.shapley_rows}};
  return j;
}

namespace {

template <typename T>
void maybe(const json& j, const char* key, T& value) {
  if (j.contains(key) && !j.at(key).is_null()) {
    value = j.at(key).get<T>();
  }
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  maybe(j, "seed", c.seed);
  maybe(j, "out", c.out_dir);
  if (j.contains("data")) {
    const auto& d = j.at("data");
    maybe(d, "panel", c.panel_path);
    maybe(d, "meta", c.meta_path);
    maybe(d, "end_date", c.end_date);
  }
  if (j.contains("reduce")) {
    const auto& r = j.at("reduce");
    std::string model = reducer_name(c.reducer.kind);
    maybe(r, "model", model);
    c.reducer.kind = parse_reducer(model);
    maybe(r, "q", c.reducer.q);
    if (r.contains("lle_k") && !r.at("lle_k").is_null()) {
      c.reducer.lle_k = r.at("lle_k").get<int>();
    }
    if (r.contains("ae")) {
      const auto& a = r.at("ae");
      maybe(a, "hidden_sizes", c.reducer.ae.hidden_sizes);
      std::string act = activation_name(c.reducer.ae.activation);
      maybe(a, "activation", act);
      c.reducer.ae.activation = parse_activation(act);
      maybe(a, "epochs", c.reducer.ae.epochs);
      maybe(a, "minibatch", c.reducer.ae.minibatch);
    }
  }
  if (j.contains("var")) {
    const auto& v = j.at("var");
    maybe(v, "p", c.p);
    maybe(v, "draws", c.sampler.draws);
    maybe(v, "burn", c.sampler.burn);
    maybe(v, "xi1_init", c.sampler.xi1_init);
    maybe(v, "xi2_init", c.sampler.xi2_init);
    maybe(v, "a0_prior_var", c.sampler.a0_prior_var);
    maybe(v, "sample_hyper", c.sampler.sample_hyper);
  }
  if (j.contains("structural")) {
    const auto& s = j.at("structural");
    maybe(s, "scheme", c.scheme);
    maybe(s, "horizons", c.horizons);
    maybe(s, "policy_shock", c.policy_shock);
    maybe(s, "uncertainty_shock", c.uncertainty_shock);
    maybe(s, "targets", c.targets);
    maybe(s, "original_units", c.original_units);
  }
  if (j.contains("simulate")) {
    const auto& s = j.at("simulate");
    maybe(s, "t", c.dgp.t);
    maybe(s, "n", c.dgp.n);
    maybe(s, "q", c.dgp.q);
    maybe(s, "loading_std", c.dgp.loading_std);
    maybe(s, "coef_std", c.dgp.coef_std);
    maybe(s, "clamp_eps", c.dgp.clamp_eps);
    maybe(s, "burn_in", c.dgp.burn_in);
    maybe(s, "iqr_lo", c.dgp.iqr_lo);
    maybe(s, "iqr_hi", c.dgp.iqr_hi);
    maybe(s, "replications", c.replications);
  }
  if (j.contains("eval")) {
    const auto& e = j.at("eval");
    maybe(e, "holdout", c.holdout);
    maybe(e, "ensemble", c.ensemble_size);
    maybe(e, "refit_every", c.refit_every);
    maybe(e, "models", c.eval_models);
  }
  if (j.contains("importance")) {
    const auto& i = j.at("importance");
    maybe(i, "shapley_permutations", c.shapley_permutations);
    maybe(i, "shapley_rows", c.shapley_rows);
  }
  c.dgp.holdout = c.holdout;
  return c;
}

RunConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    fail(ErrorKind::Format, path + ": " + e.what());
  }
  return config_from_json(j);
}

void write_config(const RunConfig& config, const std::string& path) {
  write_text_file(path, config_to_json(config).dump(2) + "\n");
}

}  // namespace favar
