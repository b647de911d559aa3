#include "diracqes/json_io.hpp"

#include "diracqes/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace diracqes {

using nlohmann::json;

std::string to_json(const ProblemInstance& inst, int indent) {
  json j;
  j["geometry"] = to_string(inst.geometry);
  j["M"] = inst.params.M;
  j["kappa"] = inst.params.kappa;
  j["mu_n"] = inst.params.mu_n;
  j["alpha"] = inst.potentials.alpha;
  j["beta"] = inst.potentials.beta;
  j["alpha_poly"] = inst.potentials.alpha_poly;
  j["beta_poly"] = inst.potentials.beta_poly;
  j["gamma_poly"] = inst.potentials.gamma_poly;
  return j.dump(indent);
}

ProblemInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid instance JSON: ") + e.what());
  }
  static const char* keys[] = {"geometry", "M", "kappa", "mu_n", "alpha",
                               "beta", "alpha_poly", "beta_poly", "gamma_poly"};
  for (const char* k : keys)
    if (!j.contains(k)) throw ConfigError(std::string("instance JSON lacks key '") + k + "'");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(std::begin(keys), std::end(keys), it.key()) == std::end(keys))
      throw ConfigError("instance JSON has unknown key '" + it.key() + "'");

  ProblemInstance inst;
  try {
    inst.geometry = geometry_from_string(j.at("geometry").get<std::string>());
    inst.params.M = j.at("M").get<double>();
    inst.params.kappa = j.at("kappa").get<double>();
    inst.params.mu_n = j.at("mu_n").get<double>();
    inst.potentials.alpha = j.at("alpha").get<double>();
    inst.potentials.beta = j.at("beta").get<double>();
    inst.potentials.alpha_poly = j.at("alpha_poly").get<std::vector<double>>();
    inst.potentials.beta_poly = j.at("beta_poly").get<std::vector<double>>();
    inst.potentials.gamma_poly = j.at("gamma_poly").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("instance JSON has a field of the wrong type: ") + e.what());
  }
  inst.validate();
  return inst;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

} // namespace diracqes
