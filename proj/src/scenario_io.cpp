#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "riscom/scenario_io.hpp"

namespace riscom {

namespace {

using nlohmann::json;

Vec3 to_vec(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw InvalidConfig(key + ": expected [x, y, z]");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw InvalidConfig(key + ": coordinates must be numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

json from_vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

const std::set<std::string> kKeys = {
    "N", "K", "L_x", "L_y", "e", "f", "B", "P_max", "gamma_th", "sigma2", "K_R", "alpha1", "alpha2", "beta0",
    "antenna_spacing", "direct_blockage", "bs_pos", "ris_pos", "mr_positions", "target_pos", "delta_sca",
    "vartheta_phase", "theta_outer", "max_outer", "max_inner", "mc_drops"};

}  // namespace

ScenarioConfig scenario_from_json(const std::string& text, const ScenarioConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw InvalidConfig(std::string("scenario JSON: ") + ex.what());
  }
  if (!j.is_object()) throw InvalidConfig("scenario JSON must be an object");
  for (const auto& [k, v] : j.items())
    if (!kKeys.count(k)) throw InvalidConfig("scenario JSON: unknown key '" + k + "'");

  ScenarioConfig c = base;
  // the noise PSD is stored per MHz; keep it so a changed B rescales sigma2
  double psd = linear_to_db(c.sigma2 / (c.B / 1e6)) + 30.0;
  try {
    auto num = [&](const char* key, double& out) {
      if (j.contains(key)) out = j.at(key).get<double>();
    };
    auto integer = [&](const char* key, int& out) {
      if (j.contains(key)) out = j.at(key).get<int>();
    };
    integer("N", c.N);
    integer("K", c.K);
    integer("L_x", c.L_x);
    integer("L_y", c.L_y);
    integer("e", c.e);
    num("f", c.f);
    num("B", c.B);
    if (j.contains("P_max")) c.P_max = dbm_to_watt(j.at("P_max").get<double>());
    if (j.contains("gamma_th")) c.gamma_th = j.at("gamma_th").get<double>() * 1e-3;
    num("sigma2", psd);
    num("K_R", c.K_R);
    num("alpha1", c.alpha1);
    num("alpha2", c.alpha2);
    if (j.contains("beta0")) c.beta0 = db_to_linear(j.at("beta0").get<double>());
    num("antenna_spacing", c.antenna_spacing);
    if (j.contains("direct_blockage")) c.direct_blockage = db_to_linear(j.at("direct_blockage").get<double>());
    if (j.contains("bs_pos")) c.bs_pos = to_vec(j.at("bs_pos"), "bs_pos");
    if (j.contains("ris_pos")) c.ris_pos = to_vec(j.at("ris_pos"), "ris_pos");
    if (j.contains("target_pos")) c.target_pos = to_vec(j.at("target_pos"), "target_pos");
    if (j.contains("mr_positions")) {
      const json& m = j.at("mr_positions");
      if (!m.is_array()) throw InvalidConfig("mr_positions: expected an array of [x, y, z]");
      c.mr_positions.clear();
      for (const auto& p : m) c.mr_positions.push_back(to_vec(p, "mr_positions"));
    } else if (j.contains("K") && c.K != base.K) {
      // resample the default train layout for a new relay count
      const Vec3 first = base.mr_positions.front(), last = base.mr_positions.back();
      c.mr_positions = train_positions(c.K, first.x(), first.y(), (last - first).norm(), first.z());
    }
    num("delta_sca", c.delta_sca);
    num("vartheta_phase", c.vartheta_phase);
    num("theta_outer", c.theta_outer);
    integer("max_outer", c.max_outer);
    integer("max_inner", c.max_inner);
    integer("mc_drops", c.mc_drops);
  } catch (const json::exception& ex) {
    throw InvalidConfig(std::string("scenario JSON: ") + ex.what());
  }
  c.sigma2 = noise_power_w(psd, c.B);
  c.validate();
  return c;
}

ScenarioConfig scenario_from_json(const std::string& text) { return scenario_from_json(text, default_scenario()); }

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open scenario file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return scenario_from_json(ss.str());
  } catch (const InvalidConfig& ex) {
    throw InvalidConfig(path.string() + ": " + ex.what());
  }
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["N"] = c.N;
  j["K"] = c.K;
  j["L_x"] = c.L_x;
  j["L_y"] = c.L_y;
  j["e"] = c.e;
  j["f"] = c.f;
  j["B"] = c.B;
  j["P_max"] = watt_to_dbm(c.P_max);
  j["gamma_th"] = c.gamma_th * 1e3;
  j["sigma2"] = linear_to_db(c.sigma2 / (c.B / 1e6)) + 30.0;
  j["K_R"] = c.K_R;
  j["alpha1"] = c.alpha1;
  j["alpha2"] = c.alpha2;
  j["beta0"] = linear_to_db(c.beta0);
  j["antenna_spacing"] = c.antenna_spacing;
  j["direct_blockage"] = linear_to_db(c.direct_blockage);
  j["bs_pos"] = from_vec(c.bs_pos);
  j["ris_pos"] = from_vec(c.ris_pos);
  j["mr_positions"] = json::array();
  for (const auto& p : c.mr_positions) j["mr_positions"].push_back(from_vec(p));
  j["target_pos"] = from_vec(c.target_pos);
  j["delta_sca"] = c.delta_sca;
  j["vartheta_phase"] = c.vartheta_phase;
  j["theta_outer"] = c.theta_outer;
  j["max_outer"] = c.max_outer;
  j["max_inner"] = c.max_inner;
  j["mc_drops"] = c.mc_drops;
  return j.dump(2) + "\n";
}

}  // namespace riscom
