#include "mpsched/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace mpsched {

using nlohmann::json;

json instance_to_json(const Instance& inst) {
  json j;
  j["k"] = inst.num_products();
  j["m"] = inst.num_machines;
  j["products"] = json::array();
  for (const Product& p : inst.products)
    j["products"].push_back({{"volume", p.volume},
                             {"technologies", p.technologies}});
  j["technologies"] = json::array();
  for (const Technology& t : inst.technologies)
    j["technologies"].push_back(
        {{"product", t.product}, {"machines", t.machines}, {"rate", t.rate}});
  j["setups"] = json::array();
  const auto machine_techs = inst.machine_techs();
  for (int l = 1; l <= inst.num_machines; ++l) {
    for (int u : machine_techs[l - 1]) {
      for (int q : machine_techs[l - 1]) {
        if (u == q) continue;
        j["setups"].push_back({{"machine", l},
                               {"from", u},
                               {"to", q},
                               {"duration", inst.setup(l, u, q)}});
      }
    }
  }
  return j;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  const int k = j.at("k").get<int>();
  inst.num_machines = j.at("m").get<int>();
  for (const json& jp : j.at("products")) {
    Product p;
    p.volume = jp.at("volume").get<double>();
    p.technologies = jp.at("technologies").get<std::vector<int>>();
    inst.products.push_back(std::move(p));
  }
  if (inst.num_products() != k)
    throw std::invalid_argument("instance file: k != products length");
  for (const json& jt : j.at("technologies")) {
    Technology t;
    t.product = jt.at("product").get<int>();
    t.machines = jt.at("machines").get<std::vector<int>>();
    t.rate = jt.at("rate").get<double>();
    inst.technologies.push_back(std::move(t));
  }

  const std::size_t d = inst.technologies.size();
  inst.setups.assign(inst.num_machines, std::vector<double>(d * d, 0.0));
  std::vector<std::vector<char>> present(
      inst.num_machines, std::vector<char>(d * d, 0));
  for (const json& js : j.at("setups")) {
    const int l = js.at("machine").get<int>();
    const int u = js.at("from").get<int>();
    const int q = js.at("to").get<int>();
    if (l < 1 || l > inst.num_machines || u < 1 ||
        u > static_cast<int>(d) || q < 1 || q > static_cast<int>(d))
      throw std::invalid_argument("instance file: setup entry out of range");
    inst.setups[l - 1][(u - 1) * d + (q - 1)] = js.at("duration").get<double>();
    present[l - 1][(u - 1) * d + (q - 1)] = 1;
  }

  validate_instance(inst);
  const auto machine_techs = inst.machine_techs();
  for (int l = 1; l <= inst.num_machines; ++l) {
    for (int u : machine_techs[l - 1]) {
      for (int q : machine_techs[l - 1]) {
        if (u != q && !present[l - 1][(u - 1) * d + (q - 1)])
          throw std::invalid_argument(
              "instance file: missing setup entry for machine " +
              std::to_string(l) + " pair (" + std::to_string(u) + ", " +
              std::to_string(q) + ")");
      }
    }
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  json j;
  in >> j;
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json(inst).dump(2) << '\n';
}

json schedule_to_json(const Schedule& schedule) {
  json j;
  j["runs"] = json::array();
  for (const Run& run : schedule.runs)
    j["runs"].push_back({{"technology", run.technology},
                         {"event_point", run.event_point},
                         {"start", run.start},
                         {"finish", run.finish}});
  j["makespan"] = schedule.makespan;
  j["produced"] = json::array();
  for (std::size_t i = 0; i < schedule.produced.size(); ++i)
    j["produced"].push_back(
        {{"product", static_cast<int>(i) + 1}, {"volume", schedule.produced[i]}});
  return j;
}

void save_schedule(const Schedule& schedule, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write schedule file: " + path);
  out << schedule_to_json(schedule).dump(2) << '\n';
}

}  // namespace mpsched
