#pragma once

#include <string>

#include <json.hpp>

#include "mpsched/instance.hpp"
#include "mpsched/schedule.hpp"

namespace mpsched {

// Instance file schema:
//   { "k": int, "m": int,
//     "products": [{"volume": num, "technologies": [int...]}, ...],
//     "technologies": [{"product": int, "machines": [int...], "rate": num}, ...],
//     "setups": [{"machine": int, "from": int, "to": int, "duration": num}, ...] }
// Setup entries are required for every ordered pair u != q sharing a
// machine; the u == q entry defaults to zero and is not written.
// Serialization is canonical, so read -> write -> read is value-identical
// and a fixed generator seed yields byte-identical files.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Schedule file schema:
//   { "runs": [{"technology": int, "event_point": int,
//               "start": num, "finish": num}, ...],
//     "makespan": num,
//     "produced": [{"product": int, "volume": num}, ...] }
nlohmann::json schedule_to_json(const Schedule& schedule);
void save_schedule(const Schedule& schedule, const std::string& path);

}  // namespace mpsched
