// Canonical JSON encoding of instances and schedules.
#pragma once

#include <string>
#include <string_view>

#include "eosb/core.hpp"

namespace eosb {

// Byte-stable output: sorted keys, shortest round-trip numbers, no whitespace
// variation. Equal instances serialise to identical bytes.
std::string serialize_instance(const Instance& instance);
Instance deserialize_instance(std::string_view bytes);

std::string serialize_schedule(const Schedule& schedule);
Schedule deserialize_schedule(std::string_view bytes);

std::string sha256_hex(std::string_view bytes);
std::string instance_digest(const Instance& instance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace eosb
