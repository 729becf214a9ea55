#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "crn/serialize.hpp"

namespace crn::testing {

inline Json load_fixture(const std::string& name) {
  std::ifstream in(std::string(CRN_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return Json::parse(ss.str());
}

inline NetworkInstance t2_network() { return network_from_json(load_fixture("t2.json").at("network")); }

}  // namespace crn::testing
