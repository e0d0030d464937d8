#pragma once

#include <string>
#include <vector>

namespace mtp {

struct Record {
  std::vector<double> inputs;
  double target = 0.0;
  std::string label;
};

struct Dataset {
  std::size_t arity = 0;
  std::vector<Record> records;
  std::string name;
};

}  // namespace mtp
