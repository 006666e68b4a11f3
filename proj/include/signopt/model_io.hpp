#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "signopt/types.hpp"

namespace signopt {

// Line-oriented model text format:
//   # lambda=<x> loss=<name> seed=<s>
//   h c_h w_h          (one line per coordinate, h is 1-based, %.17g weights)
struct StoredModel {
  StoredModel(PrimalModel m, double lambda_in, std::string loss_name_in,
              std::uint64_t seed_in)
      : model(std::move(m)),
        lambda(lambda_in),
        loss_name(std::move(loss_name_in)),
        seed(seed_in) {}

  PrimalModel model;
  double lambda;
  std::string loss_name;
  std::uint64_t seed;
};

void write_model(std::ostream& out, const StoredModel& stored);
void write_model_file(const std::string& path, const StoredModel& stored);
StoredModel read_model(std::istream& in);
StoredModel read_model_file(const std::string& path);

}  // namespace signopt
