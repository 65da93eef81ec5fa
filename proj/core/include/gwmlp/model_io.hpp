#pragma once

#include <optional>
#include <string>

#include "gwmlp/network.hpp"
#include "gwmlp/optim.hpp"

namespace gwmlp {

/// Versioned flat text model file. Layout:
///   MLPV1
///   layers n0 n1 ... nL
///   hidden_activation relu
///   output_activation linear|relu
///   W<l> rows cols   (+ rows lines of cols values)
///   b<l> 1 cols      (+ one line of values)
/// Values are written with 17 significant digits so a save/load round trip
/// is bit-exact. A checkpoint appends an ADAMV1 section with the step
/// counter, hyperparameters and the m/v moments in parameter order
/// W0, b0, W1, b1, ...
void save_model(const std::string& path, const MlpModel& model);

struct AdamCheckpoint {
  AdamHyper hyper;
  AdamState state;
};

void save_checkpoint(const std::string& path, const MlpModel& model,
                     const AdamCheckpoint& adam);

struct Checkpoint {
  MlpModel model;
  std::optional<AdamCheckpoint> adam;
};

/// Reads the model and, when present, the appended optimizer section.
/// Throws ModelFormatError naming the section that failed to parse.
Checkpoint load_checkpoint(const std::string& path);

/// Model-only load; a trailing ADAMV1 section is allowed and ignored.
MlpModel load_model(const std::string& path);

} // namespace gwmlp
