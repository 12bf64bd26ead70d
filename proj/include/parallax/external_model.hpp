#pragma once

#include <memory>
#include <string>
#include <vector>

#include "parallax/model.hpp"

namespace parallax {

/// Spawns the command and runs the line protocol handshake:
///   engine -> "PARALLAX-MODEL 1", model -> "OK <dim>",
///   then EVAL batches and a final END. Any unexpected token is an oracle
/// error. The child is a single-owner resource; concurrent batches are
/// serialized through one request queue. A deterministic spot check re-sends
/// 1% of each batch and errors if the child changes its answer.
std::unique_ptr<perception_model> make_external_model(const std::vector<std::string>& command);

} // namespace parallax
