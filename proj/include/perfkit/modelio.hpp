#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "perfkit/qnsolver.hpp"

// Plain-text model files: first line `open <lambda>` or `closed <N> <Z>`,
// then one line per station `name kind V S` with kind `queueing`/`delay`
// (short forms `q`/`d` accepted). `#` starts a comment.

namespace perfkit::modelio {

using Model = std::variant<qnsolver::OpenModel, qnsolver::ClosedModel>;

Model read_model(std::istream& in);
Model read_model_file(const std::string& path);
void write_model(std::ostream& out, const Model& model);

}  // namespace perfkit::modelio
