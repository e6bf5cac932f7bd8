#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "affchab/hyperell.hpp"
#include "affchab/modeldata.hpp"

namespace affchab {

/// Contents of a curve file: a hyperelliptic model, or bare invariants for an
/// externally described model.
struct CurveSpec {
    std::optional<HyperellipticCurve> curve;
    NumberFieldInvariants inv;
    bool has_rank = false;
};

CurveSpec parse_curve_file(const std::string& bytes);
std::string read_file(const std::string& path);

enum ExitCode { kExitOk = 0, kExitCondition = 1, kExitInconclusive = 2, kExitInput = 3 };

/// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affchab
