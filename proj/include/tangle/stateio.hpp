#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "tangle/qstate.hpp"
#include "tangle/states.hpp"

namespace tangle {

// Parse failures carry the offending field path, e.g. "$.blocks[0].re".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& message)
      : std::runtime_error("at " + path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct GhzSpec {
  int n_qubits = 0;
};

struct DensePureSpec {
  PureState state;
};

struct DenseMixedSpec {
  DensityMatrix state;
};

// On-disk state description. Complex amplitudes are stored as paired
// real/imaginary arrays.
struct StateFile {
  std::variant<WClassSpec, MixedFamilySpec, PartitionedWSpec, GhzSpec,
               DensePureSpec, DenseMixedSpec>
      payload;

  std::string kind_name() const;
  bool is_pure() const;
  int n_qubits() const;

  PureState to_pure() const;       // throws for mixed kinds
  DensityMatrix to_density() const;
};

StateFile parse_state_file(const std::string& text);
StateFile load_state_file(const std::string& path);

// Canonical serialization: fixed field order, floats at 17 significant
// digits (value-preserving round trips).
std::string serialize_state_file(const StateFile& file);

// Canonical float formatting shared with report emission.
std::string format_double(double value);

}  // namespace tangle
