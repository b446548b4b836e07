#pragma once

#include <stdexcept>
#include <string>

namespace se2recon {

// Array shapes disagree (grid size or angle count).
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Caller violated an operation precondition (e.g. data not supported on the
// feature-map graph, too few samples for a fit).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Calderon lower bound numerically vanished for the requested band radius.
class IllConditionedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Dense solve requested on an instance whose certificate says sigma >= 1.
class NotSolvableError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Dense materialization refused: n^2 * m exceeds the instance-size limit.
class SizeGuardError : public std::length_error {
public:
  using std::length_error::length_error;
};

// Malformed file or container.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace se2recon
