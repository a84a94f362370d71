#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge {

enum class Errc {
  // graph store
  DuplicateCurie,
  FrozenGraph,
  NotFrozen,
  UnknownEndpoint,
  UnknownHandle,
  DuplicateHandle,
  RepresentativeInAbsorbedSet,
  SelfLoop,
  // ingest
  MalformedHeader,
  MalformedRow,
  InvalidLabelSet,
  InvalidSequence,
  InvalidCoordinate,
  InvalidValue,
  InvalidCurie,
  UnknownSource,
  UnmappedIdentifier,
  UnknownCurie,
  MissingClassNode,
  ConflictingYear,
  IoError,
  SnapshotCorrupt,
  // query / views
  SyntaxError,
  UnboundVariable,
  EmptySequence,
  EmptySelection,
  // pruning
  BothEmpty,
  InvalidParams,
  // link prediction
  NoEdges,
  SequenceTooShort,
  GraphTooSmall,
  ExhaustedSpace,
  CategoryNotFound,
  EmptyTestSet,
  InvalidConfig,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by the query parser; carries the byte offset and what the parser
// would have accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected, std::string found);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
  std::string found_;
};

}  // namespace kgforge
