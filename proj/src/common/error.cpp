#include "kgforge/common/error.hpp"

namespace kgforge {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateCurie: return "DuplicateCurie";
    case Errc::FrozenGraph: return "FrozenGraph";
    case Errc::NotFrozen: return "NotFrozen";
    case Errc::UnknownEndpoint: return "UnknownEndpoint";
    case Errc::UnknownHandle: return "UnknownHandle";
    case Errc::DuplicateHandle: return "DuplicateHandle";
    case Errc::RepresentativeInAbsorbedSet: return "RepresentativeInAbsorbedSet";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::InvalidLabelSet: return "InvalidLabelSet";
    case Errc::InvalidSequence: return "InvalidSequence";
    case Errc::InvalidCoordinate: return "InvalidCoordinate";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::InvalidCurie: return "InvalidCurie";
    case Errc::UnknownSource: return "UnknownSource";
    case Errc::UnmappedIdentifier: return "UnmappedIdentifier";
    case Errc::UnknownCurie: return "UnknownCurie";
    case Errc::MissingClassNode: return "MissingClassNode";
    case Errc::ConflictingYear: return "ConflictingYear";
    case Errc::IoError: return "IoError";
    case Errc::SnapshotCorrupt: return "SnapshotCorrupt";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::EmptySequence: return "EmptySequence";
    case Errc::EmptySelection: return "EmptySelection";
    case Errc::BothEmpty: return "BothEmpty";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::NoEdges: return "NoEdges";
    case Errc::SequenceTooShort: return "SequenceTooShort";
    case Errc::GraphTooSmall: return "GraphTooSmall";
    case Errc::ExhaustedSpace: return "ExhaustedSpace";
    case Errc::CategoryNotFound: return "CategoryNotFound";
    case Errc::EmptyTestSet: return "EmptyTestSet";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

namespace {

std::string describe_syntax_error(std::size_t position, const std::vector<std::string>& expected,
                                  const std::string& found) {
  std::string msg = "at offset " + std::to_string(position) + ": expected ";
  if (expected.size() > 1) msg += "one of ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) msg += ", ";
    msg += expected[i];
  }
  msg += ", found " + (found.empty() ? std::string("end of input") : "'" + found + "'");
  return msg;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected, std::string found)
    : Error(Errc::SyntaxError, describe_syntax_error(position, expected, found)),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

}  // namespace kgforge
