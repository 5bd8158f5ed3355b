#pragma once
/// @file errors.hpp
/// Typed failures for the contract lifecycle and the secondary market.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optinsure {

enum class ContractError {
    DuplicateInsurance,   // position already backs an active contract
    ExpiryMismatch,
    PositionExercised,
    PositionClosed,
    UnknownPosition,
    AlreadySettled,
    WrongDate,
};

enum class TransferError {
    UnknownContract,
    NotHolder,
    ContractNotActive,
    AfterExpiry,
    BadPrice,
};

const char* to_string(ContractError e);
const char* to_string(TransferError e);

class ContractException : public std::runtime_error {
public:
    ContractException(ContractError code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}
    ContractError code() const { return code_; }

private:
    ContractError code_;
};

class TransferException : public std::runtime_error {
public:
    TransferException(TransferError code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}
    TransferError code() const { return code_; }

private:
    TransferError code_;
};

/// Raised while replaying a scenario script; carries the offending event index.
class ScriptError : public std::runtime_error {
public:
    ScriptError(std::size_t event_index, const std::string& what)
        : std::runtime_error("event " + std::to_string(event_index) + ": " + what),
          event_index_(event_index) {}
    std::size_t event_index() const { return event_index_; }

private:
    std::size_t event_index_;
};

}  // namespace optinsure
