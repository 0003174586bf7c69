#pragma once

#include <stdexcept>
#include <string>

namespace ocg {

enum class ErrorKind {
  InvalidInput,
  InvalidGame,
  InvalidOrder,
  OverlappingBlocks,
  PlayerAlreadyMember,
  UnknownCoalition,
  NegativeBank,
  InvalidPolicy,
  TooManyPlayers,
  BranchExplosion,
  BudgetExceeded,
  BadParams,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by a resource cap rather than bad input.
  bool is_resource_limit() const noexcept {
    return kind_ == ErrorKind::TooManyPlayers || kind_ == ErrorKind::BranchExplosion ||
           kind_ == ErrorKind::BudgetExceeded;
  }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind);

}  // namespace ocg
