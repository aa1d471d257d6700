#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace tmac {

enum class Errc {
  Parse,
  UnsupportedFeature,
  Type,
  Model,
  ShapeViolation,
  UnknownAction,
  IllFormedInput,
  MacroLeftOperand,
  TooShort,
  NotAMacro,
  NotInPlan,
  NameClash,
  DurationMismatch,
  UnknownSchema,
  UndefinedForAllGroundings,
  NotAMoveSchema,
  Certification,
  Io,
  Internal,
};

struct SourcePos {
  int line = 0;
  int col = 0;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Error(Errc code, std::string message, SourcePos pos)
      : std::runtime_error(at(pos) + message), code_(code), pos_(pos) {}

  Errc code() const { return code_; }
  const std::optional<SourcePos>& pos() const { return pos_; }

 private:
  static std::string at(SourcePos p) {
    return "line " + std::to_string(p.line) + ", col " + std::to_string(p.col) + ": ";
  }

  Errc code_;
  std::optional<SourcePos> pos_;
};

}  // namespace tmac
