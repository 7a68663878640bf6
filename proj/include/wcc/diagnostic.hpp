#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace wcc {

/// A failed check: which condition broke and a witness that shows it.
///
/// `code` is a short machine-readable tag ("C2", "W1", "cocycle", ...);
/// `witness` holds named integer/real/text fragments so reports can be
/// serialized without knowing the check that produced them.
struct Diagnostic {
  std::string code;
  std::string message;
  std::map<std::string, std::string> witness;

  Diagnostic& with(const std::string& key, const std::string& value) {
    witness[key] = value;
    return *this;
  }
  template <class T>
  Diagnostic& with(const std::string& key, const T& value) {
    witness[key] = std::to_string(value);
    return *this;
  }
};

/// Value-or-diagnostic result for checks whose failure is an expected outcome.
template <class T>
class Checked {
 public:
  Checked(T value) : state_(std::move(value)) {}            // NOLINT
  Checked(Diagnostic diag) : state_(std::move(diag)) {}     // NOLINT

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Checked::value on diagnostic: " + diagnostic().message);
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Checked::value on diagnostic: " + diagnostic().message);
    return std::get<T>(std::move(state_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Diagnostic& diagnostic() const { return std::get<Diagnostic>(state_); }

 private:
  std::variant<T, Diagnostic> state_;
};

/// Thrown when an operation refuses to run (search or resource bound exceeded).
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an input violates a structural invariant that the caller
/// was required to establish.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(Diagnostic diag)
      : std::invalid_argument(diag.code + ": " + diag.message), diag_(std::move(diag)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace wcc
