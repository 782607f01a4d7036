#pragma once

#include <stdexcept>
#include <string>

namespace tag {

/// Base for every error raised by the engine.
class TagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyDeckError : public TagError {
 public:
  explicit EmptyDeckError(const std::string& deck) : TagError("draw from empty deck '" + deck + "'") {}
};

class RegistrationError : public TagError {
 public:
  using TagError::TagError;
};

class IllegalActionError : public TagError {
 public:
  using TagError::TagError;
};

class NotFoundError : public TagError {
 public:
  using TagError::TagError;
};

class InvalidArgumentError : public TagError {
 public:
  using TagError::TagError;
};

/// Raised when a game is stopped from the outside (console EOF, session closed).
class GameAbortedError : public TagError {
 public:
  using TagError::TagError;
};

}  // namespace tag
