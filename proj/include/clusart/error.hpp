#pragma once

#include <stdexcept>
#include <string>

namespace clusart {

// Base class for every error raised by the library. The CLI maps
// ParameterError to a usage failure (exit 2) and everything else to exit 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid argument or configuration value supplied by the caller.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A numeric precondition does not hold (vector outside [0,1], length mismatch...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class EmptyVocabularyError : public Error {
 public:
  using Error::Error;
};

// Fewer than two distinct words for the Huffman tree.
class DegenerateVocabularyError : public Error {
 public:
  using Error::Error;
};

// A document cannot be embedded (no in-vocabulary tokens).
class InferenceError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace clusart
