/*
 * Copyright 2026 The csmoute Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CSMOUTE_ERROR_HPP
#define CSMOUTE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csmoute {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with the input itself: unreadable files, malformed text,
/// datasets that violate the binary-class contract.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  /// 1-based line number in the source text.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

/// A well-formed request that cannot be carried out with the given data or
/// parameters.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

/// SMUTE asked to remove more rows than the class can give up.
class InfeasibleError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

/// Interpolation requested on a class with fewer than two rows.
class DegenerateClassError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

/// A statistical test whose sample is below the supported minimum.
class SampleTooSmallError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

/// Correlation requested on a constant series.
class UndefinedCorrelationError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

/// A resampling or fitting failure inside one cross-validation fold.
class FoldError : public ConfigurationError {
 public:
  FoldError(std::size_t repetition, std::size_t fold, const std::string& what)
      : ConfigurationError("repetition " + std::to_string(repetition) + " fold " + std::to_string(fold) + ": " + what),
        repetition_(repetition),
        fold_(fold) {}

  std::size_t repetition() const noexcept { return repetition_; }
  std::size_t fold() const noexcept { return fold_; }

 private:
  std::size_t repetition_;
  std::size_t fold_;
};

}  // namespace csmoute

#endif  // CSMOUTE_ERROR_HPP
