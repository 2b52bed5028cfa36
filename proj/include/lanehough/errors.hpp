/*
 * Copyright 2026 The lanehough Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LANEHOUGH_ERRORS_HPP
#define LANEHOUGH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lanehough {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// File contents do not match the expected encoding.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Numeric argument outside its legal range, or mismatched configuration.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Image too small for the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Request that is well-formed but not supported (e.g. RGB saved as PGM).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace lanehough

#endif  // LANEHOUGH_ERRORS_HPP
