// Copyright 2026 The cvqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVQKD_ERROR_HPP
#define CVQKD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cvqkd {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside its mathematical domain (V < 1, T > 1, bad index, ...).
class DomainError : public Error {
 public:
    using Error::Error;
};

/// A covariance matrix violates the uncertainty principle beyond tolerance.
class PhysicalityError : public Error {
 public:
    using Error::Error;
};

/// Conditioning on a quadrature whose variance is (numerically) zero.
class DegenerateMeasurementError : public Error {
 public:
    using Error::Error;
};

/// A two-mode matrix was expected in [[a I, c Z], [c Z, b I]] form.
class NormalFormError : public Error {
 public:
    using Error::Error;
};

/// Amplifier gains push the transformed state outside the set of valid states.
class UnphysicalAmplificationError : public PhysicalityError {
 public:
    using PhysicalityError::PhysicalityError;
};

/// Malformed run configuration. `line()` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
 public:
    ConfigError(int line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const noexcept { return line_; }

 private:
    int line_;
};

}  // namespace cvqkd

#endif  // CVQKD_ERROR_HPP
