// Copyright 2026 The expinfo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EXPINFO_ERRORS_H_
#define EXPINFO_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expinfo {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a precondition (bad parameter, bad flag combination).
// The CLI maps this to exit code 1.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data is malformed or inconsistent with the model.
// The CLI maps this to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// Support enumeration stopped because more than `cap` sequences exist.
class CapExceededError : public DataError {
 public:
  CapExceededError(std::size_t cap, std::size_t reached)
      : DataError("support size exceeds cap " + std::to_string(cap) +
                  " (reached " + std::to_string(reached) + " sequences)"),
        cap_(cap),
        reached_(reached) {}

  std::size_t cap() const { return cap_; }
  std::size_t reached() const { return reached_; }

 private:
  std::size_t cap_;
  std::size_t reached_;
};

// Both samples of a t-test have zero variance; no statistic exists.
class DegenerateVarianceError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace expinfo

#endif  // EXPINFO_ERRORS_H_
