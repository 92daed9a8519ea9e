// Copyright 2026 The ontoca Authors
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

#ifndef ONTOCA_ERRORS_HPP_
#define ONTOCA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ontoca {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ONTOCA_DEFINE_ERROR(Name)   \
  class Name : public Error {       \
   public:                          \
    using Error::Error;             \
  }

ONTOCA_DEFINE_ERROR(DimensionMismatch);
ONTOCA_DEFINE_ERROR(CriticalSpectrum);
ONTOCA_DEFINE_ERROR(ZeroVector);
ONTOCA_DEFINE_ERROR(UnknownPreset);
ONTOCA_DEFINE_ERROR(DomainTooSmall);
ONTOCA_DEFINE_ERROR(GeometryMismatch);
ONTOCA_DEFINE_ERROR(MissingExtraPoint);
ONTOCA_DEFINE_ERROR(LengthTooShort);
ONTOCA_DEFINE_ERROR(InvalidTopology);
ONTOCA_DEFINE_ERROR(EdgeNotInTopology);
ONTOCA_DEFINE_ERROR(InvalidSchedule);
ONTOCA_DEFINE_ERROR(ScheduleExhausted);
ONTOCA_DEFINE_ERROR(DimensionOverflow);
ONTOCA_DEFINE_ERROR(NotPermutation);
ONTOCA_DEFINE_ERROR(NotSelfAdjoint);
ONTOCA_DEFINE_ERROR(FamilyTooNarrow);
ONTOCA_DEFINE_ERROR(IoError);

#undef ONTOCA_DEFINE_ERROR

/// S not symmetric or A not antisymmetric. Carries the first offending pair.
class SymmetryViolation : public Error {
 public:
  SymmetryViolation(const std::string& what, int row, int col)
      : Error(what + " at (" + std::to_string(row) + "," + std::to_string(col) + ")"),
        row_(row),
        col_(col) {}

  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

/// Configuration failed validation; `path()` names the offending field.
class ConfigInvalid : public Error {
 public:
  ConfigInvalid(const std::string& path, const std::string& message)
      : Error(path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace ontoca

#endif  // ONTOCA_ERRORS_HPP_
