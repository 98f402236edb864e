// Copyright 2026 The QOC Workbench Authors
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

#ifndef QOC_ERRORS_HPP
#define QOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qoc {

/// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operands that do not belong to the same group, or tables of mismatched shape.
class StructuralError : public Error {
   public:
    using Error::Error;
};

/// A precondition on a parameter failed (bad modulus, point outside the domain, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A configured enumeration or linear-algebra size guard was exceeded.
class CapacityError : public Error {
   public:
    using Error::Error;
};

/// A numerical cross-check disagreed beyond its tolerance.
class ConsistencyError : public Error {
   public:
    using Error::Error;
};

}  // namespace qoc

#endif
