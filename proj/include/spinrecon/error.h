// Copyright 2026 The spinrecon Authors
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

#ifndef SPINRECON_ERROR_H_
#define SPINRECON_ERROR_H_

#include <stdexcept>
#include <string>

namespace spinrecon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad argument: wrong dimension, out-of-range angle, malformed input.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

class SpinMismatch : public Error {
   public:
    using Error::Error;
};

/// A state whose amplitudes all vanish; normalized input never triggers it.
class DegenerateState : public Error {
   public:
    using Error::Error;
};

/// Two measurement nodes closer than the distinctness tolerance.
class DuplicateNode : public Error {
   public:
    using Error::Error;
};

/// A root of the node polynomial has no mirror partner within tolerance.
class PairingFailure : public Error {
   public:
    using Error::Error;
};

/// Sampled zero-probe value fell inside the dead band.
class InconclusiveProbe : public Error {
   public:
    using Error::Error;
};

/// Single-probe disambiguation could not find a separating direction.
class RetriesExhausted : public Error {
   public:
    using Error::Error;
};

/// Zero search found fewer Husimi basins than required and deflation failed.
class NotEnoughMinima : public Error {
   public:
    using Error::Error;
};

}  // namespace spinrecon

#endif  // SPINRECON_ERROR_H_
