// SPDX-License-Identifier: Apache-2.0
//
// fasrssi - RSSI ranging with fluid antenna systems
// Copyright (C) 2026 The fasrssi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace fasrssi {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument, out-of-range index or malformed input file.
class InputError : public Error {
public:
    using Error::Error;
};

/// A model is being used outside the range where it is well defined
/// (e.g. a correlation matrix that needs a large PSD correction).
class ModelValidityError : public Error {
public:
    using Error::Error;
};

/// Singular geometry, failed factorization and the like.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace fasrssi
