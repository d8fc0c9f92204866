// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The rfsurf Authors
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

#ifndef RFSURF_ERROR_HPP
#define RFSURF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rfsurf {

// Config length does not match the environment's element count.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// |h_Z| == 0: ratios relative to the all-off state are undefined.
class DegenerateBaselineError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Zero-length path or otherwise unusable scene geometry.
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Bad parameter value (empty input, size guard, budget too small, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input file (JSON schema, hex bitstring, binary grid header).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rfsurf

#endif
