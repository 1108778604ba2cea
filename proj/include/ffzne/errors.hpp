// Copyright 2026 The ffzne Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ffzne {

// Rejected input: bad parameters, schema violations, broken invariants.
// Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string &msg) : std::runtime_error(msg) {}
};

// A processing stage failed on otherwise valid input (fit failures,
// insufficient layouts, ...). Maps to CLI exit code 3.
class PipelineError : public std::runtime_error {
  public:
    explicit PipelineError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace ffzne
