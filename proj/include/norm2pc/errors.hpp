// Copyright 2026 The norm2pc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace norm2pc {

// Caller misuse: bad widths, mismatched shares, malformed config. CLI exit 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Channel-level failure: connect/accept/read/write errors, peer silence.
// CLI exit 3. (A config-hash mismatch is a UsageError: the wire worked.)
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

// A protocol produced an inconsistent transcript (e.g. frame of unexpected
// size). Distinct from UsageError so tests can tell apart who is at fault.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// Requested an operation this build intentionally does not provide
// (e.g. l2 without a registered sqrt provider). CLI exit 2.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace norm2pc
