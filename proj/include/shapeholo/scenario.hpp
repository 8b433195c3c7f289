// Copyright 2026 The Shapeholo Authors
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

// Config-driven scenario runner behind the command-line front end.
//
// A config is a JSON object:
//   { "schema_version": 1, "scenario": "<name>", "output_dir": "...",
//     "seed": 0, "threads": 1, "params": { ... } }
// Scenarios: gate-synth, trace-sweep, trimer-sim, phase-sweep, linking,
// demo-budget, ramsey. Outputs are staged and moved into place only after
// the whole scenario succeeded; manifest.json is written last.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shapeholo {

inline constexpr int kConfigSchemaVersion = 1;

const char* library_version();

struct RunOptions {
  std::string out_dir;              // empty: config "output_dir", then $SHAPEHOLO_OUT_DIR, then ./shapeholo_out
  int threads = 0;                  // 0: config value or 1
  std::optional<std::uint64_t> seed;
};

struct ValidationReport {
  std::string scenario;
  std::vector<std::string> notes;  // human-readable physics checks that passed
};

/// Schema and physics checks; never writes. Throws ValidationError or IoError.
ValidationReport validate_config(const std::string& path);

struct RunResult {
  std::string scenario;
  std::string out_dir;
  std::vector<std::string> files;  // relative to out_dir, manifest last
};

/// Throws ValidationError, NumericalError or IoError.
RunResult run_config(const std::string& path, const RunOptions& options);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace shapeholo
