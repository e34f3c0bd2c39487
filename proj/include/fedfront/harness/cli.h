// Copyright 2026 The FedFront Authors
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

#ifndef FEDFRONT_HARNESS_CLI_H_
#define FEDFRONT_HARNESS_CLI_H_

namespace fedfront::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitRunFailure = 3,
};

// Entry point of the fedfront command-line tool. Subcommands: preprocess,
// synth, train, sweep, report.
int CliMain(int argc, const char* const* argv);

}  // namespace fedfront::harness

#endif  // FEDFRONT_HARNESS_CLI_H_
