// Copyright 2026 The polyalg Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyalg {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2 };

/// The polyalg command line. `args` excludes the program name.
///
///   load <csv> --as NAME --schema A:str,B:int [--ring z|gf2|real]
///   query '<sexpr>' [--stats] [--format table|csv|json]
///   show NAME [--format table|csv|json]
///   bench triangle --sizes 8,16,32,64 [--repeats 3] [--with-naive] [--format table|json]
///
/// Every command takes --catalog PATH (default ./polyalg-catalog.json).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace polyalg
