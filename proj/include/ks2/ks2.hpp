// Copyright 2026 The ks2 Authors.
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

#include "ks2/approximations.hpp"
#include "ks2/combinatorics.hpp"
#include "ks2/equal_sample.hpp"
#include "ks2/lattice.hpp"
#include "ks2/lattice_types.hpp"
#include "ks2/output.hpp"
#include "ks2/parallel.hpp"
#include "ks2/scan.hpp"
