// Copyright 2026 The qaoa-girth Authors
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

// Everything except the file formats in qaoa_girth/io.hpp, which pull in
// nlohmann/json.

#pragma once

#include "qaoa_girth/core.hpp"
#include "qaoa_girth/errors.hpp"
#include "qaoa_girth/finite_d.hpp"
#include "qaoa_girth/infinite_d.hpp"
#include "qaoa_girth/lbfgs.hpp"
#include "qaoa_girth/optim.hpp"
#include "qaoa_girth/parallel.hpp"
#include "qaoa_girth/published.hpp"
#include "qaoa_girth/statevector.hpp"
#include "qaoa_girth/tree.hpp"
#include "qaoa_girth/xorsat.hpp"
