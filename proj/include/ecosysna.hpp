// Copyright 2026 The ecosysna Authors.
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


#ifndef ECOSYSNA_ECOSYSNA_HPP_
#define ECOSYSNA_ECOSYSNA_HPP_

#include "ecosysna/collapse.hpp"
#include "ecosysna/community.hpp"
#include "ecosysna/error.hpp"
#include "ecosysna/graph.hpp"
#include "ecosysna/ingest.hpp"
#include "ecosysna/metrics.hpp"
#include "ecosysna/pipeline.hpp"
#include "ecosysna/report.hpp"
#include "ecosysna/sampler.hpp"

#endif  // ECOSYSNA_ECOSYSNA_HPP_
