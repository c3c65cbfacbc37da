// Copyright 2026 The ronmf Authors. All Rights Reserved.
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

#ifndef RONMF_RONMF_HPP_
#define RONMF_RONMF_HPP_

#include "ronmf/batch.hpp"
#include "ronmf/datagen.hpp"
#include "ronmf/dict_update.hpp"
#include "ronmf/encode.hpp"
#include "ronmf/io.hpp"
#include "ronmf/metrics.hpp"
#include "ronmf/online.hpp"
#include "ronmf/prox.hpp"
#include "ronmf/rng.hpp"
#include "ronmf/types.hpp"

#endif  // RONMF_RONMF_HPP_
