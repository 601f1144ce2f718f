// Copyright 2026 The cvqss Authors
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

#ifndef CVQSS_CVQSS_HPP_
#define CVQSS_CVQSS_HPP_

#include "cvqss/errors.hpp"
#include "cvqss/gaussian_channel.hpp"
#include "cvqss/gaussian_state.hpp"
#include "cvqss/json.hpp"
#include "cvqss/qss.hpp"
#include "cvqss/security.hpp"
#include "cvqss/steering.hpp"

#endif  // CVQSS_CVQSS_HPP_
