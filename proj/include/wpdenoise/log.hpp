// Copyright 2026 The wpdenoise Authors. All Rights Reserved.
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

#ifndef WPDENOISE_LOG_HPP_
#define WPDENOISE_LOG_HPP_

#include <functional>
#include <string_view>

namespace wpdenoise {

using LogSink = std::function<void(std::string_view)>;

// Replaces the process-wide sink for informational messages. The default
// writes to stderr; pass nullptr to silence.
void set_log_sink(LogSink sink);
void log_info(std::string_view message);

}  // namespace wpdenoise

#endif  // WPDENOISE_LOG_HPP_
