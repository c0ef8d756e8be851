/*
 * Copyright (C) 2025 The redmule-sim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "redmule/trace.hpp"

#include <ostream>

namespace redmule {

namespace {

const char* unit_name(EventKind k) {
  switch (k) {
    case EventKind::w_load:
    case EventKind::x_load:
    case EventKind::z_store:
      return "port";
    default:
      return "datapath";
  }
}

const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::w_load:
      return "w_load";
    case EventKind::x_load:
      return "x_load";
    case EventKind::z_store:
      return "z_store";
    case EventKind::stall:
      return "stall";
    case EventKind::z_line:
      return "z_line";
  }
  return "?";
}

}  // namespace

void CycleTrace::write_csv(std::ostream& out) const {
  out << "cycle,unit,event,detail\n";
  for (const auto& e : events) {
    out << e.cycle << ',' << unit_name(e.kind) << ',' << event_name(e.kind) << ',' << e.index
        << '\n';
  }
}

}  // namespace redmule
