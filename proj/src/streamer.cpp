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

#include "redmule/streamer.hpp"

namespace redmule {

PortOp plan_cycle(const Demands& d) {
  if (d.w_due) return PortOp::w_load;
  if (d.z_pending > 0) return PortOp::z_store;
  if (d.x_pending > 0) return PortOp::x_load;
  return PortOp::idle;
}

TrafficTotals traffic_totals(const CycleTrace& trace) {
  TrafficTotals t;
  t.w_lines = trace.w_lines;
  t.x_lines = trace.x_lines;
  t.z_lines = trace.z_lines;
  t.idle_cycles = trace.idle_cycles;
  return t;
}

}  // namespace redmule
