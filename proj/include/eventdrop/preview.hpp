/**
 * Copyright 2026 The EventDrop Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "eventdrop/codec.hpp"
#include "eventdrop/tensor.hpp"

namespace eventdrop {

/// PNG rendering of a representation.
///
/// Grids are first summed over their time_bin axis. A single channel becomes
/// 8-bit grayscale on black, scaled so the largest cell is white. A polarity
/// pair becomes RGB on white: positive mass pulls towards red, negative towards
/// blue, both scaled by the largest cell of either channel. Anything else
/// throws UnsupportedShape. Output bytes depend only on the grid.
Bytes render_preview(const TensorGrid &grid);

}  // namespace eventdrop
