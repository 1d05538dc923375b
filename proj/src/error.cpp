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
#include "eventdrop/error.hpp"

namespace eventdrop {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case Errc::InvalidPolarity: return "InvalidPolarity";
    case Errc::InvalidGeometry: return "InvalidGeometry";
    case Errc::UnsortedStream: return "UnsortedStream";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::FieldOverflow: return "FieldOverflow";
    case Errc::ParseError: return "ParseError";
    case Errc::UnsupportedDtype: return "UnsupportedDtype";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::ZeroDuration: return "ZeroDuration";
    case Errc::UnsupportedShape: return "UnsupportedShape";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string &what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

ParseError::ParseError(std::size_t line, const std::string &what)
    : Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace eventdrop
