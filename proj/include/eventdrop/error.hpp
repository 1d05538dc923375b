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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eventdrop {

enum class Errc {
  CoordinateOutOfRange,
  InvalidPolarity,
  InvalidGeometry,
  UnsortedStream,
  TruncatedFile,
  FieldOverflow,
  ParseError,
  UnsupportedDtype,
  MalformedHeader,
  ZeroDuration,
  UnsupportedShape,
  InvalidArgument,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library is an Error carrying a typed code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string &what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// CSV / config parse failure; line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string &what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace eventdrop
