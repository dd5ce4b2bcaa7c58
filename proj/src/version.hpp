//===-- version.hpp ---------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_VERSION_HPP
#define OPTPREFIX_VERSION_HPP

namespace optprefix {

inline constexpr const char *kVersion = "0.1.0";

} // namespace optprefix

#endif // OPTPREFIX_VERSION_HPP
