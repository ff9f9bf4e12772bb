//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_VERSION_HPP
#define COVGEN_VERSION_HPP

namespace covgen {

inline constexpr const char *kEngineVersion = "0.1.0";

}  // namespace covgen

#endif  // COVGEN_VERSION_HPP
