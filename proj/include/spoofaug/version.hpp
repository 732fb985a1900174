// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SPOOFAUG_VERSION_HPP_
#define SPOOFAUG_VERSION_HPP_

namespace spoofaug {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // SPOOFAUG_VERSION_HPP_
