// Copyright 2026 The spoofaug Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
