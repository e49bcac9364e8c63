// SPDX-License-Identifier: MIT
#include <doctest.h>
