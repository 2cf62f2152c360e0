// SPDX-License-Identifier: Apache-2.0
#include "tfa/experiments.hpp"
