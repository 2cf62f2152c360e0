// SPDX-License-Identifier: Apache-2.0
#include "tfa/transceiver.hpp"
