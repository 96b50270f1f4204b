#pragma once

#include "hhmzz/actors.hpp"
#include "hhmzz/attacks.hpp"
#include "hhmzz/config.hpp"
#include "hhmzz/field.hpp"
#include "hhmzz/hash.hpp"
#include "hhmzz/messages.hpp"
#include "hhmzz/netsim.hpp"
#include "hhmzz/oracle.hpp"
#include "hhmzz/protocol.hpp"
#include "hhmzz/transcript.hpp"
