#pragma once

#include "atr/affixes.hpp"
#include "atr/compiler.hpp"
#include "atr/default_affixes.hpp"
#include "atr/estimator.hpp"
#include "atr/harness.hpp"
#include "atr/matcher.hpp"
#include "atr/query.hpp"
#include "atr/unicode.hpp"
