#pragma once

#include "symdyn/errors.hpp"
#include "symdyn/text.hpp"
#include "symdyn/word.hpp"
#include "symdyn/subset_window.hpp"
#include "symdyn/integer_sets.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/subshift_queries.hpp"
#include "symdyn/constraint_engine.hpp"
#include "symdyn/independence.hpp"
#include "symdyn/window_avoidance.hpp"
#include "symdyn/syndetic_certificates.hpp"
#include "symdyn/constructions.hpp"
