#pragma once

#include "monogamy/linalg.hpp"
#include "monogamy/states.hpp"
#include "monogamy/measures.hpp"
#include "monogamy/bounds.hpp"
