#pragma once

#include "cohom.hpp"
#include "exactalg.hpp"
#include "grobner.hpp"
#include "grobner_cache.hpp"
#include "loopfun.hpp"
#include "parser.hpp"
#include "pipeline.hpp"
#include "report.hpp"
