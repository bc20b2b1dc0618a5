#pragma once

// Everything the library offers, for callers that do not care to pick.

#include "bdiff/config_io.hpp"
#include "bdiff/core.hpp"
#include "bdiff/es_builder.hpp"
#include "bdiff/eval.hpp"
#include "bdiff/html.hpp"
#include "bdiff/json_io.hpp"
#include "bdiff/mutation.hpp"
#include "bdiff/pipeline.hpp"
