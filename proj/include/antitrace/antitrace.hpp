#pragma once

// Umbrella header. JSON report helpers live in report_json.hpp and need
// nlohmann/json on the include path.

#include "antitrace/anti_walk.hpp"
#include "antitrace/bits.hpp"
#include "antitrace/canonical.hpp"
#include "antitrace/digraph6.hpp"
#include "antitrace/enumeration.hpp"
#include "antitrace/error.hpp"
#include "antitrace/fsearch.hpp"
#include "antitrace/generators.hpp"
#include "antitrace/graph.hpp"
#include "antitrace/kat.hpp"
#include "antitrace/parallel.hpp"
#include "antitrace/regularity.hpp"
#include "antitrace/solver.hpp"
