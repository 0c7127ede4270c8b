// Compiles every public header on its own.
#include "carnapkit/acceptance.hpp"
#include "carnapkit/algebra.hpp"
#include "carnapkit/budget.hpp"
#include "carnapkit/cli.hpp"
#include "carnapkit/error.hpp"
#include "carnapkit/formula.hpp"
#include "carnapkit/heyting.hpp"
#include "carnapkit/interp.hpp"
#include "carnapkit/interpretation.hpp"
#include "carnapkit/io.hpp"
#include "carnapkit/nucleus.hpp"
#include "carnapkit/point_set.hpp"
#include "carnapkit/poset.hpp"
#include "carnapkit/program.hpp"
#include "carnapkit/prover.hpp"
#include "carnapkit/table_search.hpp"
#include "carnapkit/topology.hpp"
#include "carnapkit/valuation.hpp"
