#ifndef HOMEXPR_HOMEXPR_HPP
#define HOMEXPR_HOMEXPR_HPP

#include "homexpr/bigint.hpp"
#include "homexpr/canonical.hpp"
#include "homexpr/enumerate.hpp"
#include "homexpr/errors.hpp"
#include "homexpr/family.hpp"
#include "homexpr/furer.hpp"
#include "homexpr/graph.hpp"
#include "homexpr/graph_io.hpp"
#include "homexpr/homcount.hpp"
#include "homexpr/limits.hpp"
#include "homexpr/ned.hpp"
#include "homexpr/refinement.hpp"
#include "homexpr/spasm.hpp"
#include "homexpr/tables.hpp"
#include "homexpr/treedec.hpp"
#include "homexpr/treewidth.hpp"

#endif  // HOMEXPR_HOMEXPR_HPP
