#pragma once

#include "topchain/chains.hpp"
#include "topchain/index.hpp"
#include "topchain/index_io.hpp"
#include "topchain/labels.hpp"
#include "topchain/oracle.hpp"
#include "topchain/query.hpp"
#include "topchain/temporal_graph.hpp"
#include "topchain/transform.hpp"
#include "topchain/types.hpp"
#include "topchain/update.hpp"
