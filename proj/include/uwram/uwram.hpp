#pragma once

#include "uwram/error.hpp"
#include "uwram/wideword.hpp"
#include "uwram/machine.hpp"
#include "uwram/oracles.hpp"
#include "uwram/fsram.hpp"
#include "uwram/priority_queue.hpp"
#include "uwram/dynamic_prefix_sums.hpp"
#include "uwram/static_prefix_sums.hpp"
#include "uwram/subset_sum.hpp"
#include "uwram/knapsack.hpp"
#include "uwram/lcs.hpp"
#include "uwram/four_russians.hpp"
#include "uwram/string_search.hpp"
