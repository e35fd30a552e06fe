#pragma once

#include "heaps/checked_int.hpp"
#include "heaps/graph.hpp"
#include "heaps/multipoly.hpp"
#include "heaps/trace_word.hpp"
#include "heaps/indep_poly.hpp"
#include "heaps/stable_path_tree.hpp"
#include "heaps/bijections.hpp"
#include "heaps/identities.hpp"
