#pragma once

#include "ctrmatch/automata.hpp"
#include "ctrmatch/contract.hpp"
#include "ctrmatch/contract_graph.hpp"
#include "ctrmatch/error.hpp"
#include "ctrmatch/graph.hpp"
#include "ctrmatch/graphml.hpp"
#include "ctrmatch/lexer.hpp"
#include "ctrmatch/pipeline.hpp"
#include "ctrmatch/protocol.hpp"
#include "ctrmatch/subgraph_match.hpp"
