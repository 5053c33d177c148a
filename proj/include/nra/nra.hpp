#pragma once

#include "nra/bench.hpp"
#include "nra/hybrid.hpp"
#include "nra/localsearch.hpp"
#include "nra/mcsat.hpp"
#include "nra/opencad.hpp"
#include "nra/rf.hpp"
#include "nra/smtlib.hpp"
