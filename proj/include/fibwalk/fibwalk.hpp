#pragma once

#include "fibwalk/analysis.hpp"
#include "fibwalk/error.hpp"
#include "fibwalk/fibonacci_word.hpp"
#include "fibwalk/io.hpp"
#include "fibwalk/spin_fourier.hpp"
#include "fibwalk/trace_map.hpp"
#include "fibwalk/version.hpp"
#include "fibwalk/walk.hpp"
