#ifndef GRADCODE_GRADCODE_HPP
#define GRADCODE_GRADCODE_HPP

#include "gradcode/bibd.hpp"
#include "gradcode/codes.hpp"
#include "gradcode/ep.hpp"
#include "gradcode/error.hpp"
#include "gradcode/evaluator.hpp"
#include "gradcode/graph.hpp"
#include "gradcode/io.hpp"
#include "gradcode/numerics.hpp"
#include "gradcode/rng.hpp"
#include "gradcode/sg.hpp"
#include "gradcode/sparsifier.hpp"
#include "gradcode/sweep.hpp"
#include "gradcode/validation.hpp"

#endif  // GRADCODE_GRADCODE_HPP
