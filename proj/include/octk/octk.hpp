#pragma once

#include "octk/dimacs.hpp"
#include "octk/field.hpp"
#include "octk/flow.hpp"
#include "octk/gammoid.hpp"
#include "octk/generate.hpp"
#include "octk/graph.hpp"
#include "octk/kernel.hpp"
#include "octk/matrix.hpp"
#include "octk/oct.hpp"
#include "octk/verify.hpp"
