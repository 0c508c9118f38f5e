#pragma once

#include "specfact/cli.hpp"
#include "specfact/completion.hpp"
#include "specfact/errors.hpp"
#include "specfact/expr_parser.hpp"
#include "specfact/field_tower.hpp"
#include "specfact/identity_check.hpp"
#include "specfact/jl_construct.hpp"
#include "specfact/matrix.hpp"
#include "specfact/poly.hpp"
#include "specfact/problem.hpp"
#include "specfact/ratfun.hpp"
#include "specfact/report.hpp"
#include "specfact/spectral_factor.hpp"
#include "specfact/taylor_kernel.hpp"
#include "specfact/types.hpp"
