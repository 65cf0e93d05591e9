#pragma once
// Umbrella header for the numerical library. The CLI layer lives in
// pjl/cli.hpp and is not included here.

#include <pjl/real.hpp>
#include <pjl/linalg.hpp>
#include <pjl/quadrature.hpp>
#include <pjl/numdiff.hpp>
#include <pjl/ode.hpp>
#include <pjl/specfun.hpp>
#include <pjl/moments.hpp>
#include <pjl/orthopoly.hpp>
#include <pjl/ladder.hpp>
#include <pjl/painleve.hpp>
#include <pjl/struct_mat.hpp>
#include <pjl/fredholm.hpp>
