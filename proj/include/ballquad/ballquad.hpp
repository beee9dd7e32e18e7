#pragma once

#include "ballquad/mag.hpp"
#include "ballquad/real_ball.hpp"
#include "ballquad/complex_box.hpp"
#include "ballquad/gauss_legendre.hpp"
#include "ballquad/integrator.hpp"
#include "ballquad/piecewise.hpp"
#include "ballquad/bench.hpp"
