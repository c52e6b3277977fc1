#pragma once

#include "covosc/kinematics.hpp"
#include "covosc/numerics.hpp"
#include "covosc/wavefunction.hpp"
#include "covosc/density.hpp"
#include "covosc/parton.hpp"
#include "covosc/duality.hpp"
