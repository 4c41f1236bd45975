#pragma once

#include "pstlab/error.hpp"
#include "pstlab/rational.hpp"
#include "pstlab/spectra.hpp"
#include "pstlab/poly.hpp"
#include "pstlab/matrix.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/dynamics.hpp"
#include "pstlab/synthesis.hpp"
