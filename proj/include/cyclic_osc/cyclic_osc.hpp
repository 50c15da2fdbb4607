#pragma once

#include "cyclic_osc/algebra.hpp"
#include "cyclic_osc/fock.hpp"
#include "cyclic_osc/io.hpp"
#include "cyclic_osc/relations.hpp"
#include "cyclic_osc/shape_invariance.hpp"
#include "cyclic_osc/spectrum.hpp"
#include "cyclic_osc/variants.hpp"
