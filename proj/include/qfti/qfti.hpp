#pragma once

// Umbrella header.

#include "qfti/circuit.hpp"
#include "qfti/gates.hpp"
#include "qfti/linalg.hpp"
#include "qfti/ms_gate.hpp"
#include "qfti/qft.hpp"
#include "qfti/schedule.hpp"
#include "qfti/serialize.hpp"
#include "qfti/tailoring.hpp"
#include "qfti/three_qubit.hpp"
#include "qfti/trap.hpp"
