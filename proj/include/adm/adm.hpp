#pragma once

// Umbrella header: exact ε-invariants and admissible Green's functions on
// metrized graphs, the numerical oracle, the moduli cone calculus, fibration
// bounds and the document format.

#include "adm/document.hpp"
#include "adm/fibration.hpp"
#include "adm/green_exact.hpp"
#include "adm/green_oracle.hpp"
#include "adm/moduli_cone.hpp"
