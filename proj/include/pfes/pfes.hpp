#pragma once

// Umbrella header for the whole library.

#include "pfes/error.hpp"
#include "pfes/arith.hpp"
#include "pfes/rational.hpp"
#include "pfes/matrix.hpp"
#include "pfes/similitude.hpp"
#include "pfes/groups.hpp"
#include "pfes/quad_index.hpp"
#include "pfes/fourier_table.hpp"
#include "pfes/fourier.hpp"
#include "pfes/hecke.hpp"
#include "pfes/character.hpp"
#include "pfes/halfint.hpp"
#include "pfes/random_tables.hpp"
#include "pfes/table_io.hpp"
#include "pfes/pipeline.hpp"
