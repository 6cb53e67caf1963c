#pragma once

// Umbrella header for the whole library.

#include "dcm/rational.hpp"
#include "dcm/cyclotomic.hpp"
#include "dcm/group.hpp"
#include "dcm/classfn.hpp"
#include "dcm/cmtype.hpp"
#include "dcm/ledger.hpp"
#include "dcm/render.hpp"
#include "dcm/json_io.hpp"
#include "dcm/verify.hpp"
