#pragma once

#include "knit/bicrossed.hpp"
#include "knit/classify.hpp"
#include "knit/cyclic.hpp"
#include "knit/deformation.hpp"
#include "knit/error.hpp"
#include "knit/group.hpp"
#include "knit/matched_pair.hpp"
#include "knit/morphism.hpp"
#include "knit/serialize.hpp"
