#pragma once

#include "walkdist/corpus.hpp"
#include "walkdist/distance.hpp"
#include "walkdist/error.hpp"
#include "walkdist/ewalk_metrics.hpp"
#include "walkdist/graph.hpp"
#include "walkdist/limit_metrics.hpp"
#include "walkdist/linalg.hpp"
#include "walkdist/matrix_io.hpp"
#include "walkdist/oracle.hpp"
#include "walkdist/p4_table.hpp"
#include "walkdist/spectral.hpp"
#include "walkdist/transforms.hpp"
#include "walkdist/walk_metrics.hpp"
