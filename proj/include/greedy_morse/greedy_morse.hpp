#pragma once

#include "cubical.hpp"
#include "errors.hpp"
#include "face_poset.hpp"
#include "gradient.hpp"
#include "greedy_matching.hpp"
#include "hasse.hpp"
#include "io.hpp"
#include "ordered_value.hpp"
#include "polyhedral.hpp"
#include "random.hpp"
#include "simplicial_complex.hpp"
#include "smoothness.hpp"
#include "verify.hpp"
