#pragma once

#include "polarize/io.hpp"
#include "polarize/proof_check.hpp"
#include "polarize/sign_search.hpp"
#include "polarize/slice_min.hpp"
#include "polarize/sphere_opt.hpp"
#include "polarize/vectors.hpp"
#include "polarize/verify.hpp"
