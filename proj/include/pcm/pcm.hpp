#pragma once

#include "pcm/cone.hpp"
#include "pcm/examples.hpp"
#include "pcm/expr.hpp"
#include "pcm/geometry.hpp"
#include "pcm/identities.hpp"
#include "pcm/runner.hpp"
#include "pcm/specfile.hpp"
#include "pcm/structure.hpp"
#include "pcm/tensor.hpp"
