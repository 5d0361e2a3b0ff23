#pragma once

#include "corrbits/bitstring.hpp"
#include "corrbits/correlation.hpp"
#include "corrbits/error.hpp"
#include "corrbits/geometry.hpp"
#include "corrbits/huffman.hpp"
#include "corrbits/inequality.hpp"
#include "corrbits/information.hpp"
#include "corrbits/report.hpp"
#include "corrbits/rng.hpp"
#include "corrbits/version.hpp"
