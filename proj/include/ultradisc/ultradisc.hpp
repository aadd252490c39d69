#pragma once

#include "ultradisc/rational.hpp"
#include "ultradisc/laurent.hpp"
#include "ultradisc/series_io.hpp"
#include "ultradisc/maps.hpp"
#include "ultradisc/newton.hpp"
#include "ultradisc/disc.hpp"
#include "ultradisc/schroder.hpp"
