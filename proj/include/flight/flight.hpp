#ifndef FLIGHT_FLIGHT_HPP
#define FLIGHT_FLIGHT_HPP

#include <flight/bounds.hpp>
#include <flight/checks.hpp>
#include <flight/distribution.hpp>
#include <flight/error.hpp>
#include <flight/instance.hpp>
#include <flight/peak.hpp>
#include <flight/profile.hpp>
#include <flight/quadrature.hpp>
#include <flight/random.hpp>
#include <flight/stochastic.hpp>
#include <flight/utility.hpp>
#include <flight/welfare.hpp>

#endif
